#include "twistzeta/cohml.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "twistzeta/intmat.hpp"

namespace tz {

// ============================================================ degree two

std::optional<std::array<int, 3>> cocycle_violation(const Cocycle2& a) {
  int q = a.Q->order();
  const auto& G = *a.Q;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      if (a.val[x][y].is_zero()) return std::array<int, 3>{x, y, -1};
      for (int z = 0; z < q; ++z)
        if (a.val[x][y] * a.val[G.mul(x, y)][z] != a.val[y][z] * a.val[x][G.mul(y, z)])
          return std::array<int, 3>{x, y, z};
    }
  return std::nullopt;
}

bool check_cocycle(const Cocycle2& a) { return !cocycle_violation(a).has_value(); }

Cocycle2 coboundary2(const GroupPtr& Q, const std::vector<Cyclotomic>& beta) {
  int q = Q->order();
  Cocycle2 out{Q, std::vector<std::vector<Cyclotomic>>(q, std::vector<Cyclotomic>(q))};
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) out.val[x][y] = beta[x] * beta[y] / beta[Q->mul(x, y)];
  return out;
}

Cocycle2 operator*(const Cocycle2& a, const Cocycle2& b) {
  if (a.Q != b.Q) throw std::invalid_argument("cocycles on different groups");
  Cocycle2 out = a;
  for (size_t x = 0; x < a.val.size(); ++x)
    for (size_t y = 0; y < a.val.size(); ++y) out.val[x][y] *= b.val[x][y];
  return out;
}

Cocycle2 inverse(const Cocycle2& a) {
  Cocycle2 out = a;
  for (auto& row : out.val)
    for (auto& v : row) v = v.inverse();
  return out;
}

namespace {

struct Overflow {};

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
mpz_class checked_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
mpz_class checked_add(const mpz_class& a, const mpz_class& b) { return a + b; }

long ext_gcd(long a, long b, long& s, long& t) {
  mpz_class g, ms, mt;
  mpz_gcdext(g.get_mpz_t(), ms.get_mpz_t(), mt.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
  s = ms.get_si();
  t = mt.get_si();
  return g.get_si();
}
mpz_class ext_gcd(const mpz_class& a, const mpz_class& b, mpz_class& s, mpz_class& t) {
  mpz_class g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Echelon basis over Z of a lattice, built one vector at a time. Rows are sparse;
// the long instantiation throws Overflow when an entry leaves the machine range.
template <class T>
class LatticeEchelon {
 public:
  using Sparse = std::vector<std::pair<size_t, T>>;

  explicit LatticeEchelon(size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

  void add(std::vector<T>& v) {
    for (size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      int r = pivot_row_[c];
      if (r < 0) {
        if (v[c] < 0)
          for (auto& e : v) e = -e;
        pivot_row_[c] = static_cast<int>(rows_.size());
        rows_.push_back(to_sparse(v));
        return;
      }
      Sparse& b = rows_[r];
      T bc = b.front().second;
      if (v[c] % bc == 0) {
        T q = v[c] / bc;
        for (const auto& [k, e] : b) v[k] = checked_add(v[k], -checked_mul(q, e));
        continue;
      }
      T s, t;
      T g = ext_gcd(bc, v[c], s, t);
      T bq = bc / g, vq = v[c] / g;
      std::vector<T> bd(dim_, 0);
      for (const auto& [k, e] : b) bd[k] = e;
      for (size_t k = c; k < dim_; ++k) {
        if (bd[k] == 0 && v[k] == 0) continue;
        T nb = checked_add(checked_mul(s, bd[k]), checked_mul(t, v[k]));
        T nv = checked_add(checked_mul(bq, v[k]), -checked_mul(vq, bd[k]));
        bd[k] = nb;
        v[k] = nv;
      }
      b = to_sparse(bd);
    }
    std::fill(v.begin(), v.end(), 0);
  }

  size_t rank() const { return rows_.size(); }
  const Sparse& row(size_t i) const { return rows_[i]; }
  int pivot_row(size_t c) const { return pivot_row_[c]; }

 private:
  Sparse to_sparse(std::vector<T>& v) const {
    Sparse out;
    for (size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) {
        out.emplace_back(k, v[k]);
        v[k] = 0;
      }
    return out;
  }

  size_t dim_;
  std::vector<int> pivot_row_;
  std::vector<Sparse> rows_;
};

// Echelon rows (as mpz) and pivot lookup for the image of the third bar differential.
struct BoundaryLattice {
  std::vector<std::vector<std::pair<size_t, mpz_class>>> rows;
  std::vector<int> pivot_row;

  // representative of v modulo the lattice with pivot coordinates in (-|p|/2, |p|/2]
  void reduce(std::vector<mpz_class>& v) const {
    for (size_t c = 0; c < v.size(); ++c) {
      int r = pivot_row[c];
      if (r < 0 || v[c] == 0) continue;
      const auto& b = rows[r];
      const mpz_class& bc = b.front().second;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), bc.get_mpz_t());
      mpz_class rem = v[c] - q * bc;
      if (2 * rem > bc) q += 1;
      if (q == 0) continue;
      for (const auto& [k, e] : b) v[k] -= q * e;
    }
  }
};

template <class T>
BoundaryLattice boundary_lattice(const GroupPtr& Q) {
  int q = Q->order();
  size_t dim = static_cast<size_t>(q) * q;
  auto idx = [q](int x, int y) { return static_cast<size_t>(x) * q + y; };
  LatticeEchelon<T> lat(dim);
  std::vector<T> col(dim, 0);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) {
        col[idx(y, z)] += 1;
        col[idx(Q->mul(x, y), z)] -= 1;
        col[idx(x, Q->mul(y, z))] += 1;
        col[idx(x, y)] -= 1;
        lat.add(col);  // leaves col zeroed
      }
  BoundaryLattice out;
  out.pivot_row.resize(dim);
  for (size_t c = 0; c < dim; ++c) out.pivot_row[c] = lat.pivot_row(c);
  for (size_t j = 0; j < lat.rank(); ++j) {
    std::vector<std::pair<size_t, mpz_class>> r;
    for (const auto& [k, e] : lat.row(j)) r.emplace_back(k, mpz_class(e));
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::vector<int> table_key(const GroupPtr& Q) {
  int q = Q->order();
  std::vector<int> key(static_cast<size_t>(q) * q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) key[static_cast<size_t>(x) * q + y] = Q->mul(x, y);
  return key;
}

std::shared_ptr<const H2Basis> compute_h2_basis(const GroupPtr& Q) {
  int q = Q->order();
  size_t dim = static_cast<size_t>(q) * q;
  BoundaryLattice lat;
  try {
    lat = boundary_lattice<long>(Q);
  } catch (const Overflow&) {
    lat = boundary_lattice<mpz_class>(Q);
  }
  // Each relation with a unit pivot expresses one coordinate through later ones;
  // eliminate those first so the Smith form only sees the non-unit part.
  std::vector<std::map<size_t, mpz_class>> rel(lat.rows.size());
  for (size_t j = 0; j < lat.rows.size(); ++j)
    for (const auto& [i, e] : lat.rows[j]) rel[j].emplace(i, e);
  std::vector<char> gone_coord(dim, 0), gone_rel(rel.size(), 0);
  std::vector<size_t> order(rel.size());
  for (size_t j = 0; j < rel.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return rel[x].begin()->first > rel[y].begin()->first; });
  for (size_t j : order) {
    auto [c, pc] = *rel[j].begin();
    if (abs(pc) != 1) continue;
    for (size_t i = 0; i < rel.size(); ++i) {
      if (i == j || gone_rel[i]) continue;
      auto it = rel[i].find(c);
      if (it == rel[i].end()) continue;
      mpz_class f = it->second * pc;  // pc = +-1, so this divides exactly
      for (const auto& [k, e] : rel[j]) {
        auto& slot = rel[i][k];
        slot -= f * e;
        if (slot == 0) rel[i].erase(k);
      }
    }
    gone_rel[j] = 1;
    gone_coord[c] = 1;
  }
  std::vector<size_t> coords;
  for (size_t k = 0; k < dim; ++k)
    if (!gone_coord[k]) coords.push_back(k);
  std::vector<size_t> live;
  for (size_t j = 0; j < rel.size(); ++j)
    if (!gone_rel[j]) live.push_back(j);
  std::vector<int> pos(dim, -1);
  for (size_t k = 0; k < coords.size(); ++k) pos[coords[k]] = static_cast<int>(k);
  BigMatrix A(coords.size(), std::vector<mpz_class>(live.size(), 0));
  for (size_t j = 0; j < live.size(); ++j)
    for (const auto& [k, e] : rel[live[j]]) {
      if (pos[k] < 0) throw std::logic_error("eliminated coordinate survived");
      A[pos[k]][j] = e;
    }
  auto snf = smith_normal_form(std::move(A));
  auto basis = std::make_shared<H2Basis>();
  for (size_t i = 0; i < snf.diag.size(); ++i) {
    if (snf.diag[i] <= 1) continue;
    std::vector<mpz_class> v(dim, 0);
    for (size_t r = 0; r < coords.size(); ++r) v[coords[r]] = snf.p_inverse[r][i];
    // same homology class, smaller coefficients
    lat.reduce(v);
    Chain2 ch;
    for (size_t r = 0; r < dim; ++r)
      if (v[r] != 0) ch.push_back({static_cast<int>(r / q), static_cast<int>(r % q), v[r]});
    basis->gens.push_back(std::move(ch));
    basis->orders.push_back(snf.diag[i].get_si());
  }
  return basis;
}

}  // namespace

std::shared_ptr<const H2Basis> h2_basis(const GroupPtr& Q) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::shared_ptr<const H2Basis>> cache;
  auto key = table_key(Q);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto b = compute_h2_basis(Q);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), b).first->second;
}

H2Certificate h2_certificate(const Cocycle2& a) {
  H2Certificate cert;
  cert.Q = a.Q;
  cert.basis = h2_basis(a.Q);
  for (const auto& ch : cert.basis->gens) {
    Cyclotomic e(1L);
    for (const auto& t : ch) e *= a.val[t.x][t.y].pow(t.coef);
    cert.evals.push_back(e);
  }
  return cert;
}

bool h2_equal(const H2Certificate& a, const H2Certificate& b) {
  if (a.basis != b.basis || a.evals.size() != b.evals.size())
    throw std::invalid_argument("certificates over different base groups");
  return a.evals == b.evals;
}

bool h2_trivial(const H2Certificate& a) {
  for (const auto& e : a.evals)
    if (!e.is_one()) return false;
  return true;
}

std::optional<std::vector<Cyclotomic>> h2_coboundary_solve(const Cocycle2& a, const Cocycle2& b) {
  int q = a.Q->order();
  std::vector<std::vector<RootOfUnity>> r(q, std::vector<RootOfUnity>(q));
  long M = 1;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      auto w = (b.val[x][y] / a.val[x][y]).as_root_of_unity();
      if (!w) return std::nullopt;
      r[x][y] = *w;
      M = lcm_l(M, w->order());
    }
  long Mp = M * a.Q->exponent();
  ModMatrix A;
  std::vector<long> rhs;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      std::vector<long> row(q, 0);
      row[x] += 1;
      row[y] += 1;
      row[a.Q->mul(x, y)] -= 1;
      A.push_back(std::move(row));
      rhs.push_back(r[x][y].exponent_over(Mp));
    }
  auto sol = solve_mod(A, rhs, Mp);
  if (!sol) return std::nullopt;
  std::vector<Cyclotomic> beta;
  for (long e : *sol) beta.emplace_back(RootOfUnity(Mp, e));
  return beta;
}

// ============================================================ degree one

std::shared_ptr<const H1Module> make_h1_module(const Subgroup& base, const Subgroup& K, const Subgroup& N,
                                               const GammaGroup& gamma) {
  if (!normalizes(base, K)) throw std::invalid_argument("acting group does not normalise K");
  if (gamma.K != K) throw std::invalid_argument("Gamma lives on a different subgroup");
  auto m = std::make_shared<H1Module>();
  m->base = base;
  m->K = K;
  m->N = N;
  m->base_q = quotient_group(base, N);
  m->points = quotient_group(K, N);
  m->gamma = gamma;
  const auto& G = *base.G;
  int nb = m->base_q.Q->order(), np = m->points.Q->order();
  m->act.assign(nb, std::vector<int>(np));
  m->mul.assign(nb, std::vector<int>(nb));
  for (int g = 0; g < nb; ++g) {
    int gr = m->base_q.rep[g], gi = G.inv(gr);
    for (int x = 0; x < np; ++x) m->act[g][x] = m->points.proj[G.mul(G.mul(gi, m->points.rep[x]), gr)];
    for (int h = 0; h < nb; ++h) m->mul[g][h] = m->base_q.proj[G.mul(gr, m->base_q.rep[h])];
  }
  return m;
}

namespace {

int n_base(const H1Module& m) { return static_cast<int>(m.act.size()); }
int n_points(const H1Module& m) { return m.points.Q->order(); }

// Values of Lin(K/N) at the points, plus discrete logs of the Gamma generators.
struct GammaTable {
  long E = 1;                                   // exponent of Lin(K/N)
  std::vector<std::vector<RootOfUnity>> amb;    // ambient id -> point -> value
  std::map<std::vector<RootOfUnity>, int> ids;  // values -> ambient id
  std::vector<std::vector<long>> gen_log;       // gen -> point -> log over E
};

GammaTable gamma_table(const H1Module& m) {
  GammaTable t;
  int np = n_points(m);
  for (size_t a = 0; a < m.gamma.ambient.size(); ++a) {
    std::vector<RootOfUnity> v(np);
    for (int x = 0; x < np; ++x) {
      v[x] = m.gamma.ambient[a].val[m.points.rep[x]];
      t.E = lcm_l(t.E, v[x].order());
    }
    t.ids.emplace(v, static_cast<int>(a));
    t.amb.push_back(std::move(v));
  }
  for (int g : m.gamma.gens) {
    std::vector<long> l(np);
    for (int x = 0; x < np; ++x) l[x] = t.amb[g][x].exponent_over(t.E);
    t.gen_log.push_back(std::move(l));
  }
  return t;
}

int gamma_member(const H1Module& m, const GammaTable& t, const std::vector<RootOfUnity>& v) {
  auto it = t.ids.find(v);
  if (it == t.ids.end() || !m.gamma.contains_id(it->second)) return -1;
  return it->second;
}

// Gamma member with the given generator exponents
int gamma_from_exps(const H1Module& m, const GammaTable& t, const std::vector<long>& e) {
  int np = n_points(m);
  std::vector<RootOfUnity> v(np);
  for (size_t i = 0; i < e.size(); ++i)
    for (int x = 0; x < np; ++x) v[x] = v[x] * t.amb[m.gamma.gens[i]][x].pow(e[i]);
  int id = gamma_member(m, t, v);
  if (id < 0) throw std::logic_error("generator word left Gamma");
  return id;
}

std::optional<std::vector<std::vector<RootOfUnity>>> as_roots(const Cocycle1& c) {
  std::vector<std::vector<RootOfUnity>> r(c.val.size());
  for (size_t g = 0; g < c.val.size(); ++g)
    for (const auto& v : c.val[g]) {
      auto w = v.as_root_of_unity();
      if (!w) return std::nullopt;
      r[g].push_back(*w);
    }
  return r;
}

// defect(g,h) = val(g) ^g val(h) / val(gh)
std::vector<Cyclotomic> defect(const Cocycle1& c, int g, int h) {
  const auto& m = *c.mod;
  int np = n_points(m);
  std::vector<Cyclotomic> d(np);
  int gh = m.mul[g][h];
  for (int x = 0; x < np; ++x) d[x] = c.val[g][x] * c.val[h][m.act[g][x]] / c.val[gh][x];
  return d;
}

}  // namespace

bool check_cocycle(const Cocycle1& c) {
  const auto& m = *c.mod;
  auto t = gamma_table(m);
  int nb = n_base(m);
  for (int g = 0; g < nb; ++g)
    for (const auto& v : c.val[g])
      if (v.is_zero()) return false;
  for (int g = 0; g < nb; ++g)
    for (int h = 0; h < nb; ++h) {
      auto d = defect(c, g, h);
      std::vector<RootOfUnity> w;
      for (const auto& v : d) {
        auto r = v.as_root_of_unity();
        if (!r) return false;
        w.push_back(*r);
      }
      if (gamma_member(m, t, w) < 0) return false;
    }
  return true;
}

Cocycle1 coboundary1(const std::shared_ptr<const H1Module>& mod, const std::vector<Cyclotomic>& omega) {
  int nb = n_base(*mod), np = n_points(*mod);
  Cocycle1 c{mod, std::vector<std::vector<Cyclotomic>>(nb, std::vector<Cyclotomic>(np))};
  for (int g = 0; g < nb; ++g)
    for (int x = 0; x < np; ++x) c.val[g][x] = omega[mod->act[g][x]] / omega[x];
  return c;
}

Cocycle1 operator*(const Cocycle1& a, const Cocycle1& b) {
  if (a.mod != b.mod) throw std::invalid_argument("cocycles over different modules");
  Cocycle1 out = a;
  for (size_t g = 0; g < a.val.size(); ++g)
    for (size_t x = 0; x < a.val[g].size(); ++x) out.val[g][x] *= b.val[g][x];
  return out;
}

Cocycle1 inverse(const Cocycle1& a) {
  Cocycle1 out = a;
  for (auto& row : out.val)
    for (auto& v : row) v = v.inverse();
  return out;
}

Cocycle1 restrict_cocycle(const Cocycle1& c, const Subgroup& smaller_base) {
  if (!is_subset(smaller_base, c.mod->base)) throw std::invalid_argument("restriction to a non-subgroup");
  auto mod = make_h1_module(smaller_base, c.mod->K, c.mod->N, c.mod->gamma);
  Cocycle1 out{mod, {}};
  for (int g = 0; g < n_base(*mod); ++g) out.val.push_back(c.val[c.mod->base_q.proj[mod->base_q.rep[g]]]);
  return out;
}

Cocycle1 cocycle_qpart(const Cocycle1& c, long q) {
  auto r = as_roots(c);
  if (!r) throw std::invalid_argument("q-part of a non-torsion cocycle");
  Cocycle1 out = c;
  for (size_t g = 0; g < out.val.size(); ++g)
    for (size_t x = 0; x < out.val[g].size(); ++x) out.val[g][x] = Cyclotomic(rou_qpart((*r)[g][x], q));
  return out;
}

bool is_torsion(const Cocycle1& c) { return as_roots(c).has_value(); }

long value_modulus(const Cocycle1& c) {
  auto r = as_roots(c);
  if (!r) throw std::invalid_argument("non-torsion cocycle");
  long M = 1;
  for (const auto& row : *r)
    for (const auto& w : row) M = lcm_l(M, w.order());
  return M;
}

bool check_witness(const Cocycle1& c, const H1Witness& w) {
  const auto& m = *c.mod;
  int nb = n_base(m), np = n_points(m);
  if (static_cast<int>(w.omega.size()) != np || static_cast<int>(w.nu.size()) != nb) return false;
  for (int g = 0; g < nb; ++g) {
    if (!m.gamma.contains_id(w.nu[g])) return false;
    const auto& nu = m.gamma.ambient[w.nu[g]];
    for (int x = 0; x < np; ++x) {
      Cyclotomic rhs = w.omega[m.act[g][x]] / w.omega[x] * Cyclotomic(nu.val[m.points.rep[x]]);
      if (rhs != c.val[g][x]) return false;
    }
  }
  return true;
}

std::optional<H1Witness> h1_exact_solve(const Cocycle1& c) {
  const auto& m = *c.mod;
  auto t = gamma_table(m);
  int nb = n_base(m), np = n_points(m);
  int r = static_cast<int>(m.gamma.gens.size());
  long E = t.E;
  // Gamma-valued correction nu with nu(g) ^g nu(h) nu(gh)^-1 = defect(g,h)
  ModMatrix A;
  std::vector<long> rhs;
  for (int g = 0; g < nb; ++g)
    for (int h = 0; h < nb; ++h) {
      auto d = defect(c, g, h);
      int gh = m.mul[g][h];
      for (int x = 0; x < np; ++x) {
        auto w = d[x].as_root_of_unity();
        if (!w || E % w->order() != 0) throw std::invalid_argument("not a cocycle modulo Gamma");
        std::vector<long> row(static_cast<size_t>(nb) * r, 0);
        for (int i = 0; i < r; ++i) {
          row[g * r + i] += t.gen_log[i][x];
          row[h * r + i] += t.gen_log[i][m.act[g][x]];
          row[gh * r + i] -= t.gen_log[i][x];
        }
        A.push_back(std::move(row));
        rhs.push_back(w->exponent_over(E));
      }
    }
  // point stabilisers: (rho nu^-1)(s)(x0) = 1
  std::vector<int> orbit_rep(np, -1);
  for (int x0 = 0; x0 < np; ++x0) {
    if (orbit_rep[x0] >= 0) continue;
    for (int g = 0; g < nb; ++g) orbit_rep[m.act[g][x0]] = x0;
    for (int s = 0; s < nb; ++s) {
      if (m.act[s][x0] != x0) continue;
      auto w = c.val[s][x0].as_root_of_unity();
      if (!w || E % w->order() != 0) return std::nullopt;
      std::vector<long> row(static_cast<size_t>(nb) * r, 0);
      for (int i = 0; i < r; ++i) row[s * r + i] = t.gen_log[i][x0];
      A.push_back(std::move(row));
      rhs.push_back(w->exponent_over(E));
    }
  }
  std::vector<long> sol(static_cast<size_t>(nb) * r, 0);
  if (r == 0) {
    for (long v : rhs)
      if (mod_pos(v, E) != 0) return std::nullopt;
  } else {
    auto s = solve_mod(A, rhs, E);
    if (!s) return std::nullopt;
    sol = *s;
  }
  H1Witness wit;
  for (int g = 0; g < nb; ++g)
    wit.nu.push_back(gamma_from_exps(m, t, std::vector<long>(sol.begin() + g * r, sol.begin() + (g + 1) * r)));
  // f = rho nu^-1 is now an honest cocycle, trivial on stabilisers; integrate it
  auto f = [&](int g, int x) {
    return c.val[g][x] / Cyclotomic(m.gamma.ambient[wit.nu[g]].val[m.points.rep[x]]);
  };
  wit.omega.assign(np, Cyclotomic());
  std::vector<char> done(np, 0);
  for (int x0 = 0; x0 < np; ++x0) {
    if (orbit_rep[x0] != x0) continue;
    const auto& G = *m.base.G;
    for (int h = 0; h < nb; ++h) {
      int hr = m.base_q.rep[h];
      int x = m.points.proj[G.mul(G.mul(hr, m.points.rep[x0]), G.inv(hr))];
      if (done[x]) continue;
      done[x] = 1;
      wit.omega[x] = f(h, x).inverse();
    }
  }
  if (!check_witness(c, wit)) throw std::logic_error("exact H1 witness failed to reproduce the cocycle");
  return wit;
}

namespace {

long headroom_modulus(const H1Module& m, long M, int extra) {
  long size = static_cast<long>(n_base(m)) * n_points(m);
  long f = 1;
  for (long q : prime_factors(M)) {
    f *= prime_part(size, q);
    for (int i = 0; i < extra; ++i) f *= q;
  }
  return M * f;
}

}  // namespace

LatticeVerdict h1_lattice_solve(const Cocycle1& c, int extra_headroom) {
  auto roots = as_roots(c);
  if (!roots) return LatticeVerdict{};
  long M = gamma_table(*c.mod).E;
  for (const auto& row : *roots)
    for (const auto& w : row) M = lcm_l(M, w.order());
  return h1_lattice_solve_at(c, headroom_modulus(*c.mod, M, extra_headroom));
}

LatticeVerdict h1_lattice_solve_at(const Cocycle1& c, long Mp) {
  LatticeVerdict out;
  auto roots = as_roots(c);
  if (!roots) return out;
  const auto& m = *c.mod;
  auto t = gamma_table(m);
  int nb = n_base(m), np = n_points(m);
  int r = static_cast<int>(m.gamma.gens.size());
  if (Mp % t.E != 0) throw std::invalid_argument("solver modulus must be a multiple of exp(Lin(K/N))");
  for (const auto& row : *roots)
    for (const auto& w : row)
      if (Mp % w.order() != 0) throw std::invalid_argument("solver modulus must be a multiple of the value modulus");
  out.applicable = true;
  out.modulus = Mp;
  long scale = Mp / t.E;
  // unknowns: omega exponents per point, then Gamma exponents per (g, gen)
  size_t cols = static_cast<size_t>(np) + static_cast<size_t>(nb) * r;
  ModMatrix A;
  std::vector<long> rhs;
  for (int g = 0; g < nb; ++g)
    for (int x = 0; x < np; ++x) {
      std::vector<long> row(cols, 0);
      row[m.act[g][x]] += 1;
      row[x] -= 1;
      for (int i = 0; i < r; ++i) row[np + g * r + i] = t.gen_log[i][x] * scale;
      A.push_back(std::move(row));
      rhs.push_back((*roots)[g][x].exponent_over(Mp));
    }
  auto s = solve_mod(A, rhs, Mp);
  if (!s) return out;
  H1Witness w;
  for (int x = 0; x < np; ++x) w.omega.emplace_back(RootOfUnity(Mp, (*s)[x]));
  for (int g = 0; g < nb; ++g)
    w.nu.push_back(gamma_from_exps(m, t, std::vector<long>(s->begin() + np + g * r, s->begin() + np + (g + 1) * r)));
  if (!check_witness(c, w)) throw std::logic_error("lattice H1 witness failed to reproduce the cocycle");
  out.witness = std::move(w);
  return out;
}

std::optional<H1Witness> h1_exhaustive_solve(const Cocycle1& c, long Mprime) {
  auto roots = as_roots(c);
  if (!roots) throw std::invalid_argument("exhaustive search needs a torsion cocycle");
  const auto& m = *c.mod;
  auto t = gamma_table(m);
  int nb = n_base(m), np = n_points(m);
  std::vector<long> e(np, 0);
  for (;;) {
    H1Witness w;
    bool ok = true;
    for (int g = 0; g < nb && ok; ++g) {
      std::vector<RootOfUnity> need(np);
      for (int x = 0; x < np; ++x)
        need[x] = (*roots)[g][x] * RootOfUnity(Mprime, e[x]) * RootOfUnity(Mprime, -e[m.act[g][x]]);
      int id = gamma_member(m, t, need);
      if (id < 0) ok = false;
      w.nu.push_back(id);
    }
    if (ok) {
      for (int x = 0; x < np; ++x) w.omega.emplace_back(RootOfUnity(Mprime, e[x]));
      return w;
    }
    int k = 0;
    while (k < np && ++e[k] == Mprime) e[k++] = 0;
    if (k == np) return std::nullopt;
  }
}

bool h1_equal(const Cocycle1& a, const Cocycle1& b) { return h1_exact_solve(a * inverse(b)).has_value(); }

}  // namespace tz
