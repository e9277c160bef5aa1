#include "twistzeta/inv.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>

namespace tz {

// ============================================================ matrices

CMatrix CMatrix::identity(int n) {
  CMatrix m{n, std::vector<Cyclotomic>(static_cast<size_t>(n) * n)};
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyclotomic(1L);
  return m;
}

Cyclotomic CMatrix::trace() const {
  Cyclotomic t;
  for (int i = 0; i < n; ++i) t += at(i, i);
  return t;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  CMatrix r{n, std::vector<Cyclotomic>(a.size())};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const auto& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!o.at(k, j).is_zero()) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

CMatrix CMatrix::scaled(const Cyclotomic& s) const {
  CMatrix r = *this;
  for (auto& v : r.a)
    if (!v.is_zero()) v *= s;
  return r;
}

namespace {

// Nullspace basis of rows (each of length cols) over the cyclotomics.
std::vector<std::vector<Cyclotomic>> nullspace(std::vector<std::vector<Cyclotomic>> rows, int cols) {
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Cyclotomic inv = rows[r][c].inverse();
    for (auto& v : rows[r])
      if (!v.is_zero()) v *= inv;
    for (size_t s = 0; s < rows.size(); ++s) {
      if (s == r || rows[s][c].is_zero()) continue;
      Cyclotomic f = rows[s][c];
      for (int k = c; k < cols; ++k)
        if (!rows[r][k].is_zero()) rows[s][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Cyclotomic>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Cyclotomic> v(cols);
    v[f] = Cyclotomic(1L);
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// left transversal of A in B, scanning B in order
std::vector<int> left_transversal(const Subgroup& A, const Subgroup& B) {
  const auto& G = *B.G;
  std::vector<char> seen(G.order(), 0);
  std::vector<int> out;
  for (int x : B.members) {
    if (seen[x]) continue;
    out.push_back(x);
    for (int a : A.members) seen[G.mul(x, a)] = 1;
  }
  return out;
}

Character restriction_to_N(const ProjectiveCharacter& th) {
  Character c;
  c.dom = th.N;
  c.val.assign(th.val.size(), Cyclotomic());
  for (int n : th.N.members) c.val[n] = th.val[n];
  return c;
}

Character as_character(const ProjectiveCharacter& th) { return Character{th.K, th.val}; }

}  // namespace

// ============================================================ representations

ProjectiveRep monomial_model(const MonomialPair& pair, const Subgroup& N) {
  const auto& G = *N.G;
  auto s = left_transversal(pair.NH, N);
  int d = static_cast<int>(s.size());
  ProjectiveRep P;
  P.dom = N;
  P.dim = d;
  P.mat.assign(G.order(), CMatrix{});
  for (int n : N.members) {
    CMatrix m{d, std::vector<Cyclotomic>(static_cast<size_t>(d) * d)};
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        int x = G.mul(G.mul(G.inv(s[a]), n), s[b]);
        if (pair.NH.contains(x)) m.at(a, b) = Cyclotomic(pair.chi.val[x]);
      }
    P.mat[n] = std::move(m);
  }
  return P;
}

namespace {

// alpha(x,y) with P(x)P(y) = alpha P(xy); throws if the product is not a scalar multiple
Cyclotomic scalar_ratio(const CMatrix& prod, const CMatrix& target) {
  for (size_t i = 0; i < target.a.size(); ++i)
    if (!target.a[i].is_zero()) {
      Cyclotomic s = prod.a[i] / target.a[i];
      if (prod != target.scaled(s)) throw std::logic_error("projective relation fails");
      return s;
    }
  throw std::logic_error("zero matrix in a projective representation");
}

}  // namespace

FactorSet descend_factor_set(const ProjectiveRep& P, const Subgroup& N) {
  const auto& G = *P.dom.G;
  FactorSet fs;
  fs.q = quotient_group(P.dom, N);
  int q = fs.q.Q->order();
  fs.c.Q = fs.q.Q;
  fs.c.val.assign(q, std::vector<Cyclotomic>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      int x = fs.q.rep[a], y = fs.q.rep[b];
      fs.c.val[a][b] = scalar_ratio(P.mat[x] * P.mat[y], P.mat[G.mul(x, y)]);
    }
  for (int x : P.dom.members)
    for (int y : P.dom.members)
      if (P.mat[x] * P.mat[y] != P.mat[G.mul(x, y)].scaled(fs.at(x, y)))
        throw std::logic_error("factor set is not constant on N-cosets");
  return fs;
}

ProjectiveRep proj_induce(const ProjectiveRep& P, const Subgroup& to, const FactorSet* alpha) {
  const auto& G = *to.G;
  const Subgroup& A = P.dom;
  if (!is_subset(A, to)) throw std::invalid_argument("induction target does not contain the domain");
  auto al = [&](int x, int y) { return alpha ? alpha->at(x, y) : Cyclotomic(1L); };
  for (int x : A.members)
    for (int y : A.members)
      if (P.mat[x] * P.mat[y] != P.mat[G.mul(x, y)].scaled(al(x, y)))
        throw std::invalid_argument("factor set does not restrict to the factor set of the representation");
  auto r = left_transversal(A, to);
  int m = static_cast<int>(r.size()), d = P.dim, D = m * d;
  std::vector<int> coset(G.order(), -1);
  for (int i = 0; i < m; ++i)
    for (int a : A.members) coset[G.mul(r[i], a)] = i;
  ProjectiveRep out;
  out.dom = to;
  out.dim = D;
  out.mat.assign(G.order(), CMatrix{});
  for (int g : to.members) {
    CMatrix M{D, std::vector<Cyclotomic>(static_cast<size_t>(D) * D)};
    for (int j = 0; j < m; ++j) {
      int gr = G.mul(g, r[j]);
      int i = coset[gr];
      int k = G.mul(G.inv(r[i]), gr);
      Cyclotomic c = al(g, r[j]) / al(r[i], k);
      const CMatrix& B = P.mat[k];
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
          if (!B.at(s, t).is_zero()) M.at(i * d + s, j * d + t) = c * B.at(s, t);
    }
    out.mat[g] = std::move(M);
  }
  return out;
}

ProjectiveCharacter make_projective_character(std::shared_ptr<const ProjectiveRep> rep, const Subgroup& N,
                                              const Character& theta, ExtRoute route) {
  ProjectiveCharacter th;
  th.K = rep->dom;
  th.N = N;
  th.route = route;
  th.val.assign(N.G->order(), Cyclotomic());
  for (int x : th.K.members) th.val[x] = rep->mat[x].trace();
  th.alpha = descend_factor_set(*rep, N);
  if (!check_cocycle(th.alpha.c)) throw std::logic_error("descended factor set is not a cocycle");
  for (int n : N.members)
    if (th.val[n] != theta.val[n]) throw std::logic_error("strong extension does not restrict to theta");
  for (int r : th.alpha.q.rep) {
    bool hit = false;
    for (int n : N.members)
      if (!th.val[N.G->mul(r, n)].is_zero()) {
        hit = true;
        break;
      }
    if (!hit) throw std::logic_error("strong extension vanishes on a whole coset");
  }
  th.rep = std::move(rep);
  return th;
}

ProjectiveCharacter strong_extension_monomial(const MonomialPair& pair, const TransversalData& td) {
  const auto& G = *td.N.G;
  const Subgroup& N = td.N;
  if (!check_monomial_pair(pair, N, td.Kp)) throw std::invalid_argument("invalid monomial pair");
  if (td.H != pair.H) throw std::invalid_argument("transversal data built for a different subgroup");
  auto chi_hat = [&](int h) {
    int i = td.coset_of[h];
    int m = G.mul(G.inv(td.t[i]), td.coset_n[h]);
    if (!pair.NH.contains(m)) throw std::logic_error("chi_hat argument outside N cap H");
    return Cyclotomic(pair.chi.val[m]);
  };
  ProjectiveRep chi;
  chi.dom = pair.H;
  chi.dim = 1;
  chi.mat.assign(G.order(), CMatrix{});
  for (int h : pair.H.members) chi.mat[h] = CMatrix{1, {chi_hat(h)}};
  FactorSet alpha;
  alpha.q = quotient_group(td.Kp, N);
  int q = alpha.q.Q->order();
  std::vector<int> lift(q);
  for (int a = 0; a < q; ++a) {
    int i = td.coset_of[alpha.q.rep[a]];
    lift[a] = G.mul(td.y[i], td.t[i]);
  }
  alpha.c.Q = alpha.q.Q;
  alpha.c.val.assign(q, std::vector<Cyclotomic>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      alpha.c.val[a][b] = chi_hat(lift[a]) * chi_hat(lift[b]) / chi_hat(G.mul(lift[a], lift[b]));
  auto rep = std::make_shared<const ProjectiveRep>(proj_induce(chi, td.Kp, &alpha));
  auto th = make_projective_character(rep, N, pair.theta, ExtRoute::Monomial);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (th.alpha.c.val[a][b] != alpha.c.val[a][b]) throw std::logic_error("induced factor set drifted");
  return th;
}

std::vector<int> canonical_coset_reps(const Subgroup& K, const Subgroup& N) { return quotient_group(K, N).rep; }

ProjectiveCharacter strong_extension_matrix(const MonomialPair& pair, const Subgroup& K,
                                            const std::vector<int>& coset_reps) {
  const Subgroup& N = pair.theta.dom;
  const auto& G = *N.G;
  Quotient q = quotient_group(K, N);
  int nq = q.Q->order();
  std::vector<int> rep_of(nq, -1);
  for (int y : coset_reps) {
    int c = q.proj[y];
    if (c < 0 || rep_of[c] >= 0) throw std::invalid_argument("coset representatives do not form a transversal");
    rep_of[c] = y;
  }
  for (int c = 0; c < nq; ++c)
    if (rep_of[c] < 0) throw std::invalid_argument("coset representatives do not form a transversal");
  if (rep_of[0] != 0) throw std::invalid_argument("N must be represented by the identity");
  ProjectiveRep Theta = monomial_model(pair, N);
  int d = Theta.dim;
  std::vector<CMatrix> Pc(nq);
  for (int c = 0; c < nq; ++c) {
    int y = rep_of[c];
    if (c == 0) {
      Pc[c] = CMatrix::identity(d);
      continue;
    }
    // Theta(x) P - P Theta(y^-1 x y) = 0 for generators x of N
    std::vector<std::vector<Cyclotomic>> rows;
    for (int x : N.gens) {
      const CMatrix& A = Theta.mat[x];
      const CMatrix& B = Theta.mat[G.mul(G.mul(G.inv(y), x), y)];
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
          std::vector<Cyclotomic> row(static_cast<size_t>(d) * d);
          for (int k = 0; k < d; ++k) {
            if (!A.at(r, k).is_zero()) row[k * d + s] += A.at(r, k);
            if (!B.at(k, s).is_zero()) row[r * d + k] -= B.at(k, s);
          }
          rows.push_back(std::move(row));
        }
    }
    auto ns = nullspace(std::move(rows), d * d);
    if (ns.empty()) throw std::invalid_argument("no intertwiner: K does not fix theta");
    if (ns.size() != 1) throw std::logic_error("intertwiner space is not one-dimensional");
    auto& v = ns[0];
    Cyclotomic lead;
    for (const auto& e : v)
      if (!e.is_zero()) {
        lead = e;
        break;
      }
    Cyclotomic inv = lead.inverse();
    CMatrix P{d, std::vector<Cyclotomic>(static_cast<size_t>(d) * d)};
    for (int i = 0; i < d * d; ++i)
      if (!v[i].is_zero()) P.a[i] = v[i] * inv;
    Pc[c] = std::move(P);
  }
  auto rep = std::make_shared<ProjectiveRep>();
  rep->dom = K;
  rep->dim = d;
  rep->mat.assign(G.order(), CMatrix{});
  for (int x : K.members) {
    int c = q.proj[x];
    int n = G.mul(G.inv(rep_of[c]), x);
    rep->mat[x] = Pc[c] * Theta.mat[n];
  }
  return make_projective_character(rep, N, pair.theta, ExtRoute::Matrix);
}

const Cocycle2& factor_set(const ProjectiveCharacter& th) { return th.alpha.c; }

ProjectiveCharacter conjugate_extension(const ProjectiveCharacter& th, int g) {
  const auto& G = *th.K.G;
  if (!normalizes(subgroup_closure(th.K.G, {g}), th.K)) throw std::invalid_argument("g does not normalise K");
  auto rep = std::make_shared<ProjectiveRep>();
  rep->dom = th.K;
  rep->dim = th.rep->dim;
  rep->mat.assign(G.order(), CMatrix{});
  int gi = G.inv(g);
  for (int x : th.K.members) rep->mat[x] = th.rep->mat[G.mul(G.mul(gi, x), g)];
  return make_projective_character(rep, th.N, conj_character(restriction_to_N(th), g), th.route);
}

ProjectiveCharacter scale_extension(const ProjectiveCharacter& th, const std::vector<Cyclotomic>& beta) {
  auto rep = std::make_shared<ProjectiveRep>(*th.rep);
  for (int x : th.K.members) rep->mat[x] = rep->mat[x].scaled(beta[th.alpha.q.proj[x]]);
  return make_projective_character(rep, th.N, restriction_to_N(th), th.route);
}

// ============================================================ mu

std::shared_ptr<const H1Module> shared_module(const Subgroup& base, const Subgroup& K, const Subgroup& N,
                                              const GammaGroup& gamma) {
  using Key = std::tuple<const FiniteGroup*, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const H1Module>> cache;
  Key key{base.G.get(), base.members, K.members, N.members, gamma.members};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto m = make_h1_module(base, K, N, gamma);
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = m;
  return m;
}

Cocycle1 mu_cocycle(const TwistSetup& S, const ProjectiveCharacter& th, const Subgroup& L, const GammaGroup& gamma,
                    uint64_t psi_reselect) {
  const auto& G = *S.G;
  auto mod = shared_module(L, th.K, th.N, gamma);
  Character theta = restriction_to_N(th);
  int nb = mod->base_q.Q->order(), np = mod->points.Q->order();
  Cocycle1 c{mod, std::vector<std::vector<Cyclotomic>>(nb, std::vector<Cyclotomic>(np))};
  for (int g = 0; g < nb; ++g) {
    int gr = mod->base_q.rep[g], gi = G.inv(gr);
    auto psi = psi_for(S, theta, gr, psi_reselect);
    if (!psi) throw std::invalid_argument("an element of L moves theta out of its twist class");
    const auto& ps = S.linG[*psi];
    for (int x = 0; x < np; ++x) {
      int r = mod->points.rep[x];
      bool found = false;
      for (int n : th.N.members) {
        int z = G.mul(r, n);
        if (th.val[z].is_zero()) continue;
        Cyclotomic v = th.val[G.mul(G.mul(gi, z), gr)] / (th.val[z] * Cyclotomic(ps.val[z]));
        if (!found) {
          c.val[g][x] = v;
          found = true;
        } else if (v != c.val[g][x]) {
          throw std::logic_error("mu is not constant along the coset support");
        }
      }
      if (!found) throw std::logic_error("strong extension vanishes on a coset");
    }
  }
  return c;
}

// ============================================================ class invariants

ClassInvariants class_invariants(const TwistSetup& S, const TwistClass& tc, const InvariantOptions& opt) {
  ClassInvariants ci;
  ci.cls = tc;
  ci.member = opt.member < 0 ? tc.rep : opt.member;
  if (!std::binary_search(tc.members.begin(), tc.members.end(), ci.member))
    throw std::invalid_argument("member outside the twist class");
  ci.theta = S.irrN->irr[ci.member];
  ci.st = stabilizers_for(S, tc, ci.member);
  ci.Lp = sylow_over(S.N, ci.st.L, S.p);
  ci.Kp = intersect(ci.st.K, ci.Lp);
  ci.pair = monomial_pair(ci.theta, S.N, ci.Kp);
  ci.td = transversal_data(S.N, ci.Kp, ci.Lp, ci.pair.H, opt.transversal_seed);
  if (opt.route == ExtRoute::Monomial) {
    ci.ext_p = strong_extension_monomial(ci.pair, ci.td);
  } else {
    std::vector<int> reps(ci.td.y.begin(), ci.td.y.begin() + ci.td.u);
    ci.ext_p = strong_extension_matrix(ci.pair, ci.Kp, reps);
  }
  if (ci.st.K == ci.Kp) {
    ci.ext = ci.ext_p;
  } else {
    std::optional<MonomialPair> full;
    if (opt.route == ExtRoute::Monomial) {
      try {
        full = monomial_pair(ci.theta, S.N, ci.st.K);
      } catch (const std::runtime_error&) {
      }
    }
    if (full) {
      auto td = transversal_data(S.N, ci.st.K, ci.st.L, full->H, opt.transversal_seed);
      ci.ext = strong_extension_monomial(*full, td);
    } else {
      auto reps = canonical_coset_reps(ci.st.K, S.N);
      if (opt.transversal_seed != 0) {
        std::mt19937_64 rng(opt.transversal_seed);
        for (size_t i = 1; i < reps.size(); ++i) reps[i] = S.G->mul(reps[i], S.N.members[rng() % S.N.size()]);
      }
      ci.ext = strong_extension_matrix(ci.pair, ci.st.K, reps);
    }
  }
  ci.gamma = gamma_group(S, as_character(ci.ext), ci.st.K);
  ci.gamma_p = gamma_restrict(S, ci.gamma, ci.Kp);
  ci.C = h2_certificate(ci.ext_p.alpha.c);
  ci.mu_p = mu_cocycle(S, ci.ext_p, ci.Lp, ci.gamma_p, opt.psi_reselect);
  return ci;
}

H2Certificate c_invariant(const ClassInvariants& ci) { return ci.C; }

const Cocycle1& t_invariant_token(const ClassInvariants& ci) { return ci.mu_p; }

namespace {

void require_comparable(const ClassInvariants& a, const ClassInvariants& b) {
  if (a.st.L != b.st.L || a.st.K != b.st.K || a.gamma != b.gamma)
    throw std::invalid_argument("invariants over different (L, K, Gamma)");
  if (!h2_equal(a.C, b.C)) throw std::invalid_argument("C-invariants differ");
}

}  // namespace

bool t_equal(const ClassInvariants& a, const ClassInvariants& b) {
  require_comparable(a, b);
  return h1_equal(a.mu_p, b.mu_p);
}

bool t_equal_lattice(const ClassInvariants& a, const ClassInvariants& b, int extra_headroom) {
  require_comparable(a, b);
  auto beta = h2_coboundary_solve(a.ext_p.alpha.c, b.ext_p.alpha.c);
  if (!beta) throw std::invalid_argument("lattice route needs torsion factor sets");
  Cocycle1 aligned = a.mu_p * coboundary1(a.mu_p.mod, *beta);
  Cocycle1 rho = inverse(aligned) * b.mu_p;
  auto v = h1_lattice_solve(rho, extra_headroom);
  if (!v.applicable) throw std::logic_error("aligned ratio is not torsion");
  return v.witness.has_value();
}

// ============================================================ predicates

bool pred_A(const MonomialPair& pair, const TransversalData& td, int i, int j, int n, int n2) {
  const auto& G = *td.N.G;
  int ni = G.inv(n), n2i = G.inv(n2);
  for (int m : pair.NH.members) {
    int npp = td.phi(i, G.mul(G.mul(n, m), ni));
    int w = td.phi(j, G.mul(G.mul(n2, npp), n2i));
    int v = G.mul(G.mul(ni, td.phi_inv(i, w)), n);
    if (!pair.NH.contains(v)) return false;
    if (pair.chi.val[v] != pair.chi.val[m]) return false;
  }
  return true;
}

RootOfUnity conj_chi_hat(const MonomialPair& pair, const TransversalData& td, int i, int j, int n, int n2) {
  const auto& G = *td.N.G;
  int k = td.kappa[i][j];
  if (k >= td.u) throw std::invalid_argument("index outside K_p");
  int arg = G.mul(G.inv(td.t[k]), td.phi_inv(k, G.inv(n)));
  arg = G.mul(arg, td.d[i][j]);
  arg = G.mul(arg, td.phi_inv(i, n2));
  arg = G.mul(arg, n);
  if (!pair.NH.contains(arg)) throw std::logic_error("closed form left N cap H");
  return pair.chi.val[arg];
}

RootOfUnity chi_hat_at(const MonomialPair& pair, const TransversalData& td, int j, int n2) {
  const auto& G = *td.N.G;
  int arg = G.mul(G.inv(td.t[j]), n2);
  if (!pair.NH.contains(arg)) throw std::invalid_argument("y_j n' is not in H");
  return pair.chi.val[arg];
}

namespace {

// Predicate tables shared by the Gamma and T searches.
struct PredTables {
  int u, up, nN;
  std::vector<int> Nm;
  // A[i][ni][j][n2i], i < u'
  std::vector<char> A;
  char a(int i, int ni, int j, int n2i) const {
    return A[((static_cast<size_t>(i) * nN + ni) * u + j) * nN + n2i];
  }
};

PredTables pred_tables(const MonomialPair& pair, const TransversalData& td, int upto) {
  PredTables t;
  t.u = td.u;
  t.up = upto;
  t.Nm = td.N.members;
  t.nN = static_cast<int>(t.Nm.size());
  t.A.assign(static_cast<size_t>(t.up) * t.nN * t.u * t.nN, 0);
  for (int i = 0; i < t.up; ++i)
    for (int ni = 0; ni < t.nN; ++ni) {
      if (i >= t.u && ni != 0) continue;  // only n = 1 is used outside K_p
      for (int j = 0; j < t.u; ++j)
        for (int n2i = 0; n2i < t.nN; ++n2i)
          t.A[((static_cast<size_t>(i) * t.nN + ni) * t.u + j) * t.nN + n2i] =
              pred_A(pair, td, i, j, t.Nm[ni], t.Nm[n2i]) ? 1 : 0;
    }
  return t;
}

}  // namespace

std::vector<int> gamma_via_predicates(const TwistSetup& S, const ClassInvariants& ci) {
  const auto& td = ci.td;
  const auto& pair = ci.pair;
  auto T = pred_tables(pair, td, td.u);
  const auto& amb = ci.gamma_p.ambient;
  std::vector<int> out;
  for (size_t v = 0; v < amb.size(); ++v) {
    bool member = false;
    for (size_t e = 0; e < S.linG.size() && !member; ++e) {
      const auto& eps = S.linG[e];
      for (int i = 0; i < T.u && !member; ++i)
        for (int ni = 0; ni < T.nN && !member; ++ni) {
          bool ok = true;
          for (int j = 0; j < T.u && ok; ++j)
            for (int n2i = 0; n2i < T.nN && ok; ++n2i) {
              if (!T.a(i, ni, j, n2i) || !T.a(0, 0, j, n2i)) continue;
              int n2 = T.Nm[n2i];
              RootOfUnity lhs = conj_chi_hat(pair, td, i, j, T.Nm[ni], n2) * amb[v].val[td.y[j]];
              RootOfUnity rhs = chi_hat_at(pair, td, j, n2) * eps.val[td.y[j]] * eps.val[n2];
              if (lhs != rhs) ok = false;
            }
          if (ok) member = true;
        }
    }
    if (member) out.push_back(static_cast<int>(v));
  }
  return out;
}

bool zp_cocycle_condition(const ZTable& z, const TransversalData& td, long M) {
  for (int i = 0; i < td.uprime; ++i)
    for (int j = 0; j < td.uprime; ++j)
      for (int k = 0; k < td.u; ++k) {
        long lhs = z[td.gamma[i][j]][k];
        long rhs = z[i][k] + z[j][td.kappa[i][k]];
        if (mod_pos(lhs - rhs, M) != 0) return false;
      }
  return true;
}

ZTable bp_coboundary(const std::vector<long>& b, const TransversalData& td, long M) {
  ZTable z(td.uprime, std::vector<long>(td.u));
  for (int i = 0; i < td.uprime; ++i)
    for (int k = 0; k < td.u; ++k) z[i][k] = mod_pos(b[td.kappa[i][k]] - b[k], M);
  return z;
}

bool t_equal_linearised(const TwistSetup& S, const ClassInvariants& a, const ClassInvariants& b) {
  require_comparable(a, b);
  return t_class_linearised(S, a, b.mu_p);
}

bool t_class_direct(const ClassInvariants& a, const Cocycle1& target) { return h1_equal(a.mu_p, target); }

bool t_class_linearised(const TwistSetup& S, const ClassInvariants& a, const Cocycle1& target) {
  if (target.mod != a.mu_p.mod) throw std::invalid_argument("target cocycle lives on another module");
  const auto& td = a.td;
  const auto& pair = a.pair;
  const auto& mod = *target.mod;
  const auto& G = *S.G;
  int np = mod.points.Q->order(), nb = mod.base_q.Q->order();
  if (np != td.u || nb != td.uprime) throw std::logic_error("module and transversal disagree");
  // exponent modulus covering every value in the equation
  long M = 1;
  std::vector<std::vector<RootOfUnity>> mu(nb, std::vector<RootOfUnity>(np));
  auto absorb = [&](const Cyclotomic& c) {
    auto w = c.as_root_of_unity();
    if (!w) throw std::invalid_argument("linearised route needs torsion values");
    M = lcm_l(M, w->order());
    return *w;
  };
  for (int g = 0; g < nb; ++g)
    for (int x = 0; x < np; ++x) {
      mu[g][x] = absorb(target.val[g][x]);
      absorb(a.mu_p.val[g][x]);
    }
  for (int x : pair.NH.members) M = lcm_l(M, pair.chi.val[x].order());
  for (const auto& eps : S.linG)
    for (int x = 0; x < G.order(); ++x) M = lcm_l(M, eps.val[x].order());
  const auto& amb = a.gamma_p.ambient;
  for (int id : a.gamma_p.members)
    for (int x : a.Kp.members) M = lcm_l(M, amb[id].val[x].order());
  long pa = prime_part(M, S.p);
  auto ex = [&](const RootOfUnity& w) { return w.exponent_over(M); };

  auto T = pred_tables(pair, td, td.uprime);
  // closed-form values and left-hand sides as exponents
  auto idx = [&](int i, int ni, int j, int n2i) {
    return ((static_cast<size_t>(i) * T.nN + ni) * T.u + j) * T.nN + n2i;
  };
  std::vector<long> Z(T.A.size(), 0), lhs(static_cast<size_t>(td.uprime) * T.u * T.nN, 0);
  for (int i = 0; i < T.u; ++i)
    for (int ni = 0; ni < T.nN; ++ni)
      for (int j = 0; j < T.u; ++j)
        for (int n2i = 0; n2i < T.nN; ++n2i)
          if (T.a(i, ni, j, n2i)) Z[idx(i, ni, j, n2i)] = ex(conj_chi_hat(pair, td, i, j, T.Nm[ni], T.Nm[n2i]));
  for (int k = 0; k < td.uprime; ++k)
    for (int j = 0; j < T.u; ++j)
      for (int n2i = 0; n2i < T.nN; ++n2i)
        if (T.a(k, 0, j, n2i)) {
          int arg = G.mul(G.mul(G.inv(td.t[td.kappa[k][j]]), td.d[k][j]), td.phi_inv(k, T.Nm[n2i]));
          if (!pair.NH.contains(arg)) throw std::logic_error("conjugate chi_hat argument left N cap H");
          lhs[(static_cast<size_t>(k) * T.u + j) * T.nN + n2i] = ex(pair.chi.val[arg]);
        }
  // coset index maps between the transversal and the module
  std::vector<int> base_of(td.uprime), point_of(td.u);
  for (int k = 0; k < td.uprime; ++k) base_of[k] = mod.base_q.proj[td.y[k]];
  for (int k = 0; k < td.u; ++k) point_of[k] = mod.points.proj[td.y[k]];
  std::vector<std::vector<long>> psi_y(S.linG.size(), std::vector<long>(T.u)),
      psi_n(S.linG.size(), std::vector<long>(T.nN));
  for (size_t e = 0; e < S.linG.size(); ++e) {
    for (int j = 0; j < T.u; ++j) psi_y[e][j] = ex(S.linG[e].val[td.y[j]]);
    for (int ni = 0; ni < T.nN; ++ni) psi_n[e][ni] = ex(S.linG[e].val[T.Nm[ni]]);
  }
  std::vector<std::vector<long>> nu_pt;
  for (int id : a.gamma_p.members) {
    std::vector<long> v(np);
    for (int x = 0; x < np; ++x) v[x] = ex(amb[id].val[mod.points.rep[x]]);
    nu_pt.push_back(std::move(v));
  }
  // coboundaries of p-power-valued functions, normalised to 1 on orbit representatives
  std::vector<int> free_pts;
  {
    std::vector<char> seen(np, 0);
    for (int x = 0; x < np; ++x) {
      if (seen[x]) continue;
      for (int g = 0; g < nb; ++g) {
        int y = mod.act[g][x];
        if (!seen[y] && y != x) free_pts.push_back(y);
        seen[y] = 1;
      }
      seen[x] = 1;
    }
    std::sort(free_pts.begin(), free_pts.end());
    free_pts.erase(std::unique(free_pts.begin(), free_pts.end()), free_pts.end());
  }
  double count = 1;
  for (size_t i = 0; i < free_pts.size(); ++i) count *= static_cast<double>(pa);
  if (count > 1e6) throw std::runtime_error("coboundary enumeration too large");
  std::set<std::vector<long>> deltas;
  {
    std::vector<long> e(free_pts.size(), 0);
    long scale = M / pa;
    for (;;) {
      std::vector<long> omega(np, 0);
      for (size_t i = 0; i < free_pts.size(); ++i) omega[free_pts[i]] = e[i] * scale;
      std::vector<long> d(static_cast<size_t>(nb) * np);
      for (int g = 0; g < nb; ++g)
        for (int x = 0; x < np; ++x) d[static_cast<size_t>(g) * np + x] = mod_pos(omega[mod.act[g][x]] - omega[x], M);
      deltas.insert(std::move(d));
      size_t k = 0;
      while (k < e.size() && ++e[k] == pa) e[k++] = 0;
      if (k == e.size()) break;
    }
  }
  for (const auto& delta : deltas) {
    bool all_k = true;
    for (int k = 0; k < td.uprime && all_k; ++k) {
      int gk = base_of[k];
      std::vector<std::pair<int, int>> need;
      for (int j = 0; j < T.u; ++j)
        for (int n2i = 0; n2i < T.nN; ++n2i)
          if (T.a(k, 0, j, n2i)) need.emplace_back(j, n2i);
      bool found = false;
      for (int i = 0; i < T.u && !found; ++i)
        for (int ni = 0; ni < T.nN && !found; ++ni)
          for (size_t e = 0; e < S.linG.size() && !found; ++e)
            for (size_t v = 0; v < nu_pt.size() && !found; ++v) {
              bool ok = true;
              for (auto [j, n2i] : need) {
                if (!T.a(i, ni, j, n2i)) continue;
                int x = point_of[td.kappa[i][j]];
                long rhs = ex(mu[gk][x]) + delta[static_cast<size_t>(gk) * np + x] + nu_pt[v][x] + psi_y[e][j] +
                           psi_n[e][n2i] + Z[idx(i, ni, j, n2i)];
                if (mod_pos(rhs - lhs[(static_cast<size_t>(k) * T.u + j) * T.nN + n2i], M) != 0) {
                  ok = false;
                  break;
                }
              }
              if (ok) found = true;
            }
      if (!found) all_k = false;
    }
    if (all_k) return true;
  }
  return false;
}

// ============================================================ full level

FullLevelData full_level(const TwistSetup& S, const ClassInvariants& ci, uint64_t psi_reselect) {
  FullLevelData f;
  f.mu = mu_cocycle(S, ci.ext, ci.st.L, ci.gamma, psi_reselect);
  f.C = h2_certificate(ci.ext.alpha.c);
  f.torsion = true;
  for (const auto& row : ci.ext.alpha.c.val)
    for (const auto& v : row)
      if (!v.as_root_of_unity()) f.torsion = false;
  return f;
}

FullLevelVerdict t_equal_full(const ClassInvariants& a, const FullLevelData& fa, const ClassInvariants& b,
                              const FullLevelData& fb) {
  if (a.st.L != b.st.L || a.st.K != b.st.K || a.gamma != b.gamma)
    throw std::invalid_argument("invariants over different (L, K, Gamma)");
  if (!h2_equal(fa.C, fb.C)) throw std::invalid_argument("C-invariants differ");
  FullLevelVerdict v;
  v.exact = h1_equal(fa.mu, fb.mu);
  if (fa.torsion && fb.torsion) {
    auto beta = h2_coboundary_solve(a.ext.alpha.c, b.ext.alpha.c);
    if (beta) {
      Cocycle1 rho = inverse(fa.mu * coboundary1(fa.mu.mod, *beta)) * fb.mu;
      if (is_torsion(rho)) {
        v.lattice = h1_lattice_solve(rho).witness.has_value();
        bool all = true;
        for (long q : prime_factors(value_modulus(rho)))
          if (!h1_lattice_solve(cocycle_qpart(rho, q)).witness) all = false;
        v.crt = all;
      }
    }
  }
  return v;
}

bool q_restriction_trivial(const ClassInvariants& ci, const FullLevelData& f, long q) {
  Subgroup Lq = sylow_over(ci.theta.dom, ci.st.L, q);
  return h1_exact_solve(restrict_cocycle(f.mu, Lq)).has_value();
}

}  // namespace tz
