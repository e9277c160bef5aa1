#include "twistzeta/chars.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tz {

// ---------------------------------------------------------------- basics

long Character::degree() const {
  const Cyclotomic& v = val[0];
  if (!v.is_rational()) throw std::logic_error("character degree is not rational");
  Rational r = v.rational_value();
  if (r.get_den() != 1) throw std::logic_error("character degree is not an integer");
  return r.get_num().get_si();
}

bool Character::operator==(const Character& o) const {
  if (dom != o.dom) return false;
  for (int x : dom.members)
    if (val[x] != o.val[x]) return false;
  return true;
}

bool LinearChar::is_trivial() const {
  for (int x : dom.members)
    if (!val[x].is_one()) return false;
  return true;
}

LinearChar LinearChar::operator*(const LinearChar& o) const {
  const LinearChar& small = dom.size() <= o.dom.size() ? *this : o;
  LinearChar r;
  r.dom = small.dom;
  r.val.assign(val.size(), RootOfUnity());
  for (int x : r.dom.members) r.val[x] = val[x] * o.val[x];
  return r;
}

LinearChar LinearChar::inverse() const {
  LinearChar r = *this;
  for (auto& v : r.val) v = v.inverse();
  for (auto& c : r.coords) c = -c;
  r.id = -1;
  r.coords.clear();
  return r;
}

LinearChar LinearChar::restrict_to(const Subgroup& S) const {
  LinearChar r;
  r.dom = S;
  r.val.assign(val.size(), RootOfUnity());
  for (int x : S.members) r.val[x] = val[x];
  return r;
}

Character LinearChar::as_character() const {
  Character c;
  c.dom = dom;
  c.val.assign(val.size(), Cyclotomic());
  for (int x : dom.members) c.val[x] = Cyclotomic(val[x]);
  return c;
}

bool LinearChar::same_on(const LinearChar& o, const Subgroup& S) const {
  for (int x : S.members)
    if (val[x] != o.val[x]) return false;
  return true;
}

int CharacterTable::index_of(const Character& c) const {
  for (size_t i = 0; i < irr.size(); ++i) {
    bool eq = true;
    for (int r : class_reps)
      if (irr[i].val[r] != c.val[r]) {
        eq = false;
        break;
      }
    if (eq) return static_cast<int>(i);
  }
  return -1;
}

// ---------------------------------------------------------------- linear characters

namespace {

std::vector<LinearChar> lin_from_abelianization(const Subgroup& dom, const Embedded& E,
                                                const Abelianization& A,
                                                const std::vector<int>& elem_of_dom_index) {
  std::vector<LinearChar> out;
  size_t r = A.orders.size();
  std::vector<long> e(r, 0);
  long total = 1;
  for (long o : A.orders) total *= o;
  int parent_n = dom.G->order();
  for (long idx = 0; idx < total; ++idx) {
    LinearChar lc;
    lc.dom = dom;
    lc.val.assign(parent_n, RootOfUnity());
    lc.coords = e;
    lc.id = static_cast<int>(idx);
    for (size_t hi = 0; hi < elem_of_dom_index.size(); ++hi) {
      RootOfUnity w;
      for (size_t i = 0; i < r; ++i)
        if (e[i] != 0) w = w * RootOfUnity(A.orders[i], e[i] * A.coords[hi][i]);
      lc.val[elem_of_dom_index[hi]] = w;
    }
    out.push_back(std::move(lc));
    for (size_t i = r; i-- > 0;) {
      if (++e[i] < A.orders[i]) break;
      e[i] = 0;
    }
  }
  (void)E;
  return out;
}

}  // namespace

std::vector<LinearChar> linear_characters(const Subgroup& S) {
  Embedded E = embed(S);
  Abelianization A = abelianization(E.H);
  return lin_from_abelianization(S, E, A, E.to_parent);
}

std::vector<LinearChar> linear_characters_mod(const Subgroup& K, const Subgroup& N) {
  Quotient Qt = quotient_group(K, N);
  Abelianization A = abelianization(Qt.Q);
  // coordinates of each K element come from its coset
  Abelianization AK;
  AK.orders = A.orders;
  std::vector<int> elems = K.members;
  AK.coords.resize(elems.size());
  for (size_t i = 0; i < elems.size(); ++i) AK.coords[i] = A.coords[Qt.proj[elems[i]]];
  Embedded dummy;
  return lin_from_abelianization(K, dummy, AK, elems);
}

// ---------------------------------------------------------------- induction etc.

Character induce(const Character& f, const Subgroup& to) {
  const auto& G = *to.G;
  if (!is_subset(f.dom, to)) throw std::invalid_argument("induce: domain not contained in target");
  Character r;
  r.dom = to;
  r.val.assign(G.order(), Cyclotomic());
  // group target elements by their conjugacy class in the target subgroup
  std::vector<char> done(G.order(), 0);
  Rational scale(1, f.dom.size());
  for (int g : to.members) {
    if (done[g]) continue;
    Cyclotomic acc;
    for (int x : to.members) {
      int c = G.conj(x, g);
      if (f.dom.contains(c)) acc += f.val[c];
    }
    acc = acc * scale;
    for (int x : to.members) {
      int c = G.conj(x, g);
      if (!done[c]) {
        done[c] = 1;
        r.val[c] = acc;
      }
    }
  }
  return r;
}

Character restrict_char(const Character& f, const Subgroup& to) {
  if (!is_subset(to, f.dom)) throw std::invalid_argument("restrict: target not contained in domain");
  Character r;
  r.dom = to;
  r.val.assign(f.val.size(), Cyclotomic());
  for (int x : to.members) r.val[x] = f.val[x];
  return r;
}

Cyclotomic inner_product(const Character& a, const Character& b) {
  if (a.dom != b.dom) throw std::invalid_argument("inner product: different domains");
  Cyclotomic acc;
  for (int x : a.dom.members) {
    if (a.val[x].is_zero() || b.val[x].is_zero()) continue;
    acc += a.val[x] * b.val[x].conj();
  }
  return acc * Rational(1, a.dom.size());
}

Character conj_character(const Character& f, int g) {
  const auto& G = *f.dom.G;
  Character r;
  r.dom = conjugate_subgroup(f.dom, g);
  r.val.assign(G.order(), Cyclotomic());
  int gi = G.inv(g);
  for (int x : r.dom.members) r.val[x] = f.val[G.conj(gi, x)];
  return r;
}

Character twist_by(const Character& f, const LinearChar& psi) {
  Character r = f;
  for (int x : f.dom.members)
    if (!r.val[x].is_zero()) r.val[x] = r.val[x] * Cyclotomic(psi.val[x]);
  return r;
}

// ---------------------------------------------------------------- Dixon-Burnside

namespace {

using i64 = long long;

i64 pw(i64 b, i64 e, i64 m) {
  i64 r = 1;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

i64 inv_p(i64 a, i64 p) { return pw(a, p - 2, p); }

using FMat = std::vector<std::vector<i64>>;

// reduced row echelon form, returns pivots
std::vector<int> rref(FMat& A, i64 p) {
  std::vector<int> piv;
  size_t rows = A.size();
  if (!rows) return piv;
  size_t cols = A[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t s = r;
    while (s < rows && A[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(A[s], A[r]);
    i64 iv = inv_p(A[r][c], p);
    for (auto& x : A[r]) x = x * iv % p;
    for (size_t k = 0; k < rows; ++k) {
      if (k == r || A[k][c] == 0) continue;
      i64 f = A[k][c];
      for (size_t j = 0; j < cols; ++j) A[k][j] = ((A[k][j] - f * A[r][j]) % p + p) % p;
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  A.resize(r);
  return piv;
}

// basis of the nullspace of A (d x d) as row vectors
FMat nullspace(FMat A, i64 p) {
  size_t d = A.empty() ? 0 : A[0].size();
  auto piv = rref(A, p);
  std::vector<char> is_piv(d, 0);
  for (int c : piv) is_piv[c] = 1;
  FMat out;
  for (size_t f = 0; f < d; ++f) {
    if (is_piv[f]) continue;
    std::vector<i64> v(d, 0);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - A[r][f]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

long choose_prime(long e, long n) {
  long bound = 2;
  while (bound * bound <= 4 * n) ++bound;  // bound > 2 sqrt(n)
  for (long l = e + 1;; l += e)
    if (l > bound && is_prime(l)) return l;
}

i64 primitive_root(i64 l) {
  auto fs = prime_factors(l - 1);
  for (i64 g = 2;; ++g) {
    bool ok = true;
    for (long q : fs)
      if (pw(g, (l - 1) / q, l) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

struct RawTable {
  std::vector<std::vector<Cyclotomic>> rows;  // per irreducible, per class of H
};

RawTable dixon(const FiniteGroup& H) {
  int n = H.order();
  int r = H.num_classes();
  long e = H.exponent();
  i64 l = choose_prime(e, n);
  // structure constants c[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
  std::vector<std::vector<std::vector<i64>>> c(r, std::vector<std::vector<i64>>(r, std::vector<i64>(r, 0)));
  for (int k = 0; k < r; ++k) {
    int z = H.class_rep(k);
    for (int x = 0; x < n; ++x) {
      int y = H.mul(H.inv(x), z);
      c[H.class_of(x)][H.class_of(y)][k] += 1;
    }
  }
  std::vector<FMat> spaces;
  {
    FMat I(r, std::vector<i64>(r, 0));
    for (int i = 0; i < r; ++i) I[i][i] = 1;
    spaces.push_back(I);
  }
  for (int i = 1; i < r; ++i) {
    bool all_one = true;
    for (auto& s : spaces) all_one = all_one && s.size() == 1;
    if (all_one) break;
    std::vector<FMat> next;
    for (auto& W : spaces) {
      if (W.size() == 1) {
        next.push_back(W);
        continue;
      }
      FMat Wc = W;
      auto piv = rref(Wc, l);
      size_t d = Wc.size();
      // A[t][s] = (M_i b_s)[piv_t] where (M_i w)_j = sum_k c[i][j][k] w_k
      FMat A(d, std::vector<i64>(d, 0));
      for (size_t s = 0; s < d; ++s) {
        for (size_t t = 0; t < d; ++t) {
          int j = piv[t];
          i64 acc = 0;
          for (int k = 0; k < r; ++k) acc = (acc + c[i][j][k] % l * Wc[s][k]) % l;
          A[t][s] = acc;
        }
      }
      size_t found = 0;
      for (i64 lam = 0; lam < l && found < d; ++lam) {
        FMat B = A;
        for (size_t t = 0; t < d; ++t) B[t][t] = ((B[t][t] - lam) % l + l) % l;
        FMat ns = nullspace(B, l);
        if (ns.empty()) continue;
        FMat sub;
        for (auto& cv : ns) {
          std::vector<i64> v(r, 0);
          for (size_t s = 0; s < d; ++s)
            for (int k = 0; k < r; ++k) v[k] = (v[k] + cv[s] * Wc[s][k]) % l;
          sub.push_back(std::move(v));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != d) throw std::runtime_error("class algebra did not split over the chosen field");
    }
    spaces = std::move(next);
  }
  for (auto& s : spaces)
    if (s.size() != 1) throw std::runtime_error("class algebra eigenspaces did not separate");
  // power maps
  std::vector<std::vector<int>> powcls(r, std::vector<int>(e));
  for (int k = 0; k < r; ++k) {
    int g = H.class_rep(k), y = 0;
    for (long j = 0; j < e; ++j) {
      powcls[k][j] = H.class_of(y);
      y = H.mul(y, g);
    }
  }
  i64 z = pw(primitive_root(l), (l - 1) / e, l);
  std::vector<int> inv_cls(r);
  for (int k = 0; k < r; ++k) inv_cls[k] = H.inverse_class(k);
  RawTable out;
  long degsq = 0;
  for (auto& s : spaces) {
    std::vector<i64> w = s[0];
    if (w[0] == 0) throw std::runtime_error("eigenvector vanishes at the identity class");
    i64 sc = inv_p(w[0], l);
    for (auto& x : w) x = x * sc % l;
    // |G| / d^2 = sum_k w_k w_k* / |C_k|
    i64 sum = 0;
    for (int k = 0; k < r; ++k) sum = (sum + w[k] * w[inv_cls[k]] % l * inv_p(H.class_size(k) % l, l)) % l;
    if (sum == 0) throw std::runtime_error("degree recovery failed");
    i64 d2 = static_cast<i64>(n) % l * inv_p(sum, l) % l;
    long d = -1;
    for (long t = 1; t * t <= n; ++t)
      if ((t * t) % l == d2 && n % t == 0) {
        d = t;
        break;
      }
    if (d < 0) throw std::runtime_error("degree recovery failed");
    degsq += d * d;
    std::vector<i64> chi(r);
    for (int k = 0; k < r; ++k) chi[k] = d % l * w[k] % l * inv_p(H.class_size(k) % l, l) % l;
    std::vector<Cyclotomic> row(r);
    i64 einv = inv_p(e % l, l);
    for (int k = 0; k < r; ++k) {
      std::vector<long> m(e, 0);
      for (long t = 0; t < e; ++t) {
        i64 acc = 0;
        for (long j = 0; j < e; ++j) acc = (acc + chi[powcls[k][j]] * pw(z, (e - (j * t) % e) % e, l)) % l;
        acc = acc * einv % l;
        if (acc > d) throw std::runtime_error("eigenvalue multiplicity out of range");
        m[t] = static_cast<long>(acc);
      }
      row[k] = Cyclotomic::from_counts(e, m);
    }
    out.rows.push_back(std::move(row));
  }
  if (degsq != n) throw std::runtime_error("sum of squared degrees differs from group order");
  return out;
}

bool row_less(const Character& a, const Character& b, const std::vector<int>& reps, long e) {
  long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  bool ta = true, tb = true;
  for (int x : reps) {
    ta = ta && a.val[x].is_one();
    tb = tb && b.val[x].is_one();
  }
  if (ta != tb) return ta;
  for (int x : reps) {
    if (a.val[x] == b.val[x]) continue;
    return lex_less(a.val[x], b.val[x], e);
  }
  return false;
}

std::shared_ptr<CharacterTable> table_skeleton(const Subgroup& S, Embedded& E) {
  auto T = std::make_shared<CharacterTable>();
  T->S = S;
  E = embed(S);
  for (int k = 0; k < E.H->num_classes(); ++k) {
    T->class_reps.push_back(E.to_parent[E.H->class_rep(k)]);
    T->class_sizes.push_back(E.H->class_size(k));
  }
  T->exponent = E.H->exponent();
  return T;
}

void finish_table(CharacterTable& T) {
  std::sort(T.irr.begin(), T.irr.end(), [&](const Character& a, const Character& b) {
    return row_less(a, b, T.class_reps, T.exponent);
  });
}

std::shared_ptr<const CharacterTable> dixon_table(const Subgroup& S) {
  Embedded E;
  auto T = table_skeleton(S, E);
  RawTable raw = dixon(*E.H);
  int pn = S.G->order();
  for (auto& row : raw.rows) {
    Character ch;
    ch.dom = S;
    ch.val.assign(pn, Cyclotomic());
    for (int h = 0; h < E.H->order(); ++h) ch.val[E.to_parent[h]] = row[E.H->class_of(h)];
    T->irr.push_back(std::move(ch));
  }
  finish_table(*T);
  return T;
}

std::shared_ptr<const CharacterTable> monomial_table(const Subgroup& S) {
  Embedded E;
  auto T = table_skeleton(S, E);
  long total = 0;
  auto subs = all_subgroups(S);
  // larger subgroups first: they give the small degrees quickly
  std::reverse(subs.begin(), subs.end());
  for (const auto& H : subs) {
    if (total == S.size()) break;
    if (S.size() % H.size() != 0) continue;
    long deg = S.size() / H.size();
    if (deg * deg > S.size()) continue;
    for (const auto& lam : linear_characters(H)) {
      Character ind = induce(lam.as_character(), S);
      if (inner_product(ind, ind) != Cyclotomic(1)) continue;
      if (T->index_of(ind) >= 0) continue;
      total += deg * deg;
      T->irr.push_back(std::move(ind));
      if (total == S.size()) break;
    }
  }
  if (total != S.size()) throw std::runtime_error("monomial engine: group has non-monomial irreducibles");
  finish_table(*T);
  return T;
}

struct TableKey {
  const FiniteGroup* G;
  std::vector<int> members;
  CharEngine engine;
  bool operator<(const TableKey& o) const {
    if (G != o.G) return G < o.G;
    if (engine != o.engine) return engine < o.engine;
    return members < o.members;
  }
};

std::mutex g_table_mutex;
std::map<TableKey, std::shared_ptr<const CharacterTable>> g_tables;
// keep the parent groups alive while their tables are cached
std::vector<GroupPtr> g_keepalive;

}  // namespace

std::shared_ptr<const CharacterTable> character_table(const Subgroup& S, CharEngine engine) {
  TableKey key{S.G.get(), S.members, engine};
  {
    std::lock_guard<std::mutex> lk(g_table_mutex);
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return it->second;
  }
  auto T = engine == CharEngine::Dixon ? dixon_table(S) : monomial_table(S);
  std::lock_guard<std::mutex> lk(g_table_mutex);
  auto [it, inserted] = g_tables.emplace(key, T);
  if (inserted) g_keepalive.push_back(S.G);
  return it->second;
}

// ---------------------------------------------------------------- monomial pairs

bool check_monomial_pair(const MonomialPair& mp, const Subgroup& N, const Subgroup& Kp) {
  const auto& G = *N.G;
  if (!is_subset(mp.H, Kp)) return false;
  if (static_cast<long>(mp.H.size()) * N.size() / mp.NH.size() != Kp.size()) return false;
  if (mp.NH != intersect(N, mp.H)) return false;
  for (int h : mp.H.gens)
    for (int x : mp.NH.members)
      if (mp.chi.val[G.conj(h, x)] != mp.chi.val[x]) return false;
  Character ind = induce(mp.chi.as_character(), N);
  if (inner_product(ind, ind) != Cyclotomic(1)) return false;
  return ind == mp.theta;
}

namespace {

std::mutex g_sub_mutex;
std::map<std::pair<const FiniteGroup*, std::vector<int>>, std::shared_ptr<const std::vector<Subgroup>>> g_subs;

std::shared_ptr<const std::vector<Subgroup>> cached_subgroups(const Subgroup& K) {
  auto key = std::make_pair(K.G.get(), K.members);
  {
    std::lock_guard<std::mutex> lk(g_sub_mutex);
    auto it = g_subs.find(key);
    if (it != g_subs.end()) return it->second;
  }
  auto v = std::make_shared<const std::vector<Subgroup>>(all_subgroups(K));
  std::lock_guard<std::mutex> lk(g_sub_mutex);
  g_keepalive.push_back(K.G);
  return g_subs.emplace(key, v).first->second;
}

}  // namespace

MonomialPair monomial_pair(const Character& theta, const Subgroup& N, const Subgroup& Kp) {
  const auto& G = *N.G;
  long d = theta.degree();
  auto subs = cached_subgroups(Kp);
  for (const auto& H : *subs) {
    Subgroup NH = intersect(N, H);
    if (static_cast<long>(H.size()) * N.size() / NH.size() != Kp.size()) continue;
    if (N.size() / NH.size() != d) continue;
    for (const auto& chi : linear_characters(NH)) {
      bool inv = true;
      for (int h : H.gens)
        for (int x : NH.gens)
          if (chi.val[G.conj(h, x)] != chi.val[x]) inv = false;
      if (!inv) continue;
      // Frobenius: theta lies over chi iff <theta|NH, chi> != 0; with degrees equal it is Ind
      Character ind = induce(chi.as_character(), N);
      if (ind != theta) continue;
      return MonomialPair{H, NH, chi, theta};
    }
  }
  throw std::runtime_error("monomial search exhausted");
}

// ---------------------------------------------------------------- extension test

bool lin_extension_test(const LinearChar& tau, const std::vector<RootOfUnity>& sigma,
                        const TransversalData& td, long p) {
  const auto& G = *td.N.G;
  if (static_cast<int>(sigma.size()) != td.u) throw std::invalid_argument("sigma must have length u");
  if (!sigma[0].is_one()) return false;
  Abelianization A = abelianization(td.N.G);
  long ex = 1;
  for (long o : A.orders) ex = lcm_l(ex, o);
  long W = prime_part(ex, p);
  int m = td.m;
  std::vector<RootOfUnity> s(m);
  for (int i = 0; i < td.u; ++i) s[i] = sigma[i];
  const auto& Nm = td.N.members;
  auto ok_pair = [&](int i, int j) {
    for (int n : Nm)
      for (int n2 : Nm) {
        int arg = G.mul(G.mul(td.a[i][j], td.phi_inv(j, n)), n2);
        if (s[td.gamma[i][j]] * tau.val[arg] != s[i] * s[j] * tau.val[n] * tau.val[n2]) return false;
      }
    return true;
  };
  // backtracking over sigma_u .. sigma_{m-1}; a pair (i,j) is checked once all of
  // i, j, gamma(i,j) are assigned
  std::vector<char> assigned(m, 0);
  for (int i = 0; i < td.u; ++i) assigned[i] = 1;
  auto consistent = [&](int upto) {
    for (int i = 0; i <= upto; ++i)
      for (int j = 0; j <= upto; ++j) {
        int g = td.gamma[i][j];
        if (!assigned[i] || !assigned[j] || !assigned[g]) continue;
        if (std::max({i, j, g}) != upto) continue;
        if (!ok_pair(i, j)) return false;
      }
    return true;
  };
  for (int k = 0; k < td.u; ++k)
    if (!consistent(k)) return false;
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == m) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (!ok_pair(i, j)) return false;
      return true;
    }
    for (long t = 0; t < W; ++t) {
      s[k] = RootOfUnity(W, t);
      assigned[k] = 1;
      if (consistent(k) && rec(k + 1)) return true;
    }
    assigned[k] = 0;
    return false;
  };
  return rec(td.u);
}

}  // namespace tz
