#include "twistzeta/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "twistzeta/cyclo.hpp"

namespace tz {

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(int n, std::vector<int> table, std::vector<std::string> labels, bool verify)
    : n_(n), tab_(std::move(table)), labels_(std::move(labels)) {
  if (n_ < 1) throw InputError("GROUP_SPEC_INVALID", "group must have at least one element");
  if (tab_.size() != static_cast<size_t>(n_) * n_)
    throw InputError("GROUP_SPEC_INVALID", "multiplication table has the wrong size");
  if (labels_.empty())
    for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  if (static_cast<int>(labels_.size()) != n_)
    throw InputError("GROUP_SPEC_INVALID", "label count does not match order");
  for (int x : tab_)
    if (x < 0 || x >= n_) throw InputError("GROUP_SPEC_INVALID", "table entry out of range");
  if (verify) {
    for (int x = 0; x < n_; ++x)
      if (mul(0, x) != x || mul(x, 0) != x)
        throw InputError("GROUP_SPEC_INVALID", "element 0 is not the identity");
    for (int a = 0; a < n_; ++a) {
      std::vector<char> row(n_, 0), col(n_, 0);
      for (int b = 0; b < n_; ++b) {
        row[mul(a, b)] = 1;
        col[mul(b, a)] = 1;
      }
      for (int b = 0; b < n_; ++b)
        if (!row[b] || !col[b]) throw InputError("GROUP_SPEC_INVALID", "table is not a Latin square");
    }
    auto check = [&](int a, int b, int c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw InputError("GROUP_SPEC_INVALID",
                         "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")");
    };
    if (n_ <= 512) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (int c = 0; c < n_; ++c) check(a, b, c);
    } else {
      std::mt19937_64 rng(12345);
      std::uniform_int_distribution<int> pick(0, n_ - 1);
      for (int s = 0; s < 200000; ++s) check(pick(rng), pick(rng), pick(rng));
    }
  }
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
  ord_.assign(n_, 1);
  for (int a = 0; a < n_; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    ord_[a] = k;
    exp_ = static_cast<int>(lcm_l(exp_, k));
  }
  for (int a = 0; a < n_ && abelian_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }
  class_of_.assign(n_, -1);
  for (int x = 0; x < n_; ++x) {
    if (class_of_[x] >= 0) continue;
    int c = static_cast<int>(class_reps_.size());
    std::vector<int> mem;
    for (int g = 0; g < n_; ++g) {
      int y = conj(g, x);
      if (class_of_[y] < 0) {
        class_of_[y] = c;
        mem.push_back(y);
      }
    }
    std::sort(mem.begin(), mem.end());
    class_reps_.push_back(x);
    class_members_.push_back(std::move(mem));
  }
}

int FiniteGroup::pow(int a, long k) const {
  long o = ord_[a];
  k = mod_pos(k, o);
  int r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

GroupPtr group_from_table(const std::vector<std::vector<int>>& table,
                          const std::vector<std::string>& labels) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("GROUP_SPEC_INVALID", "empty table");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n)
      throw InputError("GROUP_SPEC_INVALID", "table is not square");
  for (const auto& row : table)
    for (int x : row)
      if (x < 0 || x >= n) throw InputError("GROUP_SPEC_INVALID", "table entry out of range");
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[i][x] == x && table[x][i] == x;
    if (ok) e = i;
  }
  if (e < 0) throw InputError("GROUP_SPEC_INVALID", "no identity element");
  std::vector<int> to_new(n), to_old;
  to_old.push_back(e);
  for (int i = 0; i < n; ++i)
    if (i != e) to_old.push_back(i);
  for (int i = 0; i < n; ++i) to_new[to_old[i]] = i;
  std::vector<int> tab(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tab[static_cast<size_t>(a) * n + b] = to_new[table[to_old[a]][to_old[b]]];
  std::vector<std::string> lab;
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n)
      throw InputError("GROUP_SPEC_INVALID", "label count does not match order");
    for (int i = 0; i < n; ++i) lab.push_back(labels[to_old[i]]);
  }
  return std::make_shared<const FiniteGroup>(n, std::move(tab), std::move(lab), true);
}

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
    return h;
  }
};

std::string perm_label(const std::vector<int>& img) {
  std::string s;
  std::vector<char> seen(img.size(), 0);
  for (size_t i = 0; i < img.size(); ++i) {
    if (seen[i] || img[i] == static_cast<int>(i)) continue;
    s += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) s += " ";
      s += std::to_string(j + 1);
      first = false;
      j = static_cast<size_t>(img[j]);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

}  // namespace

GroupPtr group_from_images(const std::vector<std::vector<int>>& gens, int cap) {
  size_t k = gens.empty() ? 0 : gens[0].size();
  for (const auto& g : gens) {
    if (g.size() != k) throw InputError("NOT_PERMUTATION", "generators act on different point sets");
    std::vector<char> seen(k, 0);
    for (int x : g) {
      if (x < 0 || x >= static_cast<int>(k) || seen[x])
        throw InputError("NOT_PERMUTATION", "generator is not a permutation");
      seen[x] = 1;
    }
  }
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::unordered_map<std::vector<int>, int, VecHash> index{{id, 0}};
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      std::vector<int> c(k);
      for (size_t x = 0; x < k; ++x) c[x] = g[elems[i][x]];
      if (index.count(c)) continue;
      if (static_cast<int>(elems.size()) >= cap)
        throw InputError("GROUP_TOO_LARGE", "permutation closure exceeds size cap " + std::to_string(cap));
      index.emplace(c, static_cast<int>(elems.size()));
      elems.push_back(std::move(c));
    }
  }
  std::sort(elems.begin(), elems.end());
  int n = static_cast<int>(elems.size());
  index.clear();
  for (int i = 0; i < n; ++i) index.emplace(elems[i], i);
  std::vector<int> tab(static_cast<size_t>(n) * n);
  std::vector<int> c(k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (size_t x = 0; x < k; ++x) c[x] = elems[a][elems[b][x]];
      tab[static_cast<size_t>(a) * n + b] = index.at(c);
    }
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(perm_label(e));
  return std::make_shared<const FiniteGroup>(n, std::move(tab), std::move(labels), false);
}

GroupPtr group_from_permutations(const std::vector<std::vector<std::vector<int>>>& gens, int points,
                                 int cap) {
  if (points < 1) throw InputError("GROUP_SPEC_INVALID", "points must be positive");
  std::vector<std::vector<int>> imgs;
  for (const auto& g : gens) {
    std::vector<int> img(points);
    std::iota(img.begin(), img.end(), 0);
    std::vector<char> used(points, 0);
    for (const auto& cyc : g) {
      for (int x : cyc) {
        if (x < 1 || x > points) throw InputError("NOT_PERMUTATION", "cycle point out of range");
        if (used[x - 1]) throw InputError("NOT_PERMUTATION", "point repeated in cycles of a generator");
        used[x - 1] = 1;
      }
      for (size_t i = 0; i < cyc.size(); ++i) img[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
    }
    imgs.push_back(std::move(img));
  }
  if (imgs.empty()) {
    std::vector<int> id(points);
    std::iota(id.begin(), id.end(), 0);
    imgs.push_back(id);
  }
  return group_from_images(imgs, cap);
}

// ---------------------------------------------------------------- subgroups

namespace {

Subgroup make_sub(const GroupPtr& G, std::vector<int> members, std::vector<int> gens) {
  Subgroup S;
  S.G = G;
  std::sort(members.begin(), members.end());
  S.mask.assign(G->order(), 0);
  for (int x : members) S.mask[x] = 1;
  S.members = std::move(members);
  S.gens = std::move(gens);
  return S;
}

std::vector<int> closure_members(const GroupPtr& G, const std::vector<int>& gens,
                                 std::vector<char>& mask) {
  mask.assign(G->order(), 0);
  std::vector<int> mem{0};
  mask[0] = 1;
  for (size_t i = 0; i < mem.size(); ++i)
    for (int g : gens) {
      int y = G->mul(mem[i], g);
      if (!mask[y]) {
        mask[y] = 1;
        mem.push_back(y);
      }
    }
  return mem;
}

}  // namespace

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<int>& gens) {
  std::vector<int> kept;
  std::vector<char> mask(G->order(), 0);
  mask[0] = 1;
  std::vector<int> mem{0};
  for (int g : gens) {
    if (g < 0 || g >= G->order()) throw InputError("BAD_ELEMENT", "generator index out of range");
    if (mask[g]) continue;
    kept.push_back(g);
    mem = closure_members(G, kept, mask);
  }
  return make_sub(G, std::move(mem), std::move(kept));
}

Subgroup whole_group(const GroupPtr& G) {
  std::vector<int> all(G->order());
  std::iota(all.begin(), all.end(), 0);
  return subgroup_closure(G, all);
}

Subgroup trivial_subgroup(const GroupPtr& G) { return subgroup_closure(G, {}); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> mem;
  for (int x : a.members)
    if (b.contains(x)) mem.push_back(x);
  return subgroup_closure(a.G, mem);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<int> g = a.gens;
  g.insert(g.end(), b.gens.begin(), b.gens.end());
  return subgroup_closure(a.G, g);
}

bool is_subset(const Subgroup& a, const Subgroup& b) {
  for (int x : a.members)
    if (!b.contains(x)) return false;
  return true;
}

bool normalizes(const Subgroup& b, const Subgroup& a) {
  const auto& G = *a.G;
  for (int g : b.gens)
    for (int x : a.gens)
      if (!a.contains(G.conj(g, x))) return false;
  return true;
}

bool is_normal(const Subgroup& a) { return normalizes(whole_group(a.G), a); }

bool is_p_group(const Subgroup& a, long p) {
  long n = a.size();
  return prime_part(n, p) == n;
}

Subgroup conjugate_subgroup(const Subgroup& H, int g) {
  std::vector<int> gens;
  for (int x : H.gens) gens.push_back(H.G->conj(g, x));
  return subgroup_closure(H.G, gens);
}

Subgroup derived_subgroup(const Subgroup& K) {
  const auto& G = *K.G;
  std::vector<int> comm;
  std::vector<char> seen(G.order(), 0);
  for (int x : K.members)
    for (int y : K.members) {
      int c = G.mul(G.mul(x, y), G.mul(G.inv(x), G.inv(y)));
      if (!seen[c]) {
        seen[c] = 1;
        comm.push_back(c);
      }
    }
  std::sort(comm.begin(), comm.end());
  return subgroup_closure(K.G, comm);
}

Subgroup center(const GroupPtr& G) {
  std::vector<int> z;
  for (int x = 0; x < G->order(); ++x) {
    bool central = true;
    for (int g = 0; g < G->order() && central; ++g) central = G->mul(g, x) == G->mul(x, g);
    if (central) z.push_back(x);
  }
  return subgroup_closure(G, z);
}

bool is_nilpotent(const GroupPtr& G) {
  // a finite group is nilpotent iff it is the direct product of its Sylow subgroups,
  // equivalently every Sylow subgroup is normal
  Subgroup triv = trivial_subgroup(G);
  Subgroup all = whole_group(G);
  for (long q : prime_factors(G->order())) {
    Subgroup P = sylow_over(triv, all, q);
    if (!is_normal(P)) return false;
  }
  return true;
}

std::vector<Subgroup> all_subgroups(const Subgroup& K) {
  std::vector<Subgroup> cyc;
  std::set<std::vector<int>> seen;
  for (int x : K.members) {
    Subgroup c = subgroup_closure(K.G, {x});
    if (seen.insert(c.members).second) cyc.push_back(c);
  }
  std::vector<Subgroup> all = cyc;
  for (size_t i = 0; i < all.size(); ++i)
    for (const auto& c : cyc) {
      if (is_subset(c, all[i])) continue;
      Subgroup j = join(all[i], c);
      if (seen.insert(j.members).second) all.push_back(j);
    }
  std::sort(all.begin(), all.end());
  return all;
}

Embedded embed(const Subgroup& S) {
  const auto& G = *S.G;
  int n = S.size();
  Embedded E;
  E.sub = S;
  E.to_parent = S.members;
  E.from_parent.assign(G.order(), -1);
  for (int i = 0; i < n; ++i) E.from_parent[S.members[i]] = i;
  std::vector<int> tab(static_cast<size_t>(n) * n);
  std::vector<std::string> lab;
  for (int a = 0; a < n; ++a) {
    lab.push_back(G.label(S.members[a]));
    for (int b = 0; b < n; ++b) tab[static_cast<size_t>(a) * n + b] = E.from_parent[G.mul(S.members[a], S.members[b])];
  }
  E.H = std::make_shared<const FiniteGroup>(n, std::move(tab), std::move(lab), false);
  return E;
}

Quotient quotient_group(const Subgroup& K, const Subgroup& N) {
  if (!is_subset(N, K)) throw InputError("N_NOT_NORMAL", "subgroup is not contained in the group");
  if (!normalizes(K, N)) throw InputError("N_NOT_NORMAL", "subgroup is not normal");
  const auto& G = *K.G;
  Quotient Qt;
  Qt.K = K;
  Qt.N = N;
  Qt.proj.assign(G.order(), -1);
  for (int x : K.members) {
    if (Qt.proj[x] >= 0) continue;
    int c = static_cast<int>(Qt.rep.size());
    Qt.rep.push_back(x);
    for (int n : N.members) Qt.proj[G.mul(x, n)] = c;
  }
  int q = static_cast<int>(Qt.rep.size());
  std::vector<int> tab(static_cast<size_t>(q) * q);
  std::vector<std::string> lab;
  for (int a = 0; a < q; ++a) {
    lab.push_back(G.label(Qt.rep[a]) + "N");
    for (int b = 0; b < q; ++b) tab[static_cast<size_t>(a) * q + b] = Qt.proj[G.mul(Qt.rep[a], Qt.rep[b])];
  }
  Qt.Q = std::make_shared<const FiniteGroup>(q, std::move(tab), std::move(lab), false);
  return Qt;
}

Subgroup sylow_over(const Subgroup& N, const Subgroup& L, long q) {
  Quotient Qt = quotient_group(L, N);
  const auto& Q = *Qt.Q;
  long target = prime_part(Q.order(), q);
  if (target == 1) return N;
  std::vector<char> in(Q.order(), 0);
  in[0] = 1;
  std::vector<int> gens;
  long size = 1;
  bool changed = true;
  while (size < target && changed) {
    changed = false;
    for (int x = 0; x < Q.order() && size < target; ++x) {
      if (in[x]) continue;
      if (prime_part(Q.elem_order(x), q) != Q.elem_order(x)) continue;
      std::vector<int> g2 = gens;
      g2.push_back(x);
      std::vector<char> mask;
      auto mem = closure_members(Qt.Q, g2, mask);
      long s = static_cast<long>(mem.size());
      if (prime_part(s, q) != s) continue;
      gens = std::move(g2);
      in = std::move(mask);
      size = s;
      changed = true;
    }
  }
  if (size != target) throw std::logic_error("sylow_over: greedy search did not reach Sylow order");
  std::vector<int> g = N.gens;
  for (int x : gens) g.push_back(Qt.rep[x]);
  return subgroup_closure(N.G, g);
}

Abelianization abelianization(const GroupPtr& G) {
  Abelianization A;
  A.derived = derived_subgroup(whole_group(G));
  Quotient Qt = quotient_group(whole_group(G), A.derived);
  const auto& Q = *Qt.Q;
  int n = Q.order();
  std::vector<char> S(n, 0);
  S[0] = 1;
  long size = 1;
  std::vector<int> qgens;
  while (size < n) {
    int best = -1, best_ord = 0;
    for (int x = 0; x < n; ++x) {
      int o = Q.elem_order(x);
      if (o <= best_ord) continue;
      bool meets = false;
      int y = x;
      for (int k = 1; k < o && !meets; ++k) {
        if (S[y]) meets = true;
        y = Q.mul(y, x);
      }
      if (meets) continue;
      best = x;
      best_ord = o;
    }
    if (best < 0) throw std::logic_error("abelianization: decomposition stalled");
    std::vector<char> S2(n, 0);
    for (int s = 0; s < n; ++s) {
      if (!S[s]) continue;
      int y = s;
      for (int k = 0; k < best_ord; ++k) {
        S2[y] = 1;
        y = Q.mul(y, best);
      }
    }
    S = std::move(S2);
    size *= best_ord;
    qgens.push_back(best);
    A.orders.push_back(best_ord);
  }
  for (int x : qgens) A.gens.push_back(Qt.rep[x]);
  size_t r = qgens.size();
  std::vector<std::vector<long>> qcoords(n);
  std::vector<long> e(r, 0);
  long total = 1;
  for (long o : A.orders) total *= o;
  if (total != n) throw std::logic_error("abelianization: factor orders do not multiply to |G/G'|");
  for (long idx = 0; idx < total; ++idx) {
    int y = 0;
    for (size_t i = 0; i < r; ++i) y = Q.mul(y, Q.pow(qgens[i], e[i]));
    if (!qcoords[y].empty()) throw std::logic_error("abelianization: factors are not independent");
    qcoords[y] = e;
    for (size_t i = r; i-- > 0;) {
      if (++e[i] < A.orders[i]) break;
      e[i] = 0;
    }
  }
  A.coords.resize(G->order());
  for (int g = 0; g < G->order(); ++g) A.coords[g] = qcoords[Qt.proj[g]];
  return A;
}

// ---------------------------------------------------------------- transversal

int TransversalData::phi(int i, int n) const { return N.G->conj(y[i], n); }

int TransversalData::phi_inv(int i, int n) const {
  const auto& G = *N.G;
  return G.mul(G.mul(G.inv(y[i]), n), y[i]);
}

TransversalData transversal_data(const Subgroup& N, const Subgroup& Kp, const Subgroup& Lp,
                                 const Subgroup& H, uint64_t shuffle_seed) {
  const auto& G = *N.G;
  if (!is_subset(H, Kp) || static_cast<long>(H.size()) * N.size() / intersect(H, N).size() != Kp.size())
    throw std::invalid_argument("not a complement-spanning subgroup");
  if (!is_subset(N, Kp) || !is_subset(Kp, Lp)) throw std::invalid_argument("transversal: N <= Kp <= Lp required");
  Quotient Qt = quotient_group(whole_group(N.G), N);
  std::vector<int> bk, bl, br;
  for (size_t c = 0; c < Qt.rep.size(); ++c) {
    int r = Qt.rep[c];
    if (Kp.contains(r)) bk.push_back(r);
    else if (Lp.contains(r)) bl.push_back(r);
    else br.push_back(r);
  }
  if (shuffle_seed != 0) {
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(bk.begin() + 1, bk.end(), rng);
    std::shuffle(bl.begin(), bl.end(), rng);
    std::shuffle(br.begin(), br.end(), rng);
    std::uniform_int_distribution<int> pick(0, N.size() - 1);
    auto rerep = [&](std::vector<int>& v, size_t from) {
      for (size_t i = from; i < v.size(); ++i) v[i] = G.mul(v[i], N.members[pick(rng)]);
    };
    rerep(bk, 1);
    rerep(bl, 0);
    rerep(br, 0);
  }
  TransversalData td;
  td.N = N;
  td.Kp = Kp;
  td.Lp = Lp;
  td.H = H;
  td.y = bk;
  td.y.insert(td.y.end(), bl.begin(), bl.end());
  td.y.insert(td.y.end(), br.begin(), br.end());
  td.m = static_cast<int>(td.y.size());
  td.u = static_cast<int>(bk.size());
  td.uprime = static_cast<int>(bk.size() + bl.size());
  td.coset_of.assign(G.order(), -1);
  td.coset_n.assign(G.order(), -1);
  for (int i = 0; i < td.m; ++i)
    for (int n : N.members) {
      int g = G.mul(td.y[i], n);
      td.coset_of[g] = i;
      td.coset_n[g] = n;
    }
  td.t.assign(td.u, -1);
  for (int i = 0; i < td.u; ++i)
    for (int n : N.members)
      if (H.contains(G.mul(td.y[i], n))) {
        td.t[i] = n;
        break;
      }
  for (int x : td.t)
    if (x < 0) throw std::invalid_argument("not a complement-spanning subgroup");
  td.kappa.assign(td.m, std::vector<int>(td.m));
  td.d = td.gamma = td.a = td.kappa;
  for (int i = 0; i < td.m; ++i)
    for (int j = 0; j < td.m; ++j) {
      int c = G.mul(G.mul(G.inv(td.y[i]), td.y[j]), td.y[i]);
      td.kappa[i][j] = td.coset_of[c];
      td.d[i][j] = td.coset_n[c];
      int p = G.mul(td.y[i], td.y[j]);
      td.gamma[i][j] = td.coset_of[p];
      td.a[i][j] = td.coset_n[p];
    }
  return td;
}

}  // namespace tz
