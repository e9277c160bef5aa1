#include "twistzeta/twist.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tz {

TwistSetup make_setup(const GroupPtr& G, const Subgroup& N, long p) {
  if (!is_prime(p)) throw InputError("BAD_PRIME", "p = " + std::to_string(p) + " is not prime");
  if (!is_normal(N)) throw InputError("N_NOT_NORMAL", "the given subgroup is not normal in G");
  if (!is_p_group(N, p))
    throw InputError("N_NOT_P_GROUP", "the given subgroup has order " + std::to_string(N.size()) +
                                          ", not a power of " + std::to_string(p));
  TwistSetup S;
  S.G = G;
  S.all = whole_group(G);
  S.N = N;
  S.p = p;
  S.linG = linear_characters(S.all);
  S.irrN = character_table(N);
  return S;
}

std::vector<TwistClass> twist_classes(const Subgroup& H, const std::vector<LinearChar>& linG) {
  auto T = character_table(H);
  int r = static_cast<int>(T->irr.size());
  std::vector<int> cls(r, -1);
  std::vector<TwistClass> out;
  for (int i = 0; i < r; ++i) {
    if (cls[i] >= 0) continue;
    TwistClass tc;
    tc.H = H;
    tc.rep = i;
    tc.degree = T->irr[i].degree();
    std::set<int> mem;
    for (const auto& psi : linG) {
      int j = T->index_of(twist_by(T->irr[i], psi));
      if (j < 0) throw std::logic_error("twist of an irreducible is not irreducible");
      mem.insert(j);
    }
    for (int j : mem) {
      if (cls[j] >= 0) throw std::logic_error("twist orbits overlap");
      cls[j] = static_cast<int>(out.size());
    }
    tc.members.assign(mem.begin(), mem.end());
    out.push_back(std::move(tc));
  }
  return out;
}

int class_containing(const std::vector<TwistClass>& classes, int i) {
  for (size_t c = 0; c < classes.size(); ++c)
    if (std::binary_search(classes[c].members.begin(), classes[c].members.end(), i)) return static_cast<int>(c);
  return -1;
}

StabilizerData stabilizers_for(const TwistSetup& S, const TwistClass& tc, int member) {
  const auto& theta = S.irrN->irr[member];
  std::vector<int> k, l;
  for (int g = 0; g < S.G->order(); ++g) {
    int j = S.irrN->index_of(conj_character(theta, g));
    if (j == member) k.push_back(g);
    if (std::binary_search(tc.members.begin(), tc.members.end(), j)) l.push_back(g);
  }
  return StabilizerData{subgroup_closure(S.G, k), subgroup_closure(S.G, l)};
}

StabilizerData stabilizers(const TwistSetup& S, const TwistClass& tc) {
  return stabilizers_for(S, tc, tc.rep);
}

std::vector<int> psi_candidates(const TwistSetup& S, const Character& theta, int g) {
  Character c = conj_character(theta, g);
  std::vector<int> out;
  for (size_t i = 0; i < S.linG.size(); ++i) {
    bool ok = true;
    for (int n : S.N.members) {
      if (c.val[n] != theta.val[n] * Cyclotomic(S.linG[i].val[n])) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::optional<int> psi_for(const TwistSetup& S, const Character& theta, int g, uint64_t reselect) {
  auto c = psi_candidates(S, theta, g);
  if (c.empty()) return std::nullopt;
  if (reselect == 0) return c.front();
  std::mt19937_64 rng(reselect * 1000003ULL + static_cast<uint64_t>(g));
  return c[rng() % c.size()];
}

int GammaGroup::find(const LinearChar& nu) const {
  for (size_t i = 0; i < ambient.size(); ++i)
    if (ambient[i].same_on(nu, K)) return static_cast<int>(i);
  return -1;
}

bool GammaGroup::contains_id(int id) const { return std::binary_search(members.begin(), members.end(), id); }

namespace {

std::vector<int> greedy_gens(const std::vector<LinearChar>& amb, const std::vector<int>& members, const Subgroup& K) {
  std::vector<int> gens;
  std::set<int> span{0};
  auto find = [&](const LinearChar& nu) {
    for (size_t i = 0; i < amb.size(); ++i)
      if (amb[i].same_on(nu, K)) return static_cast<int>(i);
    throw std::logic_error("linear character outside Lin(K/N)");
  };
  for (int m : members) {
    if (span.count(m)) continue;
    gens.push_back(m);
    std::vector<int> frontier(span.begin(), span.end());
    // close span under multiplication by the new generator
    for (size_t i = 0; i < frontier.size(); ++i) {
      int prod = find(amb[frontier[i]] * amb[m]);
      if (span.insert(prod).second) frontier.push_back(prod);
    }
  }
  return gens;
}

}  // namespace

GammaGroup gamma_from_members(const TwistSetup& S, const Subgroup& K, std::vector<int> members) {
  GammaGroup g;
  g.K = K;
  g.ambient = linear_characters_mod(K, S.N);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  g.members = std::move(members);
  g.gens = greedy_gens(g.ambient, g.members, K);
  return g;
}

GammaGroup gamma_group(const TwistSetup& S, const Character& theta_hat, const Subgroup& K) {
  std::vector<int> supp;
  for (int x : K.members)
    if (!theta_hat.val[x].is_zero()) supp.push_back(x);
  auto amb = linear_characters_mod(K, S.N);
  std::vector<int> mem;
  for (size_t i = 0; i < amb.size(); ++i) {
    for (const auto& eps : S.linG) {
      bool ok = true;
      for (int x : supp)
        if (eps.val[x] != amb[i].val[x]) {
          ok = false;
          break;
        }
      if (ok) {
        mem.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  GammaGroup g;
  g.K = K;
  g.ambient = std::move(amb);
  g.members = std::move(mem);
  g.gens = greedy_gens(g.ambient, g.members, K);
  return g;
}

GammaGroup gamma_restrict(const TwistSetup& S, const GammaGroup& g, const Subgroup& Kprime) {
  GammaGroup r;
  r.K = Kprime;
  r.ambient = linear_characters_mod(Kprime, S.N);
  std::vector<int> mem;
  for (int id : g.members) {
    int j = r.find(g.ambient[id]);
    if (j < 0) throw std::logic_error("restriction left Lin(K'/N)");
    mem.push_back(j);
  }
  std::sort(mem.begin(), mem.end());
  mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
  r.members = std::move(mem);
  r.gens = greedy_gens(r.ambient, r.members, Kprime);
  return r;
}

GammaStructure gamma_structure(const TwistSetup& S, const GammaGroup& gamma, const Subgroup& Kp) {
  GammaStructure st;
  const auto& amb = gamma.ambient;
  auto ppart = [&](const LinearChar& nu) {
    LinearChar r = nu;
    for (int x : gamma.K.members) r.val[x] = rou_qpart(nu.val[x], S.p);
    return r;
  };
  // Gamma^0_K: restrictions of Lin(G) to K that are trivial on N and have trivial p-part
  std::set<int> comp;
  for (size_t i = 0; i < amb.size(); ++i) {
    bool pfree = true;
    for (int x : gamma.K.members)
      if (!rou_qpart(amb[i].val[x], S.p).is_one()) {
        pfree = false;
        break;
      }
    if (!pfree) continue;
    for (const auto& eps : S.linG)
      if (eps.same_on(amb[i], gamma.K)) {
        comp.insert(static_cast<int>(i));
        break;
      }
  }
  std::set<int> pp;
  for (int id : gamma.members) {
    int j = gamma.find(ppart(amb[id]));
    if (j < 0) throw std::logic_error("p-part left Lin(K/N)");
    pp.insert(j);
  }
  st.complement.assign(comp.begin(), comp.end());
  st.p_part.assign(pp.begin(), pp.end());
  // split: every product of the two factors lies in Gamma, the factors meet trivially,
  // and the orders multiply to |Gamma|
  bool ok = true;
  std::set<int> prod;
  for (int a : st.complement)
    for (int b : st.p_part) {
      int j = gamma.find(amb[a] * amb[b]);
      prod.insert(j);
    }
  std::vector<int> pv(prod.begin(), prod.end());
  ok = ok && pv == gamma.members;
  int inter = 0;
  for (int a : st.complement) inter += pp.count(a) ? 1 : 0;
  ok = ok && inter == 1;
  ok = ok && st.complement.size() * st.p_part.size() == gamma.members.size();
  st.splits = ok;
  GammaGroup pg;
  pg.K = gamma.K;
  pg.ambient = gamma.ambient;
  pg.members = st.p_part;
  st.restricted = gamma_restrict(S, gamma, Kp);
  GammaGroup pres = gamma_restrict(S, pg, Kp);
  st.injective = pres.members.size() == st.p_part.size() && pres.members == st.restricted.members;
  return st;
}

bool lies_over(const TwistClass& lam, const TwistClass& theta_cls) {
  const auto& rep = character_table(lam.H)->irr[lam.rep];
  Character res = restrict_char(rep, theta_cls.H);
  auto TN = character_table(theta_cls.H);
  for (int m : theta_cls.members)
    if (!inner_product(res, TN->irr[m]).is_zero()) return true;
  return false;
}

std::vector<int> classes_over(const std::vector<TwistClass>& classes_of_H, const TwistClass& theta_cls) {
  std::vector<int> out;
  for (size_t i = 0; i < classes_of_H.size(); ++i)
    if (lies_over(classes_of_H[i], theta_cls)) out.push_back(static_cast<int>(i));
  return out;
}

int twist_induce(const TwistClass& from, const Subgroup& to, const std::vector<TwistClass>& to_classes) {
  const auto& rep = character_table(from.H)->irr[from.rep];
  Character ind = induce(rep, to);
  if (inner_product(ind, ind) != Cyclotomic(1)) return -1;
  int idx = character_table(to)->index_of(ind);
  if (idx < 0) return -1;
  return class_containing(to_classes, idx);
}

}  // namespace tz
