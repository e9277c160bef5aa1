#include "twistzeta/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace tz {

namespace {

uint64_t mix(uint64_t seed, const std::string& tag) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : tag) h = (h ^ c) * 1099511628211ull;
  return h ^ (seed * 0x9e3779b97f4a7c15ull);
}

struct Tally {
  CheckResult r;
  Tally(std::string name, std::string entry, int criterion) {
    r.name = std::move(name);
    r.entry = std::move(entry);
    r.criterion = criterion;
  }
  void check(bool ok, const std::string& where) {
    ++r.samples;
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = where;
    }
  }
  void require_samples(long min) {
    if (r.samples < min && r.passed) {
      r.passed = false;
      r.counterexample = "only " + std::to_string(r.samples) + " samples, need " + std::to_string(min);
    }
  }
};

std::string cls_name(int i) { return "class " + std::to_string(i); }

Cocycle1 with_gamma_noise(Cocycle1 c, std::mt19937_64& rng) {
  const auto& m = *c.mod;
  int np = m.points.Q->order();
  for (auto& row : c.val) {
    int id = m.gamma.members[rng() % m.gamma.members.size()];
    for (int x = 0; x < np; ++x) row[x] *= Cyclotomic(m.gamma.ambient[id].val[m.points.rep[x]]);
  }
  return c;
}

Cocycle1 random_coboundary(const std::shared_ptr<const H1Module>& m, std::mt19937_64& rng, long M) {
  std::vector<Cyclotomic> om;
  for (int x = 0; x < m->points.Q->order(); ++x) om.emplace_back(RootOfUnity(M, static_cast<long>(rng() % M)));
  return coboundary1(m, om);
}

// g -> constant function chi(g)
Cocycle1 constant_hom_cocycle(const std::shared_ptr<const H1Module>& m, const LinearChar& chi) {
  int nb = static_cast<int>(m->act.size()), np = m->points.Q->order();
  Cocycle1 c{m, std::vector<std::vector<Cyclotomic>>(nb, std::vector<Cyclotomic>(np))};
  for (int g = 0; g < nb; ++g)
    for (int x = 0; x < np; ++x) c.val[g][x] = Cyclotomic(chi.val[m->base_q.rep[g]]);
  return c;
}

void orthogonality(Tally& t, const CharacterTable& T, const std::string& label) {
  long sum = 0;
  for (const auto& c : T.irr) sum += c.degree() * c.degree();
  t.check(sum == T.S.size(), label + ": sum of squared degrees " + std::to_string(sum));
  for (size_t i = 0; i < T.irr.size(); ++i)
    for (size_t j = 0; j < T.irr.size(); ++j)
      t.check(inner_product(T.irr[i], T.irr[j]) == Cyclotomic(i == j ? 1L : 0L),
              label + ": rows " + std::to_string(i) + "," + std::to_string(j));
  for (size_t a = 0; a < T.class_reps.size(); ++a)
    for (size_t b = 0; b < T.class_reps.size(); ++b) {
      Cyclotomic acc;
      for (const auto& c : T.irr) acc += c(T.class_reps[a]) * c(T.class_reps[b]).conj();
      t.check(acc == Cyclotomic(a == b ? static_cast<long>(T.S.size() / T.class_sizes[a]) : 0L),
              label + ": columns " + std::to_string(a) + "," + std::to_string(b));
    }
}

std::string subgroup_label(const std::string& role, const Subgroup& H) {
  return role + " (order " + std::to_string(H.size()) + ")";
}

template <class F>
void parallel_for(int count, int jobs, F&& body) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(jobs, count); ++w)
    pool.emplace_back([&] {
      for (int i; (i = next++) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

Cocycle2 central_sign_factor_set(const GroupPtr& G) {
  auto Z = center(G);
  if (Z.size() != 2) throw std::invalid_argument("centre must have order 2");
  auto q = quotient_group(whole_group(G), Z);
  int n = q.Q->order();
  Cocycle2 a{q.Q, std::vector<std::vector<Cyclotomic>>(n, std::vector<Cyclotomic>(n))};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int z = G->mul(G->mul(q.rep[x], q.rep[y]), G->inv(q.rep[q.Q->mul(x, y)]));
      a.val[x][y] = Cyclotomic(z == 0 ? 1L : -1L);
    }
  return a;
}

CheckResult check_cocycle_identity(const Cocycle2& a, const std::string& entry) {
  Tally t("cocycle_identity", entry, 7);
  auto bad = cocycle_violation(a);
  std::string where;
  if (bad) {
    auto [x, y, z] = *bad;
    where = z < 0 ? "zero value at (" + std::to_string(x) + "," + std::to_string(y) + ")"
                  : "triple (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
  }
  t.check(!bad, where);
  return t.r;
}

std::vector<CheckResult> verify_setup(const TwistSetup& S, const std::string& entry, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const auto& G = *S.G;
  auto ncl = twist_classes(S.N, S.linG);
  const int nc = static_cast<int>(ncl.size());
  std::vector<ClassInvariants> inv;
  for (const auto& tc : ncl) inv.push_back(class_invariants(S, tc));
  auto same_level = [&](int i, int j) {
    return inv[i].st.L == inv[j].st.L && inv[i].st.K == inv[j].st.K && inv[i].gamma == inv[j].gamma;
  };

  // 1 and 6: assembly against the oracle, f~ within buckets
  {
    ZetaOptions zo;
    zo.check_members = true;
    auto Z = assemble_twist_zeta(S, zo);
    Tally t("assembly_oracle", entry, 1);
    t.check(Z.integral, "assembly left a non-integral coefficient");
    t.check(Z.partition_ok, "bucket partials sum to " + Z.n_series.str());
    t.check(Z.agree, "assembled " + Z.assembled.str() + " vs brute " + Z.brute.str());
    out.push_back(t.r);
    Tally j("f_tilde_within_buckets", entry, 6);
    for (size_t b = 0; b < Z.buckets.size(); ++b) {
      const auto& bk = Z.buckets[b];
      for (size_t x = 0; x < bk.member_f.size(); ++x)
        for (size_t y = x + 1; y < bk.member_f.size(); ++y)
          j.check(bk.member_f[x] == bk.member_f[y], "bucket " + std::to_string(b) + ": " + cls_name(bk.classes[x]) +
                                                        " gives " + bk.member_f[x].str() + ", " +
                                                        cls_name(bk.classes[y]) + " gives " + bk.member_f[y].str());
      j.check(bk.f_agrees, "bucket " + std::to_string(b) + ": representative f~ differs");
    }
    out.push_back(j.r);
  }

  // 2: character tables
  {
    std::vector<std::pair<std::string, Subgroup>> groups{{"G", S.all}, {"N", S.N}};
    std::set<std::vector<int>> seen{S.all.members, S.N.members};
    for (const auto& ci : inv)
      for (const auto& [role, H] : {std::pair<std::string, Subgroup>{"L", ci.st.L}, {"K", ci.st.K}})
        if (seen.insert(H.members).second) groups.push_back({role, H});
    Tally o("character_orthogonality", entry, 2);
    Tally e("character_engines_agree", entry, 2);
    for (const auto& [role, H] : groups) {
      auto label = subgroup_label(role, H);
      auto T = character_table(H);
      orthogonality(o, *T, label);
      if (is_nilpotent(embed(H).H)) {
        auto M = character_table(H, CharEngine::Monomial);
        bool same = M->irr.size() == T->irr.size();
        for (size_t i = 0; same && i < T->irr.size(); ++i) same = M->irr[i] == T->irr[i];
        e.check(same, label + ": Dixon and monomial tables differ");
      }
    }
    e.require_samples(1);
    out.push_back(o.r);
    out.push_back(e.r);
  }

  // 3: twist induction from L is a bijection onto the classes of G over the orbit
  {
    Tally t("twist_induction_bijection", entry, 3);
    auto gcl = twist_classes(S.all, S.linG);
    for (int i = 0; i < nc; ++i) {
      auto lcl = twist_classes(inv[i].st.L, S.linG);
      auto over_l = classes_over(lcl, ncl[i]);
      auto over_g = classes_over(gcl, ncl[i]);
      std::set<int> image;
      bool defined = true;
      for (int l : over_l) {
        int g = twist_induce(lcl[l], S.all, gcl);
        if (g < 0) defined = false;
        image.insert(g);
      }
      t.check(defined, cls_name(i) + ": induction from L is reducible");
      t.check(image.size() == over_l.size(), cls_name(i) + ": induction is not injective");
      t.check(image == std::set<int>(over_g.begin(), over_g.end()), cls_name(i) + ": induction is not onto");
    }
    out.push_back(t.r);
  }

  // 4: C and T do not depend on the choices made
  {
    Tally t("invariants_choice_independent", entry, 4);
    std::mt19937_64 rng(mix(opt.seed, entry + "/choices"));
    for (int i = 0; i < nc; ++i) {
      const auto& base = inv[i];
      auto same = [&](const ClassInvariants& o, const std::string& what) {
        bool ok = o.st.K == base.st.K && o.st.L == base.st.L && o.gamma == base.gamma && h2_equal(o.C, base.C);
        t.check(ok && t_equal(base, o), cls_name(i) + ": " + what);
      };
      for (int m : ncl[i].members) same(class_invariants(S, ncl[i], {m, ExtRoute::Monomial, 0, 0}),
                                        "member " + std::to_string(m));
      same(class_invariants(S, ncl[i], {-1, ExtRoute::Matrix, 0, 0}), "matrix route");
      for (int k = 0; k < 2; ++k) {
        uint64_t s = 1 + rng() % 1000;
        same(class_invariants(S, ncl[i], {-1, ExtRoute::Monomial, s, 0}), "transversal seed " + std::to_string(s));
        same(class_invariants(S, ncl[i], {-1, ExtRoute::Monomial, 0, s}), "psi reselection " + std::to_string(s));
      }
    }
    out.push_back(t.r);
  }

  // 5: Sylow reductions
  {
    Tally q("q_restriction_coboundary", entry, 5);
    Tally f("sylow_determines_full_level", entry, 5);
    Tally g("gamma_splits", entry, 5);
    Tally r("crt_full_level", entry, 5);
    std::vector<FullLevelData> full;
    for (int i = 0; i < nc; ++i) {
      full.push_back(full_level(S, inv[i]));
      long idx = inv[i].st.L.size() / S.N.size();
      for (long p : prime_factors(idx))
        if (p != S.p) q.check(q_restriction_trivial(inv[i], full.back(), p), cls_name(i) + ": q = " + std::to_string(p));
      auto st = gamma_structure(S, inv[i].gamma, inv[i].Kp);
      g.check(st.splits, cls_name(i) + ": Gamma does not split");
      g.check(st.injective, cls_name(i) + ": restriction to K_p is not injective on the p-part");
      g.check(st.restricted == inv[i].gamma_p, cls_name(i) + ": restricted Gamma differs from Gamma_p");
      g.check(gamma_via_predicates(S, inv[i]) == inv[i].gamma_p.members, cls_name(i) + ": predicate Gamma differs");
    }
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) {
        if (!same_level(i, j)) continue;
        std::string pair = cls_name(i) + " vs " + std::to_string(j);
        bool sylow_c = h2_equal(inv[i].C, inv[j].C);
        f.check(sylow_c == h2_equal(full[i].C, full[j].C), pair + ": C at K and at K_p disagree");
        if (!sylow_c) continue;
        bool sylow_t = t_equal(inv[i], inv[j]);
        auto v = t_equal_full(inv[i], full[i], inv[j], full[j]);
        f.check(v.exact == sylow_t, pair + ": full-level T verdict differs from the Sylow verdict");
        if (v.lattice) f.check(*v.lattice == v.exact, pair + ": composite-modulus lattice verdict differs");
        if (v.crt) r.check(*v.crt == v.exact && (!sylow_t || *v.crt), pair + ": CRT verdict differs");
      }
    out.push_back(q.r);
    out.push_back(f.r);
    out.push_back(g.r);
    out.push_back(r.r);
  }

  // 7: lattice headroom on the actual tokens
  {
    Tally t("token_headroom_stability", entry, 7);
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) {
        if (!same_level(i, j) || !h2_equal(inv[i].C, inv[j].C)) continue;
        bool direct = t_equal(inv[i], inv[j]);
        std::string pair = cls_name(i) + " vs " + std::to_string(j);
        t.check(t_equal_lattice(inv[i], inv[j], opt.headroom - 1) == direct, pair + ": lattice at base headroom");
        t.check(t_equal_lattice(inv[i], inv[j], opt.headroom) == direct, pair + ": lattice at raised headroom");
      }
    out.push_back(t.r);
  }

  // 8: predicate layer
  {
    Tally a("predicate_A_membership", entry, 8);
    Tally h("conjugated_chi_hat_closed_form", entry, 8);
    std::mt19937_64 rng(mix(opt.seed, entry + "/predA"));
    while (a.r.samples < opt.pred_samples) {
      for (int c = 0; c < nc; ++c) {
        const auto& ci = inv[c];
        const auto& td = ci.td;
        for (int s = 0; s < 20; ++s) {
          int i = static_cast<int>(rng() % td.uprime), j = static_cast<int>(rng() % td.u);
          int n = i < td.u ? S.N.members[rng() % S.N.size()] : 0;
          int n2 = S.N.members[rng() % S.N.size()];
          int z = G.mul(td.y[i], n);
          bool direct = conjugate_subgroup(ci.pair.H, z).contains(G.mul(td.y[j], n2));
          bool pred = pred_A(ci.pair, td, i, j, n, n2);
          std::ostringstream where;
          where << cls_name(c) << ": (i,j,n,n')=(" << i << "," << j << "," << n << "," << n2 << ")";
          a.check(direct == pred, where.str());
          if (pred && i < td.u) {
            int arg = G.mul(G.mul(G.inv(z), G.mul(td.y[j], n2)), z);
            h.check(conj_chi_hat(ci.pair, td, i, j, n, n2) ==
                        chi_hat_at(ci.pair, td, td.coset_of[arg], td.coset_n[arg]),
                    where.str());
          }
        }
      }
    }
    out.push_back(a.r);
    out.push_back(h.r);

    Tally l("linearised_t_equal", entry, 8);
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) {
        if (!same_level(i, j) || !h2_equal(inv[i].C, inv[j].C)) continue;
        l.check(t_equal_linearised(S, inv[i], inv[j]) == t_equal(inv[i], inv[j]),
                cls_name(i) + " vs " + std::to_string(j));
      }
    // planted targets: coboundary twists must be accepted, homomorphism twists decided alike
    std::mt19937_64 prng(mix(opt.seed, entry + "/planted"));
    for (int c = 0; c < nc; ++c) {
      const auto& ci = inv[c];
      auto mod = ci.mu_p.mod;
      for (long M : {S.p * S.p, 6L}) {
        auto t = with_gamma_noise(ci.mu_p * random_coboundary(mod, prng, M), prng);
        l.check(t_class_direct(ci, t) && t_class_linearised(S, ci, t),
                cls_name(c) + ": planted coboundary mod " + std::to_string(M));
      }
      for (const auto& chi : linear_characters_mod(ci.Lp, S.N)) {
        auto t = ci.mu_p * constant_hom_cocycle(mod, chi);
        l.check(t_class_direct(ci, t) == t_class_linearised(S, ci, t),
                cls_name(c) + ": planted homomorphism " + std::to_string(chi.id));
      }
    }
    out.push_back(l.r);
  }
  return out;
}

std::vector<CheckResult> verify_cohomology_engines(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(mix(opt.seed, "cohomology"));
  const std::string fx = "fixtures";

  std::vector<std::shared_ptr<const H1Module>> mods;
  std::vector<GroupPtr> bases;
  {
    auto S4 = make_symmetric(4);
    auto all = whole_group(S4);
    auto V4 = derived_subgroup(derived_subgroup(all));
    auto S = make_setup(S4, V4, 2);
    mods.push_back(make_h1_module(all, all, V4, gamma_group(S, S.linG[0].as_character(), all)));
    mods.push_back(make_h1_module(all, all, V4, gamma_from_members(S, all, {0})));
  }
  for (const auto& name : corpus_names()) {
    auto e = corpus_entry(name);
    auto S = make_setup(e.G, e.N, e.p);
    mods.push_back(make_h1_module(S.all, S.all, S.N, gamma_group(S, S.linG[0].as_character(), S.all)));
    bases.push_back(quotient_group(S.all, S.N).Q);
    bases.push_back(e.G);
  }

  {
    Tally t("coboundary_certificates_trivial", fx, 7);
    for (const auto& Q : bases) {
      if (Q->order() > 16) continue;
      int n = Q->order();
      for (int trial = 0; trial < opt.coboundary_trials; ++trial) {
        std::vector<Cyclotomic> beta;
        for (int x = 0; x < n; ++x) {
          static const long kMods[] = {1, 2, 3, 4, 6, 12};
          long M = kMods[rng() % 6];
          Cyclotomic w(RootOfUnity(M, static_cast<long>(rng() % M)));
          if (trial % 2) w = w * Rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 7));
          beta.push_back(w);
        }
        t.check(h2_trivial(h2_certificate(coboundary2(Q, beta))),
                "group of order " + std::to_string(n) + ", trial " + std::to_string(trial));
      }
    }
    out.push_back(t.r);
  }
  {
    Tally t("klein_four_multiplier", fx, 7);
    auto V4 = make_direct_product(make_cyclic(2), make_cyclic(2));
    t.check(h2_basis(V4)->orders == std::vector<long>{2}, "C2 x C2 multiplier is not a single order-2 generator");
    for (auto [name, Gp] : {std::pair<std::string, GroupPtr>{"Q8", make_quaternion8()}, {"D4", make_dihedral(4)}}) {
      auto a = central_sign_factor_set(Gp);
      auto cert = h2_certificate(a);
      t.check(cert.evals.size() == 1 && cert.evals[0] == Cyclotomic(-1L), name + " central extension does not evaluate to -1");
    }
    out.push_back(t.r);
  }
  {
    // negative fixture: a corrupted factor set must be caught with a located triple
    Tally t("corrupted_cocycle_located", fx, 7);
    auto a = central_sign_factor_set(make_quaternion8());
    t.check(check_cocycle_identity(a, fx).passed, "valid factor set rejected");
    a.val[1][2] = a.val[1][2] * Cyclotomic(RootOfUnity(4, 1));
    auto r = check_cocycle_identity(a, fx);
    t.check(!r.passed && r.counterexample.rfind("triple", 0) == 0, "corruption not located");
    out.push_back(t.r);
  }
  {
    Tally t("lattice_matches_exhaustive", fx, 7);
    for (const auto& m : mods) {
      if (m->points.Q->order() > 6) continue;
      int nb = static_cast<int>(m->act.size()), np = m->points.Q->order();
      auto lin = linear_characters(m->base);
      long E = 1;
      for (const auto& a : m->gamma.ambient)
        for (int x = 0; x < np; ++x) E = lcm_l(E, a.val[m->points.rep[x]].order());
      for (long Mp : {2L, 4L}) {
        if (Mp % E != 0) continue;
        for (int trial = 0; trial < 6; ++trial) {
          auto c = random_coboundary(m, rng, Mp);
          if (m->gamma.members.size() > 1) c = with_gamma_noise(c, rng);
          const auto& chi = lin[rng() % lin.size()];
          bool fits = true;
          for (int g = 0; g < nb; ++g)
            if (Mp % chi.val[m->base_q.rep[g]].order() != 0) fits = false;
          if (fits && trial % 2 == 0) c = c * constant_hom_cocycle(m, chi);
          if (!check_cocycle(c) || Mp % value_modulus(c) != 0) continue;
          auto lat = h1_lattice_solve_at(c, Mp);
          auto ex = h1_exhaustive_solve(c, Mp);
          t.check(lat.witness.has_value() == ex.has_value(),
                  "module with " + std::to_string(np) + " points, M' = " + std::to_string(Mp));
        }
      }
    }
    t.require_samples(20);
    out.push_back(t.r);
  }
  {
    Tally t("headroom_stability", fx, 7);
    for (const auto& m : mods) {
      auto lin = linear_characters(m->base);
      for (int trial = 0; trial < 6; ++trial) {
        auto c = random_coboundary(m, rng, 6);
        if (m->gamma.members.size() > 1) c = with_gamma_noise(c, rng);
        if (trial % 2 == 0) c = c * constant_hom_cocycle(m, lin[rng() % lin.size()]);
        if (!check_cocycle(c)) continue;
        bool exact = h1_exact_solve(c).has_value();
        std::string where = "module with " + std::to_string(m->points.Q->order()) + " points, trial " + std::to_string(trial);
        t.check(h1_lattice_solve(c, opt.headroom - 1).witness.has_value() == exact, where);
        t.check(h1_lattice_solve(c, opt.headroom).witness.has_value() == exact, where);
      }
    }
    out.push_back(t.r);
  }
  return out;
}

std::vector<CheckResult> verify_corpus(const std::vector<std::string>& names, const VerifyOptions& opt) {
  std::vector<std::vector<CheckResult>> per(names.size() + 1);
  VerifyOptions inner = opt;
  inner.jobs = 1;
  parallel_for(static_cast<int>(per.size()), opt.jobs, [&](int i) {
    if (i == static_cast<int>(names.size())) {
      per[i] = verify_cohomology_engines(inner);
      return;
    }
    auto e = corpus_entry(names[i]);
    per[i] = verify_setup(make_setup(e.G, e.N, e.p), names[i], inner);
  });
  std::vector<CheckResult> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace tz
