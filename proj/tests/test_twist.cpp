#include <set>

#include "doctest.h"
#include "twistzeta/corpus.hpp"
#include "twistzeta/twist.hpp"

using namespace tz;

namespace {

std::multiset<size_t> class_sizes(const std::vector<TwistClass>& cl) {
  std::multiset<size_t> s;
  for (const auto& c : cl) s.insert(c.members.size());
  return s;
}

TwistSetup setup_of(const std::string& name) {
  auto e = corpus_entry(name);
  return make_setup(e.G, e.N, e.p);
}

// twist classes of N met by Res_N of the representative of lam
std::set<int> classes_under(const TwistSetup& S, const std::vector<TwistClass>& ncl, const TwistClass& lam) {
  Character res = restrict_char(character_table(lam.H)->irr[lam.rep], S.N);
  std::set<int> out;
  for (size_t i = 0; i < S.irrN->irr.size(); ++i)
    if (!inner_product(res, S.irrN->irr[i]).is_zero()) out.insert(class_containing(ncl, static_cast<int>(i)));
  return out;
}

}  // namespace

TEST_CASE("twist classes of small groups") {
  auto Q8 = make_quaternion8();
  auto all = whole_group(Q8);
  auto lin = linear_characters(all);
  auto cl = twist_classes(all, lin);
  CHECK(class_sizes(cl) == std::multiset<size_t>{1, 4});
  for (const auto& c : cl) CHECK(c.rep == c.members.front());

  auto zc = twist_classes(center(Q8), lin);
  CHECK(class_sizes(zc) == std::multiset<size_t>{1, 1});

  auto C4 = make_cyclic(4);
  auto c2 = subgroup_closure(C4, {2});
  auto cc = twist_classes(c2, linear_characters(whole_group(C4)));
  REQUIRE(cc.size() == 1);
  CHECK(cc[0].members.size() == 2);
}

TEST_CASE("setup validation") {
  auto S3 = make_symmetric(3);
  auto all = whole_group(S3);
  Subgroup notnormal;
  for (int g = 1; g < S3->order(); ++g)
    if (S3->elem_order(g) == 2) {
      notnormal = subgroup_closure(S3, {g});
      break;
    }
  try {
    make_setup(S3, notnormal, 2);
    FAIL("expected N_NOT_NORMAL");
  } catch (const InputError& e) {
    CHECK(e.code == "N_NOT_NORMAL");
  }
  auto a3 = derived_subgroup(all);
  try {
    make_setup(S3, a3, 2);
    FAIL("expected N_NOT_P_GROUP");
  } catch (const InputError& e) {
    CHECK(e.code == "N_NOT_P_GROUP");
  }
  CHECK_NOTHROW(make_setup(S3, a3, 3));
  CHECK_THROWS_AS(make_setup(S3, a3, 4), InputError);
}

TEST_CASE("stabilizers across the corpus") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto S = setup_of(name);
    auto ncl = twist_classes(S.N, S.linG);
    for (const auto& tc : ncl) {
      auto st = stabilizers(S, tc);
      CHECK(is_subset(st.K, st.L));
      CHECK(normalizes(st.L, st.K));
      CHECK(is_subset(S.N, st.K));
      for (int m : tc.members) CHECK(stabilizers_for(S, tc, m).K == st.K);
      const auto& theta = S.irrN->irr[tc.rep];
      if (theta.degree() == 1 && S.N.size() > 1) {
        bool central = true;
        for (int n : S.N.members)
          for (int g = 0; g < S.G->order(); ++g)
            if (S.G->mul(g, n) != S.G->mul(n, g)) central = false;
        if (central) {
          CHECK(st.K == S.all);
          CHECK(st.L == S.all);
        }
      }
      if (tc.rep == 0) {
        CHECK(st.K == S.all);
        CHECK(st.L == S.all);
      }
      // psi_for exists exactly on L, and is trivial on N for g in K
      for (int g = 0; g < S.G->order(); ++g) {
        auto psi = psi_for(S, theta, g);
        CHECK(psi.has_value() == st.L.contains(g));
        if (psi && st.K.contains(g)) CHECK(*psi == 0);
        if (psi) {
          Character lhs = conj_character(theta, g);
          CHECK(lhs == twist_by(theta, S.linG[*psi].restrict_to(S.N)));
          auto alt = psi_for(S, theta, g, 17);
          REQUIRE(alt.has_value());
          CHECK(conj_character(theta, g) == twist_by(theta, S.linG[*alt].restrict_to(S.N)));
        }
      }
    }
  }
}

// The two characters of V4 moved by D4 differ by a restricted linear character of D4,
// so they share a twist class: K has index two while L is all of G.
TEST_CASE("normal Klein four in D4 has an index-two stabilizer") {
  auto S = setup_of("d4_v4");
  auto ncl = twist_classes(S.N, S.linG);
  int hits = 0;
  for (const auto& tc : ncl) {
    auto st = stabilizers(S, tc);
    if (st.K.size() * 2 == S.G->order()) {
      CHECK(tc.members.size() == 2);
      CHECK(st.L == S.all);
      ++hits;
    }
  }
  CHECK(hits > 0);
}

TEST_CASE("gamma group for trivial theta") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto S = setup_of(name);
    auto one = S.linG[0].as_character();
    auto g = gamma_group(S, one, S.all);
    CHECK(g.members.size() == linear_characters_mod(S.all, S.N).size());
    auto n = gamma_group(S, restrict_char(one, S.N), S.N);
    CHECK(n.members == std::vector<int>{0});
    auto Kp = sylow_over(S.N, S.all, S.p);
    auto st = gamma_structure(S, g, Kp);
    CHECK(st.splits);
    CHECK(st.injective);
    CHECK(st.complement.size() * st.p_part.size() == g.members.size());
    if (is_p_group(S.all, S.p)) {
      CHECK(st.complement == std::vector<int>{0});
      CHECK(st.p_part == g.members);
    }
  }
}

TEST_CASE("gamma structure on SL(2,3) over Q8") {
  auto S = setup_of("sl23");
  auto one = S.linG[0].as_character();
  auto g = gamma_group(S, one, S.all);
  CHECK(g.members.size() == 3);
  auto Kp = sylow_over(S.N, S.all, 2);
  CHECK(Kp == S.N);
  auto st = gamma_structure(S, g, Kp);
  CHECK(st.complement.size() == 3);
  CHECK(st.p_part.size() == 1);
  CHECK(st.restricted.members.size() == 1);
  CHECK(st.splits);
  CHECK(st.injective);
}

TEST_CASE("Clifford restriction and twist induction") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto S = setup_of(name);
    auto ncl = twist_classes(S.N, S.linG);
    auto gcl = twist_classes(S.all, S.linG);
    for (size_t t = 0; t < ncl.size(); ++t) {
      auto st = stabilizers(S, ncl[t]);
      auto lcl = twist_classes(st.L, S.linG);
      // G-orbit of the class
      std::set<int> orbit;
      for (int g = 0; g < S.G->order(); ++g)
        orbit.insert(class_containing(ncl, S.irrN->index_of(conj_character(S.irrN->irr[ncl[t].rep], g))));
      auto over_l = classes_over(lcl, ncl[t]);
      auto over_g = classes_over(gcl, ncl[t]);
      for (int i : over_l) CHECK(classes_under(S, ncl, lcl[i]) == std::set<int>{static_cast<int>(t)});
      for (int i : over_g) CHECK(classes_under(S, ncl, gcl[i]) == orbit);
      std::set<int> image;
      for (int i : over_l) {
        int j = twist_induce(lcl[i], S.all, gcl);
        REQUIRE(j >= 0);
        image.insert(j);
        CHECK(twist_induce(lcl[i], st.L, lcl) == i);
      }
      CHECK(image.size() == over_l.size());
      CHECK(image == std::set<int>(over_g.begin(), over_g.end()));
    }
  }
}

TEST_CASE("induction from the centre of Q8") {
  auto S = setup_of("q8");
  auto ncl = twist_classes(S.N, S.linG);
  auto gcl = twist_classes(S.all, S.linG);
  REQUIRE(ncl.size() == 2);
  const auto& nontriv = ncl[1];
  auto st = stabilizers(S, nontriv);
  CHECK(st.L == S.all);
  auto over = classes_over(gcl, nontriv);
  REQUIRE(over.size() == 1);
  CHECK(gcl[over[0]].degree == 2);
  CHECK(twist_induce(gcl[over[0]], S.all, gcl) == over[0]);
}
