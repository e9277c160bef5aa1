#include <random>
#include <set>

#include "doctest.h"
#include "twistzeta/chars.hpp"
#include "twistzeta/corpus.hpp"

using namespace tz;

namespace {

std::multiset<long> degrees(const CharacterTable& T) {
  std::multiset<long> d;
  for (const auto& c : T.irr) d.insert(c.degree());
  return d;
}

void check_orthogonality(const CharacterTable& T) {
  long sum = 0;
  for (const auto& c : T.irr) sum += c.degree() * c.degree();
  CHECK(sum == T.S.size());
  for (size_t i = 0; i < T.irr.size(); ++i)
    for (size_t j = 0; j < T.irr.size(); ++j)
      CHECK(inner_product(T.irr[i], T.irr[j]) == Cyclotomic(i == j ? 1 : 0));
  // column orthogonality: sum_chi chi(g) conj chi(h) = |C(g)| [g ~ h]
  for (size_t a = 0; a < T.class_reps.size(); ++a)
    for (size_t b = 0; b < T.class_reps.size(); ++b) {
      Cyclotomic acc;
      for (const auto& c : T.irr) acc += c(T.class_reps[a]) * c(T.class_reps[b]).conj();
      CHECK(acc == Cyclotomic(a == b ? T.S.size() / T.class_sizes[a] : 0));
    }
}

}  // namespace

TEST_CASE("small character tables") {
  auto S3 = make_symmetric(3);
  CHECK(degrees(*character_table(whole_group(S3))) == std::multiset<long>{1, 1, 2});
  auto C4 = make_cyclic(4);
  auto T4 = character_table(whole_group(C4));
  CHECK(degrees(*T4) == std::multiset<long>{1, 1, 1, 1});
  for (const auto& c : T4->irr)
    for (int x = 0; x < 4; ++x) CHECK(c(x).as_root_of_unity().has_value());
  CHECK(degrees(*character_table(whole_group(make_quaternion8()))) == std::multiset<long>{1, 1, 1, 1, 2});
  CHECK(character_table(whole_group(S3))->irr[0].degree() == 1);
}

TEST_CASE("orthogonality and engine agreement on the corpus") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto e = corpus_entry(name);
    auto T = character_table(whole_group(e.G));
    check_orthogonality(*T);
    check_orthogonality(*character_table(e.N));
    if (is_nilpotent(e.G)) {
      auto M = character_table(whole_group(e.G), CharEngine::Monomial);
      REQUIRE(M->irr.size() == T->irr.size());
      for (size_t i = 0; i < T->irr.size(); ++i) CHECK(M->irr[i] == T->irr[i]);
    }
  }
  auto S4 = make_symmetric(4);
  check_orthogonality(*character_table(whole_group(S4)));
  CHECK(character_table(whole_group(S4))->irr.size() == 5);
}

TEST_CASE("linear characters") {
  auto Q = make_quaternion8();
  auto lin = linear_characters(whole_group(Q));
  CHECK(lin.size() == 4);
  auto Z = center(Q);
  for (const auto& l : lin)
    for (int z : Z.members) CHECK(l(z).is_one());
  CHECK(linear_characters(whole_group(make_symmetric(3))).size() == 2);
  CHECK(linear_characters(whole_group(make_cyclic(6))).size() == 6);
  auto H = make_heisenberg27();
  auto lh = linear_characters(whole_group(H));
  CHECK(lh.size() == 9);
  for (const auto& a : lh)
    for (int x = 0; x < 27; ++x)
      for (int y = 0; y < 27; ++y) REQUIRE(a(H->mul(x, y)) == a(x) * a(y));
  CHECK(lh[0].is_trivial());
  auto e = corpus_entry("sl23");
  CHECK(linear_characters_mod(whole_group(e.G), e.N).size() == 3);
}

TEST_CASE("induction, restriction and reciprocity") {
  auto S3 = make_symmetric(3);
  auto e = corpus_entry("s3_a3");
  auto lin = linear_characters(e.N);
  auto ind = induce(lin[1].as_character(), whole_group(S3));
  CHECK(ind.degree() == 2);
  CHECK(inner_product(ind, ind) == Cyclotomic(1));
  auto triv = induce(lin[0].as_character(), whole_group(S3));
  CHECK(triv.degree() == 2);
  for (const auto& name : corpus_names()) {
    auto c = corpus_entry(name);
    auto TG = character_table(whole_group(c.G));
    auto TN = character_table(c.N);
    for (const auto& rho : TG->irr)
      for (const auto& th : TN->irr)
        CHECK(inner_product(induce(th, whole_group(c.G)), rho) == inner_product(th, restrict_char(rho, c.N)));
  }
}

TEST_CASE("conjugation is an action") {
  for (const auto& name : corpus_names()) {
    auto c = corpus_entry(name);
    const auto& G = *c.G;
    auto TN = character_table(c.N);
    for (const auto& th : TN->irr) {
      for (int n : c.N.members) CHECK(conj_character(th, n) == th);
      for (int g = 0; g < G.order(); g += 3)
        for (int h = 0; h < G.order(); h += 5)
          CHECK(conj_character(conj_character(th, g), h) == conj_character(th, G.mul(h, g)));
    }
  }
}

TEST_CASE("monomial pairs") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto c = corpus_entry(name);
    if (!is_p_group(c.N, c.p)) continue;
    for (const auto& th : character_table(c.N)->irr) {
      auto mp = monomial_pair(th, c.N, c.N);
      CHECK(check_monomial_pair(mp, c.N, c.N));
      CHECK(c.N.size() / mp.NH.size() == th.degree());
      if (th.degree() == 1) CHECK(mp.H == c.N);
    }
  }
}

TEST_CASE("extension test against enumeration of Lin(G)") {
  SUBCASE("quaternion over centre") {
    auto c = corpus_entry("q8");
    auto G = whole_group(c.G);
    auto td = transversal_data(c.N, c.N, G, c.N);
    for (const auto& tau : linear_characters(c.N)) {
      bool ext = lin_extension_test(tau, {RootOfUnity()}, td, 2);
      CHECK(ext == tau.is_trivial());
    }
  }
  SUBCASE("C4 over C2") {
    auto c = corpus_entry("c4_c2");
    auto td = transversal_data(c.N, c.N, whole_group(c.G), c.N);
    for (const auto& tau : linear_characters(c.N)) CHECK(lin_extension_test(tau, {RootOfUnity()}, td, 2));
  }
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto c = corpus_entry(name);
    auto G = whole_group(c.G);
    Subgroup Kp = sylow_over(c.N, G, c.p);
    auto td = transversal_data(c.N, Kp, Kp, Kp);
    auto linG = linear_characters(G);
    std::mt19937_64 rng(5);
    for (const auto& tau : linear_characters(c.N)) {
      // sigma from genuine extensions, then random perturbations
      std::vector<std::vector<RootOfUnity>> trials;
      for (const auto& psi : linG) {
        std::vector<RootOfUnity> s;
        for (int i = 0; i < td.u; ++i) s.push_back(rou_qpart(psi(td.y[i]), c.p));
        trials.push_back(s);
      }
      for (int r = 0; r < 4 && td.u > 1; ++r) {
        auto s = trials[rng() % trials.size()];
        s[1 + rng() % (td.u - 1)] = s[1] * RootOfUnity(c.p, 1);
        trials.push_back(s);
      }
      for (const auto& s : trials) {
        bool expect = false;
        for (const auto& psi : linG) {
          bool ok = true;
          for (int n : c.N.members) ok = ok && rou_qpart(psi(n), c.p) == tau(n);
          for (int i = 0; i < td.u && ok; ++i) ok = rou_qpart(psi(td.y[i]), c.p) == s[i];
          if (ok) expect = true;
        }
        bool ptau = true;
        for (int n : c.N.members) ptau = ptau && rou_qpart(tau(n), c.p) == tau(n);
        if (!ptau) continue;
        CHECK(lin_extension_test(tau, s, td, c.p) == expect);
      }
    }
  }
}
