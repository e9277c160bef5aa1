#include <chrono>

#include "doctest.h"
#include "twistzeta/corpus.hpp"
#include "twistzeta/zeta.hpp"

using namespace tz;

namespace {

DirichletPoly poly(std::initializer_list<std::pair<long, long>> t) {
  DirichletPoly d;
  for (auto [n, a] : t) d = d + DirichletPoly::term(n, a);
  return d;
}

TwistSetup setup_of(const std::string& name) {
  auto e = corpus_entry(name);
  return make_setup(e.G, e.N, e.p);
}

bool is_power_of(long n, long p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

TEST_CASE("Dirichlet polynomial arithmetic") {
  auto one = DirichletPoly::one();
  CHECK(one + DirichletPoly::term(2, 1) == poly({{1, 1}, {2, 1}}));
  CHECK(DirichletPoly::term(2, 1) * DirichletPoly::term(3, 1) == DirichletPoly::term(6, 1));
  CHECK(poly({{1, 1}, {3, 2}}).shift(3) == poly({{3, 1}, {9, 2}}));
  CHECK(poly({{1, 1}, {2, 3}}).scale(2) == poly({{1, 2}, {2, 6}}));
  CHECK(poly({{2, 1}}) + poly({{2, -1}}) == DirichletPoly{});
  CHECK(DirichletPoly{}.is_zero());
  CHECK(poly({{1, 1}, {3, 2}}).str() == "1 + 2*3^-s");
  CHECK(DirichletPoly{}.str() == "0");
  CHECK_THROWS(DirichletPoly::term(0, 1));
  CHECK_THROWS(one.shift(0));
  // convolution distributes over addition
  auto a = poly({{1, 2}, {2, 1}}), b = poly({{1, 1}, {3, 4}}), c = poly({{2, 5}});
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(a * b == b * a);
}

TEST_CASE("plain and twist zeta of small groups") {
  auto q8 = make_quaternion8();
  CHECK(rep_zeta(whole_group(q8)) == poly({{1, 4}, {2, 1}}));
  CHECK(rep_zeta(whole_group(make_symmetric(3))) == poly({{1, 2}, {2, 1}}));
  CHECK(rep_zeta(whole_group(make_cyclic(6))) == poly({{1, 6}}));
  CHECK(brute_twist_zeta(q8) == poly({{1, 1}, {2, 1}}));
  CHECK(brute_twist_zeta(make_cyclic(4)) == DirichletPoly::one());
  CHECK(brute_twist_zeta(make_dihedral(4)) == poly({{1, 1}, {2, 1}}));
  CHECK(brute_twist_zeta(make_heisenberg27()) == poly({{1, 1}, {3, 2}}));
}

TEST_CASE("f~ examples") {
  auto S = setup_of("q8");
  auto cl = twist_classes(S.N, S.linG);
  REQUIRE(cl.size() == 2);
  CHECK(f_tilde(S, S.all, cl[0]) == DirichletPoly::one());
  CHECK(f_tilde(S, S.all, cl[1]) == DirichletPoly::term(2, 1));
  for (const auto& name : corpus_names()) {
    auto T = setup_of(name);
    for (const auto& tc : twist_classes(T.N, T.linG)) CHECK(f_tilde(T, T.N, tc) == DirichletPoly::one());
  }
}

TEST_CASE("partial series examples") {
  auto Z = assemble_twist_zeta(setup_of("q8"));
  REQUIRE(Z.buckets.size() == 2);
  CHECK(Z.buckets[1].partial == DirichletPoly::one());
  CHECK(Z.buckets[1].f == DirichletPoly::term(2, 1));

  auto H = assemble_twist_zeta(setup_of("heis27_self"));
  REQUIRE(H.buckets.size() == 1);
  CHECK(H.buckets[0].partial == poly({{1, 1}, {3, 2}}));
  DirichletPoly deg3;
  for (int i : H.buckets[0].classes)
    if (H.classes[i].degree == 3) deg3 = deg3 + DirichletPoly::term(3, 1);
  CHECK(deg3 == DirichletPoly::term(3, 2));

  auto C = assemble_twist_zeta(setup_of("heis27_center"));
  // the two faithful classes of the centre carry inverse, distinct C invariants
  CHECK(C.buckets.size() == 3);
}

TEST_CASE("assembly equals the brute-force twist zeta on the corpus") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto S = setup_of(name);
    auto t0 = std::chrono::steady_clock::now();
    ZetaOptions opt;
    opt.check_members = true;
    auto Z = assemble_twist_zeta(S, opt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 60.0);
    CHECK(Z.integral);
    CHECK(Z.partition_ok);
    CHECK(Z.agree);
    CHECK(Z.assembled == Z.brute);
    CHECK(Z.assembled.nonnegative());
    // buckets partition the classes
    std::vector<int> seen(Z.classes.size(), 0);
    for (const auto& bk : Z.buckets) {
      CHECK(bk.f_agrees);
      CHECK(bk.member_f.size() == bk.classes.size());
      for (int i : bk.classes) ++seen[i];
    }
    for (int s : seen) CHECK(s == 1);
    if (is_p_group(S.all, S.p))
      for (const auto& [n, a] : Z.brute.terms()) CHECK(is_power_of(n, S.p));
  }
  CHECK(assemble_twist_zeta(setup_of("q8")).assembled == poly({{1, 1}, {2, 1}}));
  CHECK(assemble_twist_zeta(setup_of("d4")).assembled == poly({{1, 1}, {2, 1}}));
  CHECK(assemble_twist_zeta(setup_of("heis27_center")).assembled == poly({{1, 1}, {3, 2}}));
}

TEST_CASE("assembly is independent of the job count") {
  for (const auto& name : {"sl23", "c2xq8", "heis27_center"}) {
    CAPTURE(name);
    auto S = setup_of(name);
    ZetaOptions one, four;
    four.jobs = 4;
    auto a = assemble_twist_zeta(S, one), b = assemble_twist_zeta(S, four);
    CHECK(a.assembled == b.assembled);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].bucket == b.records[i].bucket);
      CHECK(a.records[i].c_id == b.records[i].c_id);
      CHECK(a.records[i].t_id == b.records[i].t_id);
    }
  }
}
