#include <random>

#include "doctest.h"
#include "twistzeta/cyclo.hpp"

using namespace tz;

namespace {

Cyclotomic random_cyc(std::mt19937_64& rng, long M) {
  std::uniform_int_distribution<long> d(-3, 3);
  std::vector<Rational> raw(M);
  for (auto& r : raw) r = Rational(d(rng), 1 + (d(rng) + 3) % 3);
  return Cyclotomic::from_raw(M, raw);
}

// multiply two polynomials mod x^M - 1 directly, as an independent oracle
std::vector<Rational> polymul_mod(const std::vector<Rational>& a, const std::vector<Rational>& b, long M) {
  std::vector<Rational> r(M);
  for (long i = 0; i < M; ++i)
    for (long j = 0; j < M; ++j) r[(i + j) % M] += a[i] * b[j];
  return r;
}

}  // namespace

TEST_CASE("normalize basis element and cyclotomic relation") {
  auto z4 = cyc_normalize(4, {0, 1, 0, 0});
  CHECK(z4.coeffs().size() == 2);
  CHECK(z4.coeffs()[0] == 0);
  CHECK(z4.coeffs()[1] == 1);
  CHECK(cyc_normalize(3, {-1, -1, 0}) == Cyclotomic::zeta(3, 2));
  CHECK_THROWS(cyc_normalize(0, {}));
}

TEST_CASE("product matches reduction mod x^M - 1") {
  std::vector<Rational> a{1, 1, 0, 0, 0}, b{1, 0, 0, 0, 1};
  auto lhs = Cyclotomic::from_raw(5, a) * Cyclotomic::from_raw(5, b);
  CHECK(lhs == Cyclotomic::from_raw(5, polymul_mod(a, b, 5)));
  std::mt19937_64 rng(7);
  for (long M : {6L, 8L, 9L, 12L, 15L}) {
    for (int s = 0; s < 10; ++s) {
      std::vector<Rational> x(M), y(M);
      std::uniform_int_distribution<long> d(-4, 4);
      for (long i = 0; i < M; ++i) x[i] = d(rng), y[i] = d(rng);
      CHECK(Cyclotomic::from_raw(M, x) * Cyclotomic::from_raw(M, y) ==
            Cyclotomic::from_raw(M, polymul_mod(x, y, M)));
    }
  }
}

TEST_CASE("field operations") {
  CHECK(Cyclotomic::zeta(8, 1) * Cyclotomic::zeta(8, 1) == Cyclotomic::zeta(4, 1));
  CHECK(Cyclotomic::zeta(3, 1).conj() == Cyclotomic::zeta(3, 2));
  Cyclotomic s;
  for (int k = 0; k < 5; ++k) s += Cyclotomic::zeta(5, k);
  CHECK(s.is_zero());
  CHECK((s / Cyclotomic::zeta(5, 2)).is_zero());
  CHECK_THROWS(Cyclotomic(1) / Cyclotomic());
  CHECK((Cyclotomic::zeta(12, 1) + Cyclotomic::zeta(12, 5)).is_rational() == false);
  CHECK((Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, 7)) * (Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, 7)) ==
        Cyclotomic(2));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (long M : {1L, 2L, 3L, 4L, 5L, 8L, 12L, 20L}) {
    for (int s = 0; s < 8; ++s) {
      auto a = random_cyc(rng, M), b = random_cyc(rng, M), c = random_cyc(rng, M * 3 / gcd_l(M, 3));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a.conj().conj() == a);
      if (!a.is_zero()) CHECK((b / a) * a == b);
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(1));
      CHECK((a * b).conj() == a.conj() * b.conj());
    }
  }
}

TEST_CASE("roots of unity") {
  auto z4 = Cyclotomic::zeta(4, 1).as_root_of_unity();
  REQUIRE(z4);
  CHECK(z4->modulus() == 4);
  CHECK(z4->exponent() == 1);
  CHECK_FALSE(Cyclotomic(2).as_root_of_unity());
  auto m = (-Cyclotomic::zeta(3, 1)).as_root_of_unity();
  REQUIRE(m);
  CHECK(*m == RootOfUnity(6, 5));
  CHECK(Cyclotomic(-1).as_root_of_unity() == RootOfUnity(2, 1));
  CHECK_FALSE((Cyclotomic(1) + Cyclotomic::zeta(5, 1)).as_root_of_unity());
  for (long M : {1L, 3L, 4L, 7L, 9L, 12L})
    for (long k = 0; k < M; ++k) {
      RootOfUnity w(M, k);
      CHECK(Cyclotomic(w).as_root_of_unity() == w);
      CHECK(Cyclotomic(w).conj() == Cyclotomic(w.inverse()));
      CHECK(w * w.inverse() == RootOfUnity());
    }
}

TEST_CASE("q-parts") {
  RootOfUnity w(12, 1);
  auto w2 = rou_qpart(w, 2), w3 = rou_qpart(w, 3);
  CHECK(w2.modulus() == 4);
  CHECK(w3.modulus() == 3);
  CHECK(w2 * w3 == w);
  CHECK(rou_qpart(RootOfUnity(9, 1), 2).is_one());
  CHECK(rou_qpart(RootOfUnity(), 5).is_one());
  for (long M : {12L, 30L, 36L, 60L, 8L})
    for (long k = 0; k < M; ++k) {
      RootOfUnity x(M, k);
      RootOfUnity prod;
      for (long q : prime_factors(M)) {
        auto xq = rou_qpart(x, q);
        CHECK(rou_qpart(xq, q) == xq);
        CHECK(prime_part(xq.order(), q) == xq.order());
        for (long q2 : prime_factors(M))
          if (q2 != q) CHECK(rou_qpart(xq, q2).is_one());
        prod = prod * xq;
      }
      CHECK(prod == x);
    }
}

TEST_CASE("galois and rebasing") {
  auto a = Cyclotomic::zeta(5, 1) + Cyclotomic(Rational(1, 2));
  CHECK(a.rebase(10) == a);
  CHECK(a.rebase(15).shrink().modulus() == 5);
  CHECK(a.galois(2) == Cyclotomic::zeta(5, 2) + Cyclotomic(Rational(1, 2)));
  CHECK(Cyclotomic::zeta(7, 3).pow(7).is_one());
  CHECK(Cyclotomic::zeta(7, 3).pow(-1) == Cyclotomic::zeta(7, 4));
}

TEST_CASE("non-canonical rational inputs") {
  Rational two_sixths(2, 6);
  Cyclotomic z = Cyclotomic::zeta(11, 2);
  Cyclotomic a = z * two_sixths;
  CHECK(a == z * Rational(1, 3));
  CHECK((a * Cyclotomic(Rational(4, 7))) / Cyclotomic(Rational(4, 7)) == a);
  CHECK((z * Rational(0, 5)).is_zero());
  CHECK(Cyclotomic(Rational(-3, 3)) == Cyclotomic(-1L));
}
