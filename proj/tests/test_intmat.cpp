#include <random>

#include "doctest.h"
#include "twistzeta/intmat.hpp"

using namespace tz;

TEST_CASE("solve_mod with zero divisors") {
  // 2x = 2 mod 4 has solutions, 2x = 1 mod 4 has none
  auto s = solve_mod({{2}}, {2}, 4);
  REQUIRE(s);
  CHECK((2 * (*s)[0]) % 4 == 2);
  CHECK_FALSE(solve_mod({{2}}, {1}, 4));
}

TEST_CASE("solve_mod agrees with exhaustive search") {
  std::mt19937_64 rng(3);
  for (long N : {2L, 4L, 6L, 8L, 9L, 12L}) {
    std::uniform_int_distribution<long> d(0, N - 1);
    for (int t = 0; t < 60; ++t) {
      int rows = 1 + t % 3, cols = 1 + (t / 3) % 3;
      ModMatrix A(rows, std::vector<long>(cols));
      std::vector<long> b(rows);
      for (auto& r : A)
        for (auto& x : r) x = d(rng);
      for (auto& x : b) x = d(rng);
      bool exists = false;
      std::vector<long> x(cols, 0);
      long total = 1;
      for (int c = 0; c < cols; ++c) total *= N;
      for (long idx = 0; idx < total && !exists; ++idx) {
        long v = idx;
        for (int c = 0; c < cols; ++c) x[c] = v % N, v /= N;
        bool ok = true;
        for (int r = 0; r < rows && ok; ++r) {
          long acc = 0;
          for (int c = 0; c < cols; ++c) acc += A[r][c] * x[c];
          ok = (acc - b[r]) % N == 0;
        }
        exists = ok;
      }
      auto s = solve_mod(A, b, N);
      CHECK(bool(s) == exists);
      if (s)
        for (int r = 0; r < rows; ++r) {
          long acc = 0;
          for (int c = 0; c < cols; ++c) acc += A[r][c] * (*s)[c];
          CHECK(((acc - b[r]) % N + N) % N == 0);
        }
    }
  }
}

TEST_CASE("howell span membership") {
  ModMatrix A{{2, 4}, {0, 6}};
  auto h = howell_form(A, 8);
  CHECK(in_row_span(h, {2, 4}, 8));
  CHECK(in_row_span(h, {0, 2}, 8));  // 3*(0,6) = (0,18) = (0,2)
  CHECK_FALSE(in_row_span(h, {1, 0}, 8));
}

TEST_CASE("smith normal form") {
  BigMatrix A{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto s = smith_normal_form(A);
  std::vector<mpz_class> nz;
  for (auto& d : s.diag)
    if (d != 0) nz.push_back(d);
  std::sort(nz.begin(), nz.end());
  REQUIRE(nz.size() == 3);
  CHECK(nz[0] == 2);
  CHECK(nz[1] == 6);
  CHECK(nz[2] == 12);
}

TEST_CASE("integer kernel") {
  BigMatrix A{{1, 1, 1}, {0, 2, 4}};
  auto K = integer_kernel(A);
  REQUIRE(K.size() == 1);
  for (size_t r = 0; r < A.size(); ++r) {
    mpz_class acc = 0;
    for (size_t c = 0; c < 3; ++c) acc += A[r][c] * K[0][c];
    CHECK(acc == 0);
  }
}

TEST_CASE("cyclic decomposition of Z2 x Z4") {
  std::vector<std::vector<long>> elems;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 4; ++b) elems.push_back({a, b});
  auto cd = cyclic_decomposition(elems, {2, 4});
  long prod = 1;
  for (long o : cd.orders) prod *= o;
  CHECK(prod == 8);
  CHECK(cd.orders[0] == 4);
}
