#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tz {

using Rational = mpq_class;
using BigInt = mpz_class;

long gcd_l(long a, long b);
long lcm_l(long a, long b);
long mod_pos(long a, long m);
bool is_prime(long n);
std::vector<long> prime_factors(long n);
long euler_phi(long m);
// largest power of q dividing n
long prime_part(long n, long q);
// n with all factors q removed
long coprime_part(long n, long q);
// inverse of a modulo m, gcd(a,m) must be 1
long inv_mod(long a, long m);

// zeta_M^k, kept in lowest terms so that modulus() is the exact order.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(long m, long k);

  long modulus() const { return m_; }
  long exponent() const { return k_; }
  long order() const { return m_; }
  bool is_one() const { return m_ == 1; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity inverse() const { return RootOfUnity(m_, -k_); }
  RootOfUnity pow(long e) const;
  // exponent written over modulus M; needs order() | M
  long exponent_over(long M) const;

  bool operator==(const RootOfUnity& o) const { return m_ == o.m_ && k_ == o.k_; }
  bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
  bool operator<(const RootOfUnity& o) const {
    return m_ != o.m_ ? m_ < o.m_ : k_ < o.k_;
  }
  std::string str() const;

 private:
  long m_ = 1;
  long k_ = 0;
};

RootOfUnity rou_qpart(const RootOfUnity& w, long q);

// Element of Q(zeta_M) in the power basis reduced mod Phi_M.
class Cyclotomic {
 public:
  Cyclotomic();  // zero
  explicit Cyclotomic(const Rational& r);
  explicit Cyclotomic(long v) : Cyclotomic(Rational(v)) {}
  Cyclotomic(const RootOfUnity& w);  // NOLINT implicit on purpose

  // raw coefficients of a polynomial in zeta_M of any degree
  static Cyclotomic from_raw(long M, const std::vector<Rational>& raw);
  static Cyclotomic zeta(long M, long k);
  // sum_k counts[k] * zeta_M^k
  static Cyclotomic from_counts(long M, const std::vector<long>& counts);

  long modulus() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Cyclotomic rebase(long M) const;
  // smallest modulus dividing the current one that still holds the value
  Cyclotomic shrink() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator/(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic operator*(const Rational& r) const;

  Cyclotomic inverse() const;
  Cyclotomic conj() const;
  Cyclotomic galois(long a) const;
  Cyclotomic pow(const BigInt& e) const;
  Cyclotomic pow(long e) const { return pow(BigInt(e)); }

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;  // needs is_rational()

  std::optional<RootOfUnity> as_root_of_unity() const;

  std::string str() const;

 private:
  Cyclotomic(long m, std::vector<Rational> c) : m_(m), c_(std::move(c)) {}
  long m_;
  std::vector<Rational> c_;
};

Cyclotomic cyc_normalize(long M, const std::vector<Rational>& raw);

// exact ordering of values sharing a modulus; used for deterministic sorting
bool lex_less(const Cyclotomic& a, const Cyclotomic& b, long common_modulus);

}  // namespace tz
