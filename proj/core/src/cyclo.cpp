#include "twistzeta/cyclo.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tz {

long gcd_l(long a, long b) { return std::gcd(a, b); }

long lcm_l(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

long mod_pos(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long euler_phi(long m) {
  long r = m;
  for (long q : prime_factors(m)) r = r / q * (q - 1);
  return r;
}

long prime_part(long n, long q) {
  long r = 1;
  while (n % q == 0) {
    n /= q;
    r *= q;
  }
  return r;
}

long coprime_part(long n, long q) { return n / prime_part(n, q); }

long inv_mod(long a, long m) {
  long t = 0, nt = 1, r = m, nr = mod_pos(a, m);
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return mod_pos(t, m);
}

// ---------------------------------------------------------------- roots

RootOfUnity::RootOfUnity(long m, long k) {
  if (m < 1) throw std::invalid_argument("RootOfUnity: modulus must be positive");
  k = mod_pos(k, m);
  long g = std::gcd(k, m);
  if (k == 0) g = m;
  m_ = m / g;
  k_ = k / g;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  long L = lcm_l(m_, o.m_);
  return RootOfUnity(L, k_ * (L / m_) + o.k_ * (L / o.m_));
}

RootOfUnity RootOfUnity::pow(long e) const {
  __int128 v = static_cast<__int128>(k_) * e;
  long r = static_cast<long>(v % m_);
  return RootOfUnity(m_, r);
}

long RootOfUnity::exponent_over(long M) const {
  if (M % m_ != 0) throw std::domain_error("RootOfUnity: order does not divide modulus");
  return k_ * (M / m_);
}

std::string RootOfUnity::str() const {
  if (m_ == 1) return "1";
  return "z" + std::to_string(m_) + "^" + std::to_string(k_);
}

RootOfUnity rou_qpart(const RootOfUnity& w, long q) {
  long M = w.modulus();
  long qe = prime_part(M, q);
  if (qe == 1) return RootOfUnity();
  long rest = M / qe;
  // a = 1 mod q^e, a = 0 mod rest
  long a = rest * inv_mod(rest % qe, qe);
  return w.pow(a);
}

// ---------------------------------------------------------------- tables

namespace {

using Poly = std::vector<long>;

struct CycloTables {
  long m = 1;
  long phi = 1;
  Poly cyclo;                   // monic, degree phi
  std::vector<Poly> xpow;       // x^j mod Phi_m, j < 2m
};

Poly poly_exact_div(Poly num, const Poly& den) {
  // den monic
  long dn = static_cast<long>(den.size()) - 1;
  long nn = static_cast<long>(num.size()) - 1;
  if (nn < dn) return Poly{0};
  Poly q(nn - dn + 1, 0);
  for (long i = nn; i >= dn; --i) {
    long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (long j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const Poly& cyclotomic_poly(long m) {
  thread_local std::map<long, Poly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Poly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d == 0) num = poly_exact_div(num, cyclotomic_poly(d));
  }
  return cache.emplace(m, num).first->second;
}

const CycloTables& tables(long m) {
  thread_local std::unordered_map<long, std::unique_ptr<CycloTables>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;
  auto t = std::make_unique<CycloTables>();
  t->m = m;
  t->cyclo = cyclotomic_poly(m);
  t->phi = static_cast<long>(t->cyclo.size()) - 1;
  long phi = t->phi;
  t->xpow.resize(2 * m + 2);
  Poly cur(phi, 0);
  cur[0] = 1;
  for (long j = 0; j < 2 * m + 2; ++j) {
    t->xpow[j] = cur;
    // multiply by x and reduce
    long top = cur[phi - 1];
    Poly nxt(phi, 0);
    for (long i = phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (top != 0)
      for (long i = 0; i < phi; ++i) nxt[i] -= top * t->cyclo[i];
    cur = nxt;
  }
  auto& ref = *t;
  cache.emplace(m, std::move(t));
  return ref;
}

}  // namespace

// ---------------------------------------------------------------- cyclotomic

Cyclotomic::Cyclotomic() : m_(1), c_(1, Rational(0)) {}

Cyclotomic::Cyclotomic(const Rational& r) : m_(1), c_(1, r) { c_[0].canonicalize(); }

Cyclotomic::Cyclotomic(const RootOfUnity& w) : Cyclotomic(zeta(w.modulus(), w.exponent())) {}

Cyclotomic Cyclotomic::from_raw(long M, const std::vector<Rational>& raw) {
  if (M < 1) throw std::invalid_argument("cyclotomic modulus must be positive");
  const auto& t = tables(M);
  std::vector<Rational> c(t.phi, Rational(0));
  for (size_t s = 0; s < raw.size(); ++s) {
    Rational r = raw[s];
    r.canonicalize();
    if (r == 0) continue;
    const Poly& row = t.xpow[s % M];
    for (long i = 0; i < t.phi; ++i)
      if (row[i] != 0) c[i] += r * row[i];
  }
  return Cyclotomic(M, std::move(c));
}

Cyclotomic cyc_normalize(long M, const std::vector<Rational>& raw) {
  return Cyclotomic::from_raw(M, raw);
}

Cyclotomic Cyclotomic::zeta(long M, long k) {
  if (M < 1) throw std::invalid_argument("cyclotomic modulus must be positive");
  const auto& t = tables(M);
  const Poly& row = t.xpow[mod_pos(k, M)];
  std::vector<Rational> c(t.phi);
  for (long i = 0; i < t.phi; ++i) c[i] = row[i];
  return Cyclotomic(M, std::move(c));
}

Cyclotomic Cyclotomic::from_counts(long M, const std::vector<long>& counts) {
  const auto& t = tables(M);
  std::vector<long> acc(t.phi, 0);
  for (size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const Poly& row = t.xpow[k % M];
    for (long i = 0; i < t.phi; ++i) acc[i] += counts[k] * row[i];
  }
  std::vector<Rational> c(t.phi);
  for (long i = 0; i < t.phi; ++i) c[i] = acc[i];
  return Cyclotomic(M, std::move(c));
}

Cyclotomic Cyclotomic::rebase(long M) const {
  if (M == m_) return *this;
  if (M % m_ != 0) throw std::invalid_argument("rebase: modulus must be a multiple");
  const auto& t = tables(M);
  long step = M / m_;
  std::vector<Rational> c(t.phi, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const Poly& row = t.xpow[(static_cast<long>(i) * step) % M];
    for (long j = 0; j < t.phi; ++j)
      if (row[j] != 0) c[j] += c_[i] * row[j];
  }
  return Cyclotomic(M, std::move(c));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  long L = lcm_l(m_, o.m_);
  Cyclotomic a = rebase(L), b = o.rebase(L);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic a = *this;
  for (auto& x : a.c_) x = -x;
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Rational& r) const {
  Rational rc = r;
  rc.canonicalize();
  if (rc == 0) return Cyclotomic();
  Cyclotomic a = *this;
  for (auto& x : a.c_) x *= rc;
  return a;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (m_ == 1) return o * c_[0];
  if (o.m_ == 1) return *this * o.c_[0];
  long L = lcm_l(m_, o.m_);
  Cyclotomic a = rebase(L), b = o.rebase(L);
  const auto& t = tables(L);
  long phi = t.phi;
  std::vector<Rational> raw(2 * phi - 1, Rational(0));
  for (long i = 0; i < phi; ++i) {
    if (a.c_[i] == 0) continue;
    for (long j = 0; j < phi; ++j) {
      if (b.c_[j] == 0) continue;
      raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  std::vector<Rational> c(phi, Rational(0));
  for (long s = 0; s < 2 * phi - 1; ++s) {
    if (raw[s] == 0) continue;
    if (s < phi) {
      c[s] += raw[s];
      continue;
    }
    const Poly& row = t.xpow[s];
    for (long j = 0; j < phi; ++j)
      if (row[j] != 0) c[j] += raw[s] * row[j];
  }
  return Cyclotomic(L, std::move(c));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("cyclotomic division by zero");
  if (m_ == 1) return Cyclotomic(Rational(1) / c_[0]);
  long phi = static_cast<long>(c_.size());
  // columns: this * x^j
  std::vector<std::vector<Rational>> A(phi, std::vector<Rational>(phi + 1, Rational(0)));
  for (long j = 0; j < phi; ++j) {
    Cyclotomic col = *this * zeta(m_, j);
    for (long i = 0; i < phi; ++i) A[i][j] = col.c_[i];
  }
  A[0][phi] = 1;
  for (long col = 0, row = 0; col < phi; ++col, ++row) {
    long piv = row;
    while (piv < phi && A[piv][col] == 0) ++piv;
    if (piv == phi) throw std::logic_error("cyclotomic inverse: singular multiplication matrix");
    std::swap(A[piv], A[row]);
    Rational inv = Rational(1) / A[row][col];
    for (long k = col; k <= phi; ++k) A[row][k] *= inv;
    for (long r = 0; r < phi; ++r) {
      if (r == row || A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (long k = col; k <= phi; ++k) A[r][k] -= f * A[row][k];
    }
  }
  std::vector<Rational> c(phi);
  for (long i = 0; i < phi; ++i) c[i] = A[i][phi];
  return Cyclotomic(m_, std::move(c));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

Cyclotomic Cyclotomic::galois(long a) const {
  if (std::gcd(mod_pos(a, m_), m_) != 1 && m_ > 1)
    throw std::invalid_argument("galois: exponent not a unit");
  std::vector<Rational> raw(m_, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) raw[mod_pos(static_cast<long>(i) * a, m_)] += c_[i];
  return from_raw(m_, raw);
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::pow(const BigInt& e) const {
  if (e < 0) return inverse().pow(BigInt(-e));
  if (e > 16) {
    if (auto w = as_root_of_unity()) {
      BigInt r = e % w->modulus();
      return Cyclotomic(w->pow(r.get_si()));
    }
  }
  Cyclotomic result(1L), base = *this;
  BigInt k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result *= base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (m_ == o.m_) return c_ == o.c_;
  long L = lcm_l(m_, o.m_);
  return rebase(L).c_ == o.rebase(L).c_;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const { return is_rational() && c_[0] == 1; }

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
  return c_[0];
}

std::optional<RootOfUnity> Cyclotomic::as_root_of_unity() const {
  if (is_zero()) return std::nullopt;
  if (is_rational()) {
    if (c_[0] == 1) return RootOfUnity();
    if (c_[0] == -1) return RootOfUnity(2, 1);
    return std::nullopt;
  }
  long M = lcm_l(m_, 2);
  Cyclotomic v = rebase(M);
  const auto& t = tables(M);
  for (long k = 0; k < M; ++k) {
    const Poly& row = t.xpow[k];
    bool eq = true;
    for (long i = 0; i < t.phi && eq; ++i) eq = (v.c_[i] == row[i]);
    if (eq) return RootOfUnity(M, k);
  }
  return std::nullopt;
}

Cyclotomic Cyclotomic::shrink() const {
  if (m_ == 1) return *this;
  if (is_rational()) return Cyclotomic(c_[0]);
  for (long d = 1; d < m_; ++d) {
    if (m_ % d != 0) continue;
    if (d % 4 == 2) continue;
    bool fixed = true;
    for (long a = 1; a < m_ && fixed; ++a) {
      if (std::gcd(a, m_) != 1 || a % d != 1 % d) continue;
      fixed = (galois(a) == *this);
    }
    if (!fixed) continue;
    // solve for coordinates over Q(zeta_d)
    const auto& td = tables(d);
    long pd = td.phi, pm = static_cast<long>(c_.size());
    std::vector<std::vector<Rational>> A(pm, std::vector<Rational>(pd + 1, Rational(0)));
    for (long j = 0; j < pd; ++j) {
      Cyclotomic col = zeta(d, j).rebase(m_);
      for (long i = 0; i < pm; ++i) A[i][j] = col.c_[i];
    }
    for (long i = 0; i < pm; ++i) A[i][pd] = c_[i];
    long row = 0;
    std::vector<long> pivcol;
    for (long col = 0; col < pd && row < pm; ++col) {
      long piv = row;
      while (piv < pm && A[piv][col] == 0) ++piv;
      if (piv == pm) continue;
      std::swap(A[piv], A[row]);
      Rational inv = Rational(1) / A[row][col];
      for (long k = col; k <= pd; ++k) A[row][k] *= inv;
      for (long r = 0; r < pm; ++r) {
        if (r == row || A[r][col] == 0) continue;
        Rational f = A[r][col];
        for (long k = col; k <= pd; ++k) A[r][k] -= f * A[row][k];
      }
      pivcol.push_back(col);
      ++row;
    }
    std::vector<Rational> c(pd, Rational(0));
    for (size_t r = 0; r < pivcol.size(); ++r) c[pivcol[r]] = A[r][pd];
    return Cyclotomic(d, std::move(c));
  }
  return *this;
}

std::string Cyclotomic::str() const {
  Cyclotomic s = shrink();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < s.c_.size(); ++i) {
    const Rational& x = s.c_[i];
    if (x == 0) continue;
    Rational ax = abs(x);
    if (!first) os << (x < 0 ? " - " : " + ");
    else if (x < 0) os << "-";
    first = false;
    if (i == 0) {
      os << ax.get_str();
    } else {
      if (ax != 1) os << ax.get_str() << "*";
      os << "z" << s.m_;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

bool lex_less(const Cyclotomic& a, const Cyclotomic& b, long common_modulus) {
  Cyclotomic x = a.rebase(common_modulus), y = b.rebase(common_modulus);
  const auto& cx = x.coeffs();
  const auto& cy = y.coeffs();
  for (size_t i = 0; i < cx.size(); ++i) {
    if (cx[i] != cy[i]) return cx[i] < cy[i];
  }
  return false;
}

}  // namespace tz
