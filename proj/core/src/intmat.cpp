#include "twistzeta/intmat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "twistzeta/cyclo.hpp"

namespace tz {

namespace {

long ext_gcd(long a, long b, long& s, long& t) {
  long os = 1, ot = 0, cs = 0, ct = 1;
  while (b != 0) {
    long q = a / b;
    long r = a - q * b;
    a = b;
    b = r;
    long ns = os - q * cs;
    os = cs;
    cs = ns;
    long nt = ot - q * ct;
    ot = ct;
    ct = nt;
  }
  s = os;
  t = ot;
  return a;
}

long mulmod(long a, long b, long n) {
  return static_cast<long>((static_cast<__int128>(a) * b) % n);
}

void row_comb(std::vector<long>& out, long s, const std::vector<long>& x, long t,
              const std::vector<long>& y, long N) {
  for (size_t k = 0; k < out.size(); ++k)
    out[k] = mod_pos(mulmod(mod_pos(s, N), x[k], N) + mulmod(mod_pos(t, N), y[k], N), N);
}

long unit_for(long a, long N) {
  long g = std::gcd(a, N);
  long ap = a / g, np = N / g;
  long u = np == 1 ? 1 : inv_mod(ap % np, np);
  while (std::gcd(u, N) != 1) u += np;
  return u % N;
}

}  // namespace

ModMatrix howell_form(ModMatrix A, long N) {
  if (N <= 1 || A.empty()) return {};
  size_t cols = A[0].size();
  for (auto& row : A)
    for (auto& x : row) x = mod_pos(x, N);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < A.size(); ++c) {
    if (A[r][c] == 0) {
      for (size_t i = r + 1; i < A.size(); ++i) {
        if (A[i][c] != 0) {
          std::swap(A[i], A[r]);
          break;
        }
      }
    }
    if (A[r][c] == 0) continue;
    for (size_t i = r + 1; i < A.size(); ++i) {
      if (A[i][c] == 0) continue;
      long a = A[r][c], b = A[i][c], s, t;
      long g = ext_gcd(a, b, s, t);
      std::vector<long> nr(cols), ni(cols);
      row_comb(nr, s, A[r], t, A[i], N);
      row_comb(ni, -(b / g), A[r], a / g, A[i], N);
      A[r] = std::move(nr);
      A[i] = std::move(ni);
    }
    long u = unit_for(A[r][c], N);
    for (auto& x : A[r]) x = mulmod(x, u, N);
    long piv = A[r][c];
    for (size_t i = 0; i < r; ++i) {
      long q = A[i][c] / piv;
      if (q == 0) continue;
      for (size_t k = 0; k < cols; ++k) A[i][k] = mod_pos(A[i][k] - mulmod(q, A[r][k], N), N);
    }
    long ann = N / piv;
    std::vector<long> extra(cols);
    bool nz = false;
    for (size_t k = 0; k < cols; ++k) {
      extra[k] = mulmod(ann, A[r][k], N);
      nz = nz || extra[k] != 0;
    }
    if (nz) A.push_back(std::move(extra));
    ++r;
  }
  A.resize(r);
  ModMatrix out;
  for (auto& row : A) {
    bool nz = std::any_of(row.begin(), row.end(), [](long x) { return x != 0; });
    if (nz) out.push_back(std::move(row));
  }
  return out;
}

namespace {

// reduce v over the first `upto` columns; false if a pivot does not divide
bool reduce_against(const ModMatrix& H, std::vector<long>& v, size_t upto, long N) {
  for (const auto& h : H) {
    size_t pc = 0;
    while (pc < h.size() && h[pc] == 0) ++pc;
    if (pc >= upto) continue;
    if (v[pc] % h[pc] != 0) return false;
    long q = v[pc] / h[pc];
    if (q == 0) continue;
    for (size_t k = 0; k < v.size(); ++k) v[k] = mod_pos(v[k] - mulmod(q, h[k], N), N);
  }
  for (size_t k = 0; k < upto; ++k)
    if (v[k] != 0) return false;
  return true;
}

}  // namespace

bool in_row_span(const ModMatrix& howell, std::vector<long> v, long N) {
  if (N <= 1) return true;
  for (auto& x : v) x = mod_pos(x, N);
  return reduce_against(howell, v, v.size(), N);
}

std::optional<std::vector<long>> solve_mod(const ModMatrix& A, const std::vector<long>& b, long N) {
  size_t rows = A.size();
  size_t cols = rows == 0 ? 0 : A[0].size();
  if (N <= 1) return std::vector<long>(cols, 0);
  if (rows == 0) return std::vector<long>(cols, 0);
  // [A^T | I]
  ModMatrix M(cols, std::vector<long>(rows + cols, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) M[j][i] = mod_pos(A[i][j], N);
  for (size_t j = 0; j < cols; ++j) M[j][rows + j] = 1;
  ModMatrix H = howell_form(std::move(M), N);
  std::vector<long> v(rows + cols, 0);
  for (size_t i = 0; i < rows; ++i) v[i] = mod_pos(b[i], N);
  if (!reduce_against(H, v, rows, N)) return std::nullopt;
  std::vector<long> x(cols);
  for (size_t j = 0; j < cols; ++j) x[j] = mod_pos(-v[rows + j], N);
  return x;
}

// ---------------------------------------------------------------- Smith

SmithResult smith_normal_form(BigMatrix A) {
  size_t m = A.size();
  size_t n = m == 0 ? 0 : A[0].size();
  BigMatrix P(m, std::vector<mpz_class>(m, 0));
  for (size_t i = 0; i < m; ++i) P[i][i] = 1;
  auto swap_rows = [&](size_t a, size_t b) {
    if (a == b) return;
    std::swap(A[a], A[b]);
    for (size_t k = 0; k < m; ++k) std::swap(P[k][a], P[k][b]);
  };
  auto swap_cols = [&](size_t a, size_t b) {
    if (a == b) return;
    for (size_t k = 0; k < m; ++k) std::swap(A[k][a], A[k][b]);
  };
  // row_i -= q row_t
  auto row_sub = [&](size_t i, size_t t, const mpz_class& q) {
    if (q == 0) return;
    for (size_t k = 0; k < n; ++k)
      if (A[t][k] != 0) A[i][k] -= q * A[t][k];
    for (size_t k = 0; k < m; ++k)
      if (P[k][i] != 0) P[k][t] += q * P[k][i];
  };
  auto col_sub = [&](size_t j, size_t t, const mpz_class& q) {
    if (q == 0) return;
    for (size_t k = 0; k < m; ++k)
      if (A[k][t] != 0) A[k][j] -= q * A[k][t];
  };
  std::vector<mpz_class> diag;
  size_t t = 0;
  while (t < std::min(m, n)) {
    // pivot of minimal absolute value
    size_t bi = m, bj = n;
    mpz_class best = 0;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j) {
        if (A[i][j] == 0) continue;
        mpz_class a = abs(A[i][j]);
        if (bi == m || a < best) {
          best = a;
          bi = i;
          bj = j;
          if (best == 1) break;
        }
      }
    if (bi == m) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
        row_sub(i, t, q);
        if (A[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
        col_sub(j, t, q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) {
        // move the smallest nonzero of row/column t to the pivot
        size_t bi2 = t, bj2 = t;
        mpz_class b2 = abs(A[t][t]);
        for (size_t i = t + 1; i < m; ++i)
          if (A[i][t] != 0 && abs(A[i][t]) < b2) {
            b2 = abs(A[i][t]);
            bi2 = i;
            bj2 = t;
          }
        for (size_t j = t + 1; j < n; ++j)
          if (A[t][j] != 0 && abs(A[t][j]) < b2) {
            b2 = abs(A[t][j]);
            bi2 = t;
            bj2 = j;
          }
        swap_rows(t, bi2);
        swap_cols(t, bj2);
        continue;
      }
      // divisibility of the remaining block
      size_t bad = m;
      for (size_t i = t + 1; i < m && bad == m; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (A[i][j] != 0 && !mpz_divisible_p(A[i][j].get_mpz_t(), A[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      // row_t += row_bad
      for (size_t k = 0; k < n; ++k) A[t][k] += A[bad][k];
      for (size_t k = 0; k < m; ++k) P[k][bad] -= P[k][t];
    }
    diag.push_back(abs(A[t][t]));
    ++t;
  }
  while (diag.size() < m) diag.push_back(0);
  return SmithResult{std::move(diag), std::move(P)};
}

std::vector<std::vector<mpz_class>> integer_kernel(BigMatrix A) {
  size_t m = A.size();
  size_t n = m == 0 ? 0 : A[0].size();
  BigMatrix U(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) U[i][i] = 1;
  size_t k = 0;
  for (size_t i = 0; i < m && k < n; ++i) {
    for (size_t j = k + 1; j < n; ++j) {
      if (A[i][j] == 0) continue;
      if (A[i][k] == 0) {
        for (size_t r = 0; r < m; ++r) std::swap(A[r][k], A[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(U[r][k], U[r][j]);
        continue;
      }
      mpz_class x = A[i][k], y = A[i][j], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      mpz_class yg = y / g, xg = x / g;
      for (size_t r = 0; r < m; ++r) {
        mpz_class a = A[r][k], b = A[r][j];
        A[r][k] = s * a + t * b;
        A[r][j] = -yg * a + xg * b;
      }
      for (size_t r = 0; r < n; ++r) {
        mpz_class a = U[r][k], b = U[r][j];
        U[r][k] = s * a + t * b;
        U[r][j] = -yg * a + xg * b;
      }
    }
    if (A[i][k] != 0) ++k;
  }
  std::vector<std::vector<mpz_class>> out;
  for (size_t j = k; j < n; ++j) {
    std::vector<mpz_class> col(n);
    for (size_t r = 0; r < n; ++r) col[r] = U[r][j];
    out.push_back(std::move(col));
  }
  return out;
}

// ---------------------------------------------------------------- abelian

CyclicDecomposition cyclic_decomposition(const std::vector<std::vector<long>>& elems,
                                         const std::vector<long>& moduli) {
  size_t r = moduli.size();
  auto add = [&](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> c(r);
    for (size_t i = 0; i < r; ++i) c[i] = mod_pos(a[i] + b[i], moduli[i]);
    return c;
  };
  auto order_of = [&](const std::vector<long>& a) {
    long o = 1;
    for (size_t i = 0; i < r; ++i) o = lcm_l(o, moduli[i] / std::gcd(a[i], moduli[i]));
    return o;
  };
  std::set<std::vector<long>> S{std::vector<long>(r, 0)};
  CyclicDecomposition out;
  while (S.size() < elems.size()) {
    int best = -1;
    long best_order = 0;
    for (size_t e = 0; e < elems.size(); ++e) {
      long o = order_of(elems[e]);
      if (o <= best_order) continue;
      std::vector<long> cur = elems[e];
      bool meets = false;
      for (long k = 1; k < o && !meets; ++k) {
        if (S.count(cur)) meets = true;
        cur = add(cur, elems[e]);
      }
      if (meets) continue;
      best = static_cast<int>(e);
      best_order = o;
    }
    if (best < 0) throw std::logic_error("cyclic decomposition: no independent element");
    std::set<std::vector<long>> S2;
    std::vector<long> mult(r, 0);
    for (long k = 0; k < best_order; ++k) {
      for (const auto& s : S) S2.insert(add(s, mult));
      mult = add(mult, elems[best]);
    }
    S = std::move(S2);
    out.gens.push_back(best);
    out.orders.push_back(best_order);
  }
  long prod = 1;
  for (long o : out.orders) prod *= o;
  if (prod != static_cast<long>(elems.size()))
    throw std::logic_error("cyclic decomposition: orders do not multiply to the group size");
  return out;
}

}  // namespace tz
