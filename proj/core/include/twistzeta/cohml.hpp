#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "twistzeta/twist.hpp"

namespace tz {

// ---- degree two, trivial coefficients -------------------------------------

// 2-cochain on a finite group Q with values in the cyclotomic units.
struct Cocycle2 {
  GroupPtr Q;
  std::vector<std::vector<Cyclotomic>> val;  // val[x][y]
};

bool check_cocycle(const Cocycle2& a);
// first (x, y, z) breaking the identity; z = -1 for a zero value at (x, y)
std::optional<std::array<int, 3>> cocycle_violation(const Cocycle2& a);
Cocycle2 coboundary2(const GroupPtr& Q, const std::vector<Cyclotomic>& beta);  // (d beta)(x,y) = b(x)b(y)/b(xy)
Cocycle2 operator*(const Cocycle2& a, const Cocycle2& b);
Cocycle2 inverse(const Cocycle2& a);

// Sparse integer 2-chain: sum coef [x|y].
struct Chain2Term {
  int x, y;
  mpz_class coef;
};
using Chain2 = std::vector<Chain2Term>;

struct H2Basis {
  std::vector<Chain2> gens;
  std::vector<long> orders;
};
// Torsion generators of H_2(Q, Z) from the bar complex; cached by multiplication table.
std::shared_ptr<const H2Basis> h2_basis(const GroupPtr& Q);

struct H2Certificate {
  GroupPtr Q;
  std::shared_ptr<const H2Basis> basis;
  std::vector<Cyclotomic> evals;
};
H2Certificate h2_certificate(const Cocycle2& a);
// throws std::invalid_argument on different base groups
bool h2_equal(const H2Certificate& a, const H2Certificate& b);
bool h2_trivial(const H2Certificate& a);

// beta with b = a * d(beta), for torsion-valued a and b in the same class.
std::optional<std::vector<Cyclotomic>> h2_coboundary_solve(const Cocycle2& a, const Cocycle2& b);

// ---- degree one, coefficients Func(K/N, C^x) / Gamma ----------------------

struct H1Module {
  Subgroup base;  // acting group, N <= base, base normalises K
  Subgroup K, N;
  Quotient base_q, points;
  GammaGroup gamma;                   // gamma.K == K
  std::vector<std::vector<int>> act;  // act[g][x]: coset of g^-1 x g
  std::vector<std::vector<int>> mul;  // multiplication of base/N cosets
};
std::shared_ptr<const H1Module> make_h1_module(const Subgroup& base, const Subgroup& K, const Subgroup& N,
                                               const GammaGroup& gamma);

struct Cocycle1 {
  std::shared_ptr<const H1Module> mod;
  std::vector<std::vector<Cyclotomic>> val;  // val[g][x], nonzero
};

// value(gg') = value(g) * ^g value(g') modulo Gamma, for all pairs
bool check_cocycle(const Cocycle1& c);
Cocycle1 coboundary1(const std::shared_ptr<const H1Module>& mod, const std::vector<Cyclotomic>& omega);
Cocycle1 operator*(const Cocycle1& a, const Cocycle1& b);
Cocycle1 inverse(const Cocycle1& a);
Cocycle1 restrict_cocycle(const Cocycle1& c, const Subgroup& smaller_base);
Cocycle1 cocycle_qpart(const Cocycle1& c, long q);
bool is_torsion(const Cocycle1& c);
long value_modulus(const Cocycle1& c);  // lcm of value orders; needs is_torsion

// rho(g)(x) = omega(g^-1 x g) omega(x)^-1 nu_g(x)
struct H1Witness {
  std::vector<Cyclotomic> omega;  // per point
  std::vector<int> nu;            // per base coset, ids into gamma.ambient
};
bool check_witness(const Cocycle1& c, const H1Witness& w);

// Exact decision over C^x: solves for the Gamma-part, then tests point stabilisers.
std::optional<H1Witness> h1_exact_solve(const Cocycle1& c);

struct LatticeVerdict {
  bool applicable = false;  // false when the cocycle is not torsion-valued
  long modulus = 0;         // solver modulus M'
  std::optional<H1Witness> witness;
};
// Exponent-lattice solve over Z/M' with M' = M * headroom, where headroom is the
// part of |base/N| |K/N| at primes of M, times q^extra for each such prime q.
LatticeVerdict h1_lattice_solve(const Cocycle1& c, int extra_headroom = 0);
// Same system at a caller-chosen modulus; needs every value order and exp(Lin(K/N)) to divide it.
LatticeVerdict h1_lattice_solve_at(const Cocycle1& c, long Mprime);
// Brute force over all omega: K/N -> W_M'. Only for tiny cases.
std::optional<H1Witness> h1_exhaustive_solve(const Cocycle1& c, long Mprime);

bool h1_equal(const Cocycle1& a, const Cocycle1& b);

}  // namespace tz
