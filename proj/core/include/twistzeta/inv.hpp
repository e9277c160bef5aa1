#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "twistzeta/cohml.hpp"

namespace tz {

// Small dense matrix over the cyclotomics.
struct CMatrix {
  int n = 0;
  std::vector<Cyclotomic> a;  // row-major

  static CMatrix identity(int n);
  const Cyclotomic& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
  Cyclotomic& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  Cyclotomic trace() const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix scaled(const Cyclotomic& s) const;
  bool operator==(const CMatrix& o) const { return n == o.n && a == o.a; }
};

// Projective representation of dom; mat indexed by parent element, empty off dom.
struct ProjectiveRep {
  Subgroup dom;
  int dim = 0;
  std::vector<CMatrix> mat;
};

// Factor set on B/N read at elements of B (or of any subgroup mapping into B/N).
struct FactorSet {
  Quotient q;
  Cocycle2 c;
  Cyclotomic at(int x, int y) const { return c.val[q.proj[x]][q.proj[y]]; }
};

enum class ExtRoute { Monomial, Matrix };

struct ProjectiveCharacter {
  Subgroup K, N;
  std::vector<Cyclotomic> val;  // per parent element, zero off K
  FactorSet alpha;              // descended to K/N
  ExtRoute route = ExtRoute::Monomial;
  std::shared_ptr<const ProjectiveRep> rep;
};

// Theta = Ind_{N cap H}^N chi as monomial matrices.
ProjectiveRep monomial_model(const MonomialPair& pair, const Subgroup& N);

// Factor set of P(x)P(y) = alpha(x,y)P(xy), descended along dom -> dom/N.
// Throws std::logic_error if it is not constant on N-cosets.
FactorSet descend_factor_set(const ProjectiveRep& P, const Subgroup& N);

// Block induction from P.dom to `to`; alpha must restrict to the factor set of P
// (pass nullptr for the trivial factor set).
ProjectiveRep proj_induce(const ProjectiveRep& P, const Subgroup& to, const FactorSet* alpha);

// Checks the strong-extension invariants and packages the character.
ProjectiveCharacter make_projective_character(std::shared_ptr<const ProjectiveRep> rep, const Subgroup& N,
                                              const Character& theta, ExtRoute route);

// chi_hat(y_i t_i n) = chi(n) on H, induced projectively to td.Kp.
ProjectiveCharacter strong_extension_monomial(const MonomialPair& pair, const TransversalData& td);
// Intertwiners P_y for the given coset representatives of N in K, first nonzero entry 1.
ProjectiveCharacter strong_extension_matrix(const MonomialPair& pair, const Subgroup& K,
                                            const std::vector<int>& coset_reps);
// coset representatives of N in K, smallest element of each coset
std::vector<int> canonical_coset_reps(const Subgroup& K, const Subgroup& N);

const Cocycle2& factor_set(const ProjectiveCharacter& th);
// (^g rep)(x) = rep(g^-1 x g); g must normalise K
ProjectiveCharacter conjugate_extension(const ProjectiveCharacter& th, int g);
// multiply by a function on K/N (indexed by th.alpha.q cosets); factor set becomes alpha * d(beta)
ProjectiveCharacter scale_extension(const ProjectiveCharacter& th, const std::vector<Cyclotomic>& beta);

// mu(gN)(xN) = ^g th(xn) / (th(xn) psi_g(xn)) at the first support point of each coset.
Cocycle1 mu_cocycle(const TwistSetup& S, const ProjectiveCharacter& th, const Subgroup& L, const GammaGroup& gamma,
                    uint64_t psi_reselect = 0);

// Same module object for structurally equal (base, K, N, Gamma); makes cocycles comparable.
std::shared_ptr<const H1Module> shared_module(const Subgroup& base, const Subgroup& K, const Subgroup& N,
                                              const GammaGroup& gamma);

struct InvariantOptions {
  int member = -1;  // which member of the class plays theta; -1 for the representative
  ExtRoute route = ExtRoute::Monomial;
  uint64_t transversal_seed = 0;
  uint64_t psi_reselect = 0;
};

struct ClassInvariants {
  TwistClass cls;
  int member = -1;
  Character theta;
  StabilizerData st;
  Subgroup Kp, Lp;
  MonomialPair pair;  // for theta at Kp
  TransversalData td;
  ProjectiveCharacter ext_p;  // strong extension on Kp
  ProjectiveCharacter ext;    // strong extension on K
  GammaGroup gamma;           // Gamma_{K, theta}
  GammaGroup gamma_p;         // its restriction to Kp
  H2Certificate C;            // at Kp
  Cocycle1 mu_p;              // at (Lp, Kp, Gamma_p)
};

ClassInvariants class_invariants(const TwistSetup& S, const TwistClass& tc, const InvariantOptions& opt = {});

H2Certificate c_invariant(const ClassInvariants& ci);
const Cocycle1& t_invariant_token(const ClassInvariants& ci);

// Direct route: exact H^1 solve of the ratio. Throws std::invalid_argument("C-invariants differ")
// when the certificates disagree, and on mismatched (L, K, Gamma).
bool t_equal(const ClassInvariants& a, const ClassInvariants& b);
// Aligns factor sets, then solves the torsion ratio on the exponent lattice.
bool t_equal_lattice(const ClassInvariants& a, const ClassInvariants& b, int extra_headroom = 0);
// Coboundary search over the predicate layer.
bool t_equal_linearised(const TwistSetup& S, const ClassInvariants& a, const ClassInvariants& b);
// Is the T class of a equal to the class of target (a torsion cocycle on a.mu_p's module)?
bool t_class_direct(const ClassInvariants& a, const Cocycle1& target);
bool t_class_linearised(const TwistSetup& S, const ClassInvariants& a, const Cocycle1& target);

// ---- predicate layer (indices into td.y, 0-based; n, n2 are N elements) ----

// y_j n2 in ^{y_i n} H, decided through the normaliser / chi-fixing condition
bool pred_A(const MonomialPair& pair, const TransversalData& td, int i, int j, int n, int n2);
// ^{y_i n} chi_hat (y_j n2) by the closed form; needs pred_A(i, j, n, n2)
RootOfUnity conj_chi_hat(const MonomialPair& pair, const TransversalData& td, int i, int j, int n, int n2);
// chi_hat(y_j n2) for y_j n2 in H
RootOfUnity chi_hat_at(const MonomialPair& pair, const TransversalData& td, int j, int n2);
// Gamma_{Kp} through the C-predicate
std::vector<int> gamma_via_predicates(const TwistSetup& S, const ClassInvariants& ci);

// Exponent tables over Z/M indexed [i][k], i < u' (L_p cosets), k < u (K_p cosets).
using ZTable = std::vector<std::vector<long>>;
// z_{gamma(i,j), k} = z_{ik} + z_{j, kappa(i,k)}
bool zp_cocycle_condition(const ZTable& z, const TransversalData& td, long M);
// z_{ik} = b_{kappa(i,k)} - b_k
ZTable bp_coboundary(const std::vector<long>& b, const TransversalData& td, long M);

// ---- full level (L, K, Gamma) ----

struct FullLevelData {
  Cocycle1 mu;
  H2Certificate C;  // at K
  bool torsion = false;
};
FullLevelData full_level(const TwistSetup& S, const ClassInvariants& ci, uint64_t psi_reselect = 0);

struct FullLevelVerdict {
  bool exact = false;
  std::optional<bool> lattice;  // composite modulus, when both factor sets are torsion
  std::optional<bool> crt;      // conjunction of the q-primary verdicts
};
FullLevelVerdict t_equal_full(const ClassInvariants& a, const FullLevelData& fa, const ClassInvariants& b,
                              const FullLevelData& fb);

// mu restricted to a Sylow q-subgroup of L over N is a coboundary (exact solver witness).
bool q_restriction_trivial(const ClassInvariants& ci, const FullLevelData& f, long q);

}  // namespace tz
