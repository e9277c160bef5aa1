#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "twistzeta/inv.hpp"

namespace tz {

// Finite Dirichlet polynomial sum a_n n^-s; zero coefficients are never stored.
class DirichletPoly {
 public:
  DirichletPoly() = default;
  static DirichletPoly one() { return term(1, 1); }
  static DirichletPoly term(long n, const mpz_class& a);

  const std::map<long, mpz_class>& terms() const { return t_; }
  mpz_class coeff(long n) const;
  bool is_zero() const { return t_.empty(); }
  bool nonnegative() const;
  std::string str() const;  // "1 + 2*3^-s"

  DirichletPoly operator+(const DirichletPoly& o) const;
  DirichletPoly operator*(const DirichletPoly& o) const;  // Dirichlet convolution
  DirichletPoly shift(long m) const;                      // times m^-s
  DirichletPoly scale(const mpz_class& k) const;
  bool operator==(const DirichletPoly& o) const { return t_ == o.t_; }
  bool operator!=(const DirichletPoly& o) const { return !(*this == o); }

 private:
  void add_term(long n, const mpz_class& a);
  std::map<long, mpz_class> t_;
};

// Sum over Irr(H) of chi(1)^-s.
DirichletPoly rep_zeta(const Subgroup& H);
// Sum over twist classes of Irr(H) under Lin(G)|_H.
DirichletPoly brute_twist_zeta(const Subgroup& H, const std::vector<LinearChar>& linG);
// Whole group, twisting by its own linear characters.
DirichletPoly brute_twist_zeta(const GroupPtr& G);

// Sum over twist classes of L above theta_cls of (lambda(1)/theta(1))^-s.
// Throws std::logic_error if a ratio is not an integer.
DirichletPoly f_tilde(const TwistSetup& S, const Subgroup& L, const TwistClass& theta_cls);

struct ClassRecord {
  int cls = -1;  // index into ZetaClassification::classes
  long degree = 0;
  StabilizerData st;
  int gamma_id = -1;  // distinct (K, Gamma) pairs in order of appearance
  int c_id = -1;      // distinct (K_p, C) classes
  int t_id = -1;      // distinct T classes within (L, K, Gamma, C)
  int bucket = -1;
};

struct Bucket {
  Subgroup L, K;
  GammaGroup gamma;
  int c_id = -1, t_id = -1;
  std::vector<int> classes;  // ascending class indices
  DirichletPoly partial;     // sum of theta(1)^-s over members
  DirichletPoly f;           // f~ from the first member
  bool f_agrees = true;      // every member recomputed gives f (only when members are checked)
  std::vector<DirichletPoly> member_f;
};

struct ZetaOptions {
  int jobs = 1;
  bool check_members = false;  // recompute f~ for every bucket member
  InvariantOptions inv;
};

struct ZetaClassification {
  std::vector<TwistClass> classes;  // twist classes of N
  std::vector<ClassRecord> records;
  std::vector<Bucket> buckets;
  DirichletPoly assembled, brute;
  DirichletPoly n_series;   // sum of buckets' partial series
  bool integral = true;     // the rational assembly cleared its denominators
  bool partition_ok = true; // n_series equals the brute twist series of N
  bool agree = false;       // assembled == brute
};

// Classifies twist classes of N, buckets them by (L, K, Gamma, C, T) and assembles
// Z~_G = sum |G:L|^-1 |G:L|^-s f~ * partial. Deterministic for any job count.
ZetaClassification assemble_twist_zeta(const TwistSetup& S, const ZetaOptions& opt = {});

}  // namespace tz
