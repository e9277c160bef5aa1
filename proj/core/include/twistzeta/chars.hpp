#pragma once

#include <memory>
#include <vector>

#include "twistzeta/cyclo.hpp"
#include "twistzeta/group.hpp"

namespace tz {

// Class function on a subgroup, stored per parent-group element (zero off dom).
struct Character {
  Subgroup dom;
  std::vector<Cyclotomic> val;

  const Cyclotomic& operator()(int x) const { return val[x]; }
  long degree() const;
  bool operator==(const Character& o) const;
  bool operator!=(const Character& o) const { return !(*this == o); }
};

// Degree-one character; val indexed by parent element (1 off dom).
struct LinearChar {
  Subgroup dom;
  std::vector<RootOfUnity> val;
  std::vector<long> coords;  // exponents on the abelianisation generators
  int id = -1;               // position in the enumeration of linear_characters(dom)

  const RootOfUnity& operator()(int x) const { return val[x]; }
  bool is_trivial() const;
  LinearChar operator*(const LinearChar& o) const;  // pointwise, on the smaller domain
  LinearChar inverse() const;
  LinearChar restrict_to(const Subgroup& S) const;
  Character as_character() const;
  bool same_on(const LinearChar& o, const Subgroup& S) const;
};

enum class CharEngine { Dixon, Monomial };

struct CharacterTable {
  Subgroup S;
  std::vector<int> class_reps;  // parent indices, in the embedded group's class order
  std::vector<int> class_sizes;
  long exponent = 1;
  std::vector<Character> irr;  // sorted by degree, trivial first, then values

  int index_of(const Character& c) const;  // -1 when absent
};

// Cached per subgroup and engine; thread-safe.
std::shared_ptr<const CharacterTable> character_table(const Subgroup& S,
                                                      CharEngine engine = CharEngine::Dixon);

// Lin(S), ordered by exponent vectors on the abelianisation generators.
std::vector<LinearChar> linear_characters(const Subgroup& S);
// Lin(K/N) as characters of K.
std::vector<LinearChar> linear_characters_mod(const Subgroup& K, const Subgroup& N);

Character induce(const Character& f, const Subgroup& to);
Character restrict_char(const Character& f, const Subgroup& to);
Cyclotomic inner_product(const Character& a, const Character& b);
// (^g f)(x) = f(g^-1 x g)
Character conj_character(const Character& f, int g);
Character twist_by(const Character& f, const LinearChar& psi);

struct MonomialPair {
  Subgroup H;       // HN = K_p
  Subgroup NH;      // N cap H
  LinearChar chi;   // on N cap H, H-invariant
  Character theta;  // Ind_{N cap H}^N chi
};

// First pair in the canonical subgroup enumeration of K_p. Throws
// std::runtime_error("monomial search exhausted") when none exists.
MonomialPair monomial_pair(const Character& theta, const Subgroup& N, const Subgroup& Kp);
bool check_monomial_pair(const MonomialPair& mp, const Subgroup& N, const Subgroup& Kp);

// Does tau in Lin(N) extend to psi in Lin(G) with psi(y_i) = sigma_i for i < u?
// sigma has length td.u; sigma[0] must be 1.
bool lin_extension_test(const LinearChar& tau, const std::vector<RootOfUnity>& sigma,
                        const TransversalData& td, long p);

}  // namespace tz
