#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "twistzeta/chars.hpp"

namespace tz {

// G, its distinguished normal p-subgroup N, and the data every stage shares.
struct TwistSetup {
  GroupPtr G;
  Subgroup all;  // G as a subgroup of itself
  Subgroup N;
  long p = 2;
  std::vector<LinearChar> linG;
  std::shared_ptr<const CharacterTable> irrN;
};

// Validates p prime, N normal (N_NOT_NORMAL) and N a p-group (N_NOT_P_GROUP).
TwistSetup make_setup(const GroupPtr& G, const Subgroup& N, long p);

struct TwistClass {
  Subgroup H;
  std::vector<int> members;  // indices into character_table(H)->irr, ascending
  int rep = -1;              // smallest member
  long degree = 0;
};

// Partition of Irr(H) into orbits under multiplication by Lin(G)|_H.
std::vector<TwistClass> twist_classes(const Subgroup& H, const std::vector<LinearChar>& linG);
// position of the class containing irreducible index i, or -1
int class_containing(const std::vector<TwistClass>& classes, int i);

struct StabilizerData {
  Subgroup K;  // Stab_G(theta)
  Subgroup L;  // Stab_G(twist class of theta)
};
StabilizerData stabilizers(const TwistSetup& S, const TwistClass& tc);
// same, using an arbitrary member as the reference character
StabilizerData stabilizers_for(const TwistSetup& S, const TwistClass& tc, int member);

// All psi in Lin(G) (ids into S.linG) with ^g theta = theta psi|_N.
std::vector<int> psi_candidates(const TwistSetup& S, const Character& theta, int g);
// reselect = 0 picks the first candidate; other values pick deterministically
// among all candidates, to exercise choice-independence.
std::optional<int> psi_for(const TwistSetup& S, const Character& theta, int g, uint64_t reselect = 0);

struct GammaGroup {
  Subgroup K;
  std::vector<LinearChar> ambient;  // Lin(K/N)
  std::vector<int> members;         // ascending ids into ambient
  std::vector<int> gens;

  int find(const LinearChar& nu) const;  // ambient id with the same values on K, or -1
  bool contains_id(int id) const;
  bool operator==(const GammaGroup& o) const { return K == o.K && members == o.members; }
  bool operator!=(const GammaGroup& o) const { return !(*this == o); }
};

// Builds Lin(K/N) and picks out nu with theta_hat * eps|_K = theta_hat * nu for some
// eps in Lin(G). theta_hat is any strong extension (values on K).
GammaGroup gamma_group(const TwistSetup& S, const Character& theta_hat, const Subgroup& K);
// The group with given member set inside Lin(K/N), e.g. a restriction image.
GammaGroup gamma_from_members(const TwistSetup& S, const Subgroup& K, std::vector<int> members);
// Restriction of every member to K' (K' <= K), as a subgroup of Lin(K'/N).
GammaGroup gamma_restrict(const TwistSetup& S, const GammaGroup& g, const Subgroup& Kprime);

struct GammaStructure {
  std::vector<int> complement;  // Gamma^0_K, ids into Lin(K/N)
  std::vector<int> p_part;      // {nu_(p)}
  GammaGroup restricted;        // Gamma_p inside Lin(K_p/N)
  bool splits = false;          // Gamma = Gamma^0 x Gamma_(p), trivial intersection
  bool injective = false;       // restriction injective on Gamma_(p) with image Gamma_p
};
GammaStructure gamma_structure(const TwistSetup& S, const GammaGroup& gamma, const Subgroup& Kp);

// Does Res_N of the representative of lam have a constituent in theta_cls (a class of N)?
bool lies_over(const TwistClass& lam, const TwistClass& theta_cls);
// Irr~(H | theta_cls) as positions into classes_of_H.
std::vector<int> classes_over(const std::vector<TwistClass>& classes_of_H, const TwistClass& theta_cls);

// Twist class of Ind_H^{H'} of the representative; -1 if reducible.
int twist_induce(const TwistClass& from, const Subgroup& to, const std::vector<TwistClass>& to_classes);

}  // namespace tz
