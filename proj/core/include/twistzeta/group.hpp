#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tz {

struct InputError : std::runtime_error {
  InputError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code(std::move(code)) {}
  std::string code;
};

// Multiplication-table group, identity at index 0.
class FiniteGroup {
 public:
  static constexpr int kDefaultCap = 2000;

  FiniteGroup(int n, std::vector<int> table, std::vector<std::string> labels = {},
              bool verify = true);

  int order() const { return n_; }
  int mul(int a, int b) const { return tab_[static_cast<size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  // g x g^-1
  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
  int pow(int a, long k) const;
  int elem_order(int a) const { return ord_[a]; }
  int exponent() const { return exp_; }
  bool is_abelian() const { return abelian_; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& table() const { return tab_; }

  int num_classes() const { return static_cast<int>(class_reps_.size()); }
  int class_of(int x) const { return class_of_[x]; }
  int class_rep(int c) const { return class_reps_[c]; }
  int class_size(int c) const { return static_cast<int>(class_members_[c].size()); }
  const std::vector<int>& class_members(int c) const { return class_members_[c]; }
  int inverse_class(int c) const { return class_of_[inv_[class_reps_[c]]]; }

 private:
  int n_;
  std::vector<int> tab_, inv_, ord_;
  std::vector<std::string> labels_;
  int exp_ = 1;
  bool abelian_ = true;
  std::vector<int> class_of_, class_reps_;
  std::vector<std::vector<int>> class_members_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// table[i][j] = index of label_i * label_j; identity moved to the front
GroupPtr group_from_table(const std::vector<std::vector<int>>& table,
                          const std::vector<std::string>& labels = {});
// generators as lists of cycles over points 1..points
GroupPtr group_from_permutations(const std::vector<std::vector<std::vector<int>>>& gens,
                                 int points, int cap = FiniteGroup::kDefaultCap);
// generators given as image arrays over 0..points-1
GroupPtr group_from_images(const std::vector<std::vector<int>>& gens, int cap = FiniteGroup::kDefaultCap);

struct Subgroup {
  GroupPtr G;
  std::vector<int> members;  // sorted
  std::vector<int> gens;
  std::vector<char> mask;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int x) const { return mask[x] != 0; }
  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }
  bool operator<(const Subgroup& o) const {
    return members.size() != o.members.size() ? members.size() < o.members.size()
                                              : members < o.members;
  }
};

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<int>& gens);
Subgroup whole_group(const GroupPtr& G);
Subgroup trivial_subgroup(const GroupPtr& G);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);
bool is_subset(const Subgroup& a, const Subgroup& b);
// a normalised by every element of b
bool normalizes(const Subgroup& b, const Subgroup& a);
bool is_normal(const Subgroup& a);
bool is_p_group(const Subgroup& a, long p);
bool is_nilpotent(const GroupPtr& G);
Subgroup conjugate_subgroup(const Subgroup& H, int g);  // g H g^-1

Subgroup derived_subgroup(const Subgroup& K);
Subgroup center(const GroupPtr& G);

// all subgroups of K, sorted by (order, members)
std::vector<Subgroup> all_subgroups(const Subgroup& K);

// Subgroup viewed as a group of its own.
struct Embedded {
  GroupPtr H;
  std::vector<int> to_parent;    // H index -> G index
  std::vector<int> from_parent;  // G index -> H index or -1
  Subgroup sub;
};
Embedded embed(const Subgroup& S);

// K/N with N normal in K; cosets ordered by smallest element.
struct Quotient {
  GroupPtr Q;
  Subgroup K, N;
  std::vector<int> proj;  // G index -> coset index or -1 outside K
  std::vector<int> rep;   // coset -> smallest G element
};
Quotient quotient_group(const Subgroup& K, const Subgroup& N);

Subgroup sylow_over(const Subgroup& N, const Subgroup& L, long q);

struct Abelianization {
  Subgroup derived;
  std::vector<int> gens;       // G elements
  std::vector<long> orders;
  std::vector<std::vector<long>> coords;  // per G element, exponents on gens
};
Abelianization abelianization(const GroupPtr& G);

struct TransversalData {
  int m = 1, u = 1, uprime = 1;
  std::vector<int> y;
  std::vector<int> t;             // size u
  std::vector<int> coset_of;      // g -> i with g in y_i N
  std::vector<int> coset_n;       // g -> n with g = y_i n
  std::vector<std::vector<int>> kappa, d, gamma, a;
  Subgroup N, Kp, Lp, H;

  int phi(int i, int n) const;      // y_i n y_i^-1
  int phi_inv(int i, int n) const;  // y_i^-1 n y_i
  GroupPtr G() const { return N.G; }
};

// shuffle_seed: 0 keeps canonical representatives; otherwise block order
// and coset representatives are randomised (y_1 = 1 always).
TransversalData transversal_data(const Subgroup& N, const Subgroup& Kp, const Subgroup& Lp,
                                 const Subgroup& H, uint64_t shuffle_seed = 0);

}  // namespace tz
