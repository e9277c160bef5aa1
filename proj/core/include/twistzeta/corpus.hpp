#pragma once

#include <string>
#include <vector>

#include "twistzeta/group.hpp"

namespace tz {

struct CorpusEntry {
  std::string name;
  std::string description;
  GroupPtr G;
  Subgroup N;
  long p = 2;
};

std::vector<std::string> corpus_names();
// the entries named in the acceptance corpus, without the extra sanity groups
std::vector<std::string> core_corpus_names();
CorpusEntry corpus_entry(const std::string& name);  // throws InputError("UNKNOWN_CORPUS")

// Named groups without a distinguished subgroup, used by tests.
GroupPtr make_cyclic(int n);
GroupPtr make_dihedral(int n);  // order 2n
GroupPtr make_quaternion8();
GroupPtr make_heisenberg27();
GroupPtr make_extraspecial27_exp9();
GroupPtr make_modular16();
GroupPtr make_sl23();
GroupPtr make_symmetric(int n);
GroupPtr make_alternating4();
GroupPtr make_direct_product(const GroupPtr& a, const GroupPtr& b);

}  // namespace tz
