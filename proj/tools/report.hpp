#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twistzeta/verify.hpp"

namespace tz::app {

using json = nlohmann::json;

inline constexpr const char* kSchema = "twistzeta/1";

json to_json(const Rational& r);
json to_json(const Cyclotomic& c);
json to_json(const RootOfUnity& w);
json to_json(const DirichletPoly& d);
json to_json(const H2Certificate& c);
json to_json(const CharacterTable& t);
json h1_token_json(const Cocycle1& c);

Cyclotomic cyclotomic_from_json(const json& j);
RootOfUnity root_from_json(const json& j);
DirichletPoly dirichlet_from_json(const json& j);

// Canonical generators: greedy over the members in ascending order.
std::vector<int> canonical_gens(const Subgroup& H);

struct LoadedGroup {
  GroupPtr G;
  std::string source;
  std::vector<int> input_index;  // table input row -> element index; empty for permutation specs
  std::optional<Subgroup> N;     // designated by a corpus entry
  std::optional<long> p;
};

// {"table": [[...]], "labels": [...]} or {"perm_gens": [[[1,2],[3,4]], ...], "points": k}
LoadedGroup group_from_json(const json& spec, const std::string& source);
LoadedGroup load_group_file(const std::string& path);
LoadedGroup load_corpus(const std::string& name);

// Comma-separated generators; each token is an element label or an integer
// (input row for table specs, element index otherwise).
Subgroup parse_normal(const LoadedGroup& g, const std::string& list);

struct RunConfig {
  std::optional<std::string> group_file, corpus, normal;
  std::optional<long> prime;
  int headroom = 1;
  uint64_t seed = 20240601;
  int jobs = 1;
  std::optional<std::string> out;
};

// Resolves G, N and p; throws InputError on invalid input.
TwistSetup resolve_setup(const LoadedGroup& g, const RunConfig& cfg);

json error_json(const std::string& code, const std::string& message);

json pipeline_report(const TwistSetup& S, const LoadedGroup& g, const RunConfig& cfg);
json chartab_report(const LoadedGroup& g, const std::optional<Subgroup>& N);
json twist_report(const TwistSetup& S, const LoadedGroup& g);
json invariants_report(const TwistSetup& S, const LoadedGroup& g, const RunConfig& cfg);
json verify_report(const std::vector<CheckResult>& checks);

}  // namespace tz::app
