#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistzeta/corpus.hpp"
#include "twistzeta/zeta.hpp"

namespace tz {

struct CheckResult {
  std::string name;
  std::string entry;  // corpus entry or fixture name
  int criterion = 0;  // acceptance criterion the check belongs to
  bool passed = true;
  long samples = 0;            // instances examined
  std::string counterexample;  // first failure, empty when passed
};

struct VerifyOptions {
  uint64_t seed = 20240601;
  int jobs = 1;
  int headroom = 1;  // lattice solves run with headroom - 1 extra prime powers, stability at headroom
  int pred_samples = 200;
  int coboundary_trials = 500;
};

// Every per-entry check on (G, N, p).
std::vector<CheckResult> verify_setup(const TwistSetup& S, const std::string& entry, const VerifyOptions& opt);
// Fixtures for the cohomology engines, independent of any entry.
std::vector<CheckResult> verify_cohomology_engines(const VerifyOptions& opt);
// Entries in the given order followed by the engine fixtures; parallel over entries.
std::vector<CheckResult> verify_corpus(const std::vector<std::string>& names, const VerifyOptions& opt);

// Cocycle identity on a factor set; the counterexample names the first failing triple.
CheckResult check_cocycle_identity(const Cocycle2& a, const std::string& entry);

// Factor set of Z -> G -> G/Z through the minimal section, pushed out along the sign of Z (|Z| = 2).
Cocycle2 central_sign_factor_set(const GroupPtr& G);

}  // namespace tz
