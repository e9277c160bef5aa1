#include <set>

#include "doctest.h"
#include "twistzeta/verify.hpp"

using namespace tz;

namespace {

bool same_results(const std::vector<CheckResult>& a, const std::vector<CheckResult>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || a[i].entry != b[i].entry || a[i].passed != b[i].passed ||
        a[i].samples != b[i].samples || a[i].counterexample != b[i].counterexample)
      return false;
  return true;
}

}  // namespace

TEST_CASE("every check passes on the corpus") {
  VerifyOptions opt;
  opt.jobs = 4;
  auto res = verify_corpus(corpus_names(), opt);
  std::set<int> criteria;
  for (const auto& r : res) {
    CAPTURE(r.entry);
    CAPTURE(r.name);
    CAPTURE(r.counterexample);
    CHECK(r.passed);
    criteria.insert(r.criterion);
    if (r.name == "predicate_A_membership") CHECK(r.samples >= 200);
    if (r.name == "coboundary_certificates_trivial") CHECK(r.samples >= 500);
  }
  CHECK(criteria == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("results do not depend on the job count") {
  VerifyOptions one, many;
  many.jobs = 3;
  std::vector<std::string> names{"q8", "sl23", "c4_c2"};
  CHECK(same_results(verify_corpus(names, one), verify_corpus(names, many)));
}

TEST_CASE("abelian entries pass with trivial invariants") {
  auto e = corpus_entry("c4_c2");
  auto res = verify_setup(make_setup(e.G, e.N, e.p), "c4_c2", {});
  for (const auto& r : res) {
    CAPTURE(r.name);
    CHECK(r.passed);
  }
}

TEST_CASE("a corrupted factor set is located") {
  auto a = central_sign_factor_set(make_quaternion8());
  CHECK(check_cocycle_identity(a, "q8").passed);
  a.val[2][3] = -a.val[2][3] * Cyclotomic(RootOfUnity(3, 1));
  auto r = check_cocycle_identity(a, "q8");
  CHECK_FALSE(r.passed);
  CHECK(r.counterexample.rfind("triple (", 0) == 0);
  a.val[0][0] = Cyclotomic(0L);
  CHECK(check_cocycle_identity(a, "q8").counterexample == "zero value at (0,0)");
}
