#include <functional>

#include "doctest.h"
#include "report.hpp"

using namespace tz;
using namespace tz::app;

namespace {

std::string data_file(const std::string& name) { return std::string(TZ_DATA_DIR) + "/groups/" + name; }

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.code;
  }
  return "";
}

}  // namespace

TEST_CASE("cyclotomic and root-of-unity JSON") {
  Cyclotomic z = Cyclotomic::zeta(5, 1) + Cyclotomic(Rational(1, 3));
  auto j = to_json(z);
  CHECK(j["m"] == 5);
  CHECK(j["c"].size() == 4);
  CHECK(j["c"][0] == "1/3");
  CHECK(j["c"][1] == "1");
  // equal values serialise identically whatever modulus they were computed in
  CHECK(to_json(Cyclotomic(-1L)) == to_json(Cyclotomic(RootOfUnity(2, 1))));
  CHECK(cyclotomic_from_json(j) == z);
  CHECK(cyclotomic_from_json(json::parse(R"({"m":4,"c":["2/4","0"]})")) == Cyclotomic(Rational(1, 2)));
  RootOfUnity w(12, 5);
  CHECK(to_json(w) == json::parse(R"({"m":12,"k":5})"));
  CHECK(root_from_json(to_json(w)) == w);
}

TEST_CASE("Dirichlet JSON is sorted and round-trips") {
  auto d = DirichletPoly::term(9, 2) + DirichletPoly::term(1, 1) + DirichletPoly::term(3, 4);
  auto j = to_json(d);
  CHECK(j.dump() == R"({"terms":[[1,1],[3,4],[9,2]]})");
  CHECK(dirichlet_from_json(j) == d);
}

TEST_CASE("certificates and tokens") {
  auto e = corpus_entry("q8");
  auto S = make_setup(e.G, e.N, e.p);
  auto cl = twist_classes(S.N, S.linG);
  auto ci = class_invariants(S, cl[1]);
  auto c = to_json(ci.C);
  REQUIRE(c["gens"].size() == 1);
  CHECK(c["evals"][0] == to_json(Cyclotomic(-1L)));
  for (const auto& term : c["gens"][0]) CHECK(term.size() == 3);
  auto t = h1_token_json(ci.mu_p);
  CHECK(t["modulus"].get<long>() >= 1);
  CHECK(t["table"].size() == ci.mu_p.val.size());
}

TEST_CASE("group specs: tables, permutations and subgroup parsing") {
  auto q8 = load_group_file(data_file("q8_table.json"));
  CHECK(q8.G->order() == 8);
  CHECK(q8.G->label(0) == "1");
  // input row 2 is -1; by label or by input index
  auto byLabel = parse_normal(q8, "-1");
  auto byIndex = parse_normal(q8, "2");
  CHECK(byLabel == byIndex);
  CHECK(byLabel.size() == 2);
  CHECK(parse_normal(q8, "i, j").size() == 8);

  auto d4 = load_group_file(data_file("d4_perm.json"));
  CHECK(d4.G->order() == 8);
  CHECK(parse_normal(d4, "(1 2 3 4)").size() == 4);
  CHECK(error_code([&] { parse_normal(d4, "(1 5)"); }) == "BAD_ELEMENT");
  CHECK(error_code([&] { parse_normal(d4, "99"); }) == "BAD_ELEMENT");

  auto j = json::parse(R"({"perm_gens": [[[1, 2]]], "points": 3})");
  CHECK(group_from_json(j, "inline").G->order() == 2);
  CHECK(error_code([] { group_from_json(json::parse(R"({"perm_gens": [[[1, 4]]], "points": 3})"), "x"); }) ==
        "NOT_PERMUTATION");
  CHECK(error_code([] { group_from_json(json::parse(R"({"table": [[0, 1], [0, 1]]})"), "x"); }) ==
        "GROUP_SPEC_INVALID");
  CHECK(error_code([] { group_from_json(json::parse(R"({"rows": 3})"), "x"); }) == "GROUP_SPEC_INVALID");
  CHECK(error_code([] { load_group_file("/nonexistent.json"); }) == "FILE_NOT_FOUND");
}

TEST_CASE("setup resolution and its error codes") {
  auto s4 = load_group_file(data_file("s4_perm.json"));
  RunConfig cfg;
  cfg.normal = "(1 2)(3 4),(1 3)(2 4)";
  auto S = resolve_setup(s4, cfg);
  CHECK(S.p == 2);
  CHECK(S.N.size() == 4);
  cfg.normal = "(1 2)";
  CHECK(error_code([&] { resolve_setup(s4, cfg); }) == "N_NOT_NORMAL");
  cfg.normal = "(1 2 3),(1 2)(3 4)";
  CHECK(error_code([&] { resolve_setup(s4, cfg); }) == "N_NOT_P_GROUP");
  cfg.prime = 3;
  cfg.normal = "(1 2)(3 4),(1 3)(2 4)";
  CHECK(error_code([&] { resolve_setup(s4, cfg); }) == "N_NOT_P_GROUP");
  cfg.prime = 4;
  CHECK(error_code([&] { resolve_setup(s4, cfg); }) == "BAD_PRIME");
  RunConfig none;
  CHECK(error_code([&] { resolve_setup(s4, none); }) == "NORMAL_REQUIRED");
  none.normal = "()";
  CHECK(error_code([&] { resolve_setup(s4, none); }) == "PRIME_REQUIRED");
  CHECK(error_code([] { load_corpus("nope"); }) == "UNKNOWN_CORPUS");
}

TEST_CASE("pipeline reports are deterministic and carry the schema") {
  for (const auto& name : {"q8", "sl23", "heis27_center"}) {
    CAPTURE(name);
    auto g = load_corpus(name);
    RunConfig one, many;
    many.jobs = 4;
    auto S = resolve_setup(g, one);
    auto a = pipeline_report(S, g, one).dump(2), b = pipeline_report(S, g, many).dump(2);
    CHECK(a == b);
    auto j = json::parse(a);
    CHECK(j["schema"] == "twistzeta/1");
    CHECK(j["zeta"]["agree"] == true);
    CHECK(j["zeta"]["assembled"] == j["zeta"]["brute"]);
  }
  auto q8 = pipeline_report(resolve_setup(load_corpus("q8"), {}), load_corpus("q8"), {});
  CHECK(q8["zeta"]["assembled"].dump() == R"({"terms":[[1,1],[2,1]]})");
}

TEST_CASE("character table, twist and invariant reports") {
  auto g = load_corpus("q8");
  auto ct = chartab_report(g, g.N);
  CHECK(ct["G"]["classes"].size() == 5);
  CHECK(ct["G"]["rows"].size() == 5);
  long sum = 0;
  for (const auto& row : ct["G"]["rows"]) sum += row["degree"].get<long>() * row["degree"].get<long>();
  CHECK(sum == 8);
  CHECK(ct["N"]["rows"].size() == 2);

  auto S = resolve_setup(g, {});
  auto tw = twist_report(S, g);
  REQUIRE(tw["classes"].size() == 2);
  for (const char* key : {"rep", "members", "degree", "K", "L", "Gamma"}) CHECK(tw["classes"][0].contains(key));
  CHECK(tw["classes"][1]["Gamma"].size() == 4);

  auto inv = invariants_report(S, g, {});
  CHECK(inv["routes_agree"] == true);
  REQUIRE(inv["classes"].size() == 2);
  const auto& c1 = inv["classes"][1];
  for (const char* key : {"C", "T", "Gamma", "routes"}) CHECK(c1.contains(key));
  CHECK(c1["routes"].contains("monomial"));
  CHECK(c1["routes"].contains("matrix"));
  CHECK(c1["C"]["evals"][0] == to_json(Cyclotomic(-1L)));
}

TEST_CASE("verify report") {
  std::vector<CheckResult> checks(2);
  checks[0].name = "a";
  checks[1].name = "b";
  checks[1].passed = false;
  checks[1].counterexample = "here";
  auto j = verify_report(checks);
  CHECK(j["passed"] == false);
  CHECK(j["checks"][1]["counterexample"] == "here");
  CHECK_FALSE(j["checks"][0].contains("counterexample"));
}
