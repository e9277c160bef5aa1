#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "report.hpp"

using namespace tz;
using namespace tz::app;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2 };

void emit(const json& j, const RunConfig& cfg) {
  std::string text = j.dump(2) + "\n";
  if (cfg.out) {
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f) throw InputError("OUTPUT_UNWRITABLE", "cannot write " + *cfg.out);
    f << text;
  } else {
    std::cout << text;
  }
}

LoadedGroup load(const RunConfig& cfg) {
  if (cfg.group_file && cfg.corpus) throw InputError("CONFLICTING_INPUT", "give either --group or --corpus");
  if (cfg.group_file) return load_group_file(*cfg.group_file);
  if (cfg.corpus) return load_corpus(*cfg.corpus);
  throw InputError("NO_INPUT", "give --group FILE or --corpus NAME");
}

void validate(const RunConfig& cfg) {
  if (cfg.headroom < 1) throw InputError("BAD_HEADROOM", "--headroom must be at least 1");
  if (cfg.jobs < 1) throw InputError("BAD_JOBS", "--jobs must be at least 1");
}

int run(const std::string& cmd, const RunConfig& cfg) {
  validate(cfg);
  if (cmd == "verify") {
    VerifyOptions vo;
    vo.seed = cfg.seed;
    vo.jobs = cfg.jobs;
    vo.headroom = cfg.headroom;
    std::vector<CheckResult> checks;
    if (cfg.group_file || cfg.normal || cfg.prime) {
      auto g = load(cfg);
      checks = verify_setup(resolve_setup(g, cfg), g.source, vo);
    } else if (cfg.corpus) {
      corpus_entry(*cfg.corpus);  // validates the name
      checks = verify_corpus({*cfg.corpus}, vo);
    } else {
      checks = verify_corpus(corpus_names(), vo);
    }
    auto j = verify_report(checks);
    emit(j, cfg);
    return j["passed"].get<bool>() ? kOk : kVerifyFailed;
  }
  auto g = load(cfg);
  if (cmd == "chartab") {
    std::optional<Subgroup> N = g.N;
    if (cfg.normal) N = parse_normal(g, *cfg.normal);
    emit(chartab_report(g, N), cfg);
    return kOk;
  }
  auto S = resolve_setup(g, cfg);
  if (cmd == "twist") {
    emit(twist_report(S, g), cfg);
    return kOk;
  }
  if (cmd == "invariants") {
    auto j = invariants_report(S, g, cfg);
    emit(j, cfg);
    return j["routes_agree"].get<bool>() ? kOk : kVerifyFailed;
  }
  auto j = pipeline_report(S, g, cfg);
  emit(j, cfg);
  return j["zeta"]["agree"].get<bool>() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twist classes, cohomological invariants and twist zeta polynomials of finite groups"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string group, corpus, normal, out;
  long prime = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", group, "group spec JSON file");
    sub->add_option("--corpus", corpus, "built-in corpus entry");
    sub->add_option("--normal", normal, "generators of N: labels or indices, comma separated");
    sub->add_option("--prime", prime, "the prime p");
    sub->add_option("--headroom", cfg.headroom, "lattice modulus headroom (>= 1)");
    sub->add_option("--seed", cfg.seed, "seed for randomised checks");
    sub->add_option("--jobs", cfg.jobs, "worker threads");
    sub->add_option("--out", out, "write the report here instead of stdout");
  };
  for (auto [name, desc] : {std::pair{"pipeline", "classify, assemble and compare with the brute-force oracle"},
                            {"verify", "run every property check"},
                            {"chartab", "character table of G (and N)"},
                            {"twist", "twist classes of N with stabilisers and Gamma"},
                            {"invariants", "C and T invariants through both extension routes"}})
    add_common(app.add_subcommand(name, desc));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << error_json("BAD_ARGUMENTS", e.what()).dump(2) << "\n";
    return kInputError;
  }
  if (!group.empty()) cfg.group_file = group;
  if (!corpus.empty()) cfg.corpus = corpus;
  if (!normal.empty()) cfg.normal = normal;
  if (prime != 0) cfg.prime = prime;
  if (!out.empty()) cfg.out = out;
  std::string cmd = app.get_subcommands().front()->get_name();

  try {
    return run(cmd, cfg);
  } catch (const InputError& e) {
    auto j = error_json(e.code, e.what());
    std::cerr << e.code << ": " << e.what() << "\n";
    try {
      emit(j, cfg);
    } catch (const InputError&) {
      std::cout << j.dump(2) << "\n";
    }
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    std::cout << error_json("INTERNAL", e.what()).dump(2) << "\n";
    return kVerifyFailed;
  }
}
