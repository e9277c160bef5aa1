#include "report.hpp"

#include <fstream>

namespace tz::app {

json to_json(const Rational& r) { return r.get_str(); }

json to_json(const Cyclotomic& value) {
  Cyclotomic c = value.shrink();
  json coeffs = json::array();
  for (const auto& r : c.coeffs()) coeffs.push_back(to_json(r));
  return {{"m", c.modulus()}, {"c", coeffs}};
}

json to_json(const RootOfUnity& w) { return {{"m", w.modulus()}, {"k", w.exponent()}}; }

json to_json(const DirichletPoly& d) {
  json terms = json::array();
  for (const auto& [n, a] : d.terms()) {
    json coef = a.fits_slong_p() ? json(a.get_si()) : json(a.get_str());
    terms.push_back({n, coef});
  }
  return {{"terms", terms}};
}

json to_json(const H2Certificate& c) {
  json gens = json::array();
  if (c.basis)
    for (const auto& chain : c.basis->gens) {
      json terms = json::array();
      for (const auto& t : chain) {
        json coef = t.coef.fits_slong_p() ? json(t.coef.get_si()) : json(t.coef.get_str());
        terms.push_back({t.x, t.y, coef});
      }
      gens.push_back(terms);
    }
  json evals = json::array();
  for (const auto& e : c.evals) evals.push_back(to_json(e));
  return {{"gens", gens}, {"evals", evals}};
}

json to_json(const CharacterTable& t) {
  json classes = json::array();
  for (size_t i = 0; i < t.class_reps.size(); ++i) classes.push_back({{"rep", t.class_reps[i]}, {"size", t.class_sizes[i]}});
  json rows = json::array();
  for (const auto& chi : t.irr) {
    json vals = json::array();
    for (int r : t.class_reps) vals.push_back(to_json(chi(r)));
    rows.push_back({{"degree", chi.degree()}, {"values", vals}});
  }
  return {{"order", t.S.size()}, {"classes", classes}, {"rows", rows}};
}

json h1_token_json(const Cocycle1& c) {
  json table = json::array();
  if (is_torsion(c)) {
    long M = value_modulus(c);
    for (const auto& row : c.val) {
      json r = json::array();
      for (const auto& v : row) r.push_back(v.as_root_of_unity()->exponent_over(M));
      table.push_back(r);
    }
    return {{"modulus", M}, {"table", table}};
  }
  for (const auto& row : c.val) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    table.push_back(r);
  }
  return {{"modulus", 0}, {"table", table}};
}

Cyclotomic cyclotomic_from_json(const json& j) {
  long m = j.at("m").get<long>();
  std::vector<Rational> raw;
  for (const auto& s : j.at("c")) {
    Rational r(s.get<std::string>());
    r.canonicalize();
    raw.push_back(r);
  }
  return Cyclotomic::from_raw(m, raw);
}

RootOfUnity root_from_json(const json& j) { return RootOfUnity(j.at("m").get<long>(), j.at("k").get<long>()); }

DirichletPoly dirichlet_from_json(const json& j) {
  DirichletPoly d;
  for (const auto& t : j.at("terms")) {
    mpz_class a = t.at(1).is_string() ? mpz_class(t.at(1).get<std::string>()) : mpz_class(t.at(1).get<long>());
    d = d + DirichletPoly::term(t.at(0).get<long>(), a);
  }
  return d;
}

std::vector<int> canonical_gens(const Subgroup& H) { return subgroup_closure(H.G, H.members).gens; }

LoadedGroup group_from_json(const json& spec, const std::string& source) {
  LoadedGroup out;
  out.source = source;
  try {
    if (spec.contains("table")) {
      auto table = spec.at("table").get<std::vector<std::vector<int>>>();
      std::vector<std::string> labels;
      if (spec.contains("labels")) labels = spec.at("labels").get<std::vector<std::string>>();
      out.G = group_from_table(table, labels);
      int n = static_cast<int>(table.size()), e = 0;
      for (int i = 0; i < n; ++i) {
        bool id = true;
        for (int x = 0; x < n && id; ++x) id = table[i][x] == x && table[x][i] == x;
        if (id) {
          e = i;
          break;
        }
      }
      for (int i = 0; i < n; ++i) out.input_index.push_back(i == e ? 0 : (i < e ? i + 1 : i));
    } else if (spec.contains("perm_gens")) {
      auto gens = spec.at("perm_gens").get<std::vector<std::vector<std::vector<int>>>>();
      out.G = group_from_permutations(gens, spec.at("points").get<int>());
    } else {
      throw InputError("GROUP_SPEC_INVALID", "group spec needs \"table\" or \"perm_gens\"");
    }
  } catch (const json::exception& ex) {
    throw InputError("GROUP_SPEC_INVALID", ex.what());
  }
  return out;
}

LoadedGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("FILE_NOT_FOUND", "cannot open " + path);
  json spec;
  try {
    in >> spec;
  } catch (const json::exception& ex) {
    throw InputError("JSON_PARSE", ex.what());
  }
  return group_from_json(spec, path);
}

LoadedGroup load_corpus(const std::string& name) {
  auto e = corpus_entry(name);
  LoadedGroup out;
  out.G = e.G;
  out.source = "corpus:" + name;
  out.N = e.N;
  out.p = e.p;
  return out;
}

Subgroup parse_normal(const LoadedGroup& g, const std::string& list) {
  // commas inside parentheses belong to a label
  std::vector<std::string> toks{""};
  int depth = 0;
  for (char ch : list) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0)
      toks.emplace_back();
    else
      toks.back() += ch;
  }
  std::vector<int> gens;
  for (auto tok : toks) {
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (tok.empty()) continue;
    int found = -1;
    for (int x = 0; x < g.G->order() && found < 0; ++x)
      if (g.G->label(x) == tok) found = x;
    if (found < 0) {
      size_t used = 0;
      long v = -1;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 0 || v >= g.G->order())
        throw InputError("BAD_ELEMENT", "unknown element \"" + tok + "\"");
      found = g.input_index.empty() ? static_cast<int>(v) : g.input_index[v];
    }
    gens.push_back(found);
  }
  return subgroup_closure(g.G, gens);
}

TwistSetup resolve_setup(const LoadedGroup& g, const RunConfig& cfg) {
  Subgroup N;
  if (cfg.normal)
    N = parse_normal(g, *cfg.normal);
  else if (g.N)
    N = *g.N;
  else
    throw InputError("NORMAL_REQUIRED", "--normal is required for a group file");
  long p = 0;
  if (cfg.prime) {
    p = *cfg.prime;
  } else if (!cfg.normal && g.p) {
    p = *g.p;
  } else {
    auto f = prime_factors(N.size());
    if (f.empty()) throw InputError("PRIME_REQUIRED", "N is trivial; give --prime");
    if (f.size() > 1)
      throw InputError("N_NOT_P_GROUP", "the given subgroup has order " + std::to_string(N.size()) +
                                            ", not a prime power");
    p = f[0];
  }
  return make_setup(g.G, N, p);
}

json error_json(const std::string& code, const std::string& message) {
  return {{"schema", kSchema}, {"error", {{"code", code}, {"message", message}}}};
}

namespace {

json header(const std::string& command, const LoadedGroup& g) {
  return {{"schema", kSchema},
          {"command", command},
          {"input", {{"source", g.source}, {"order", g.G->order()}, {"elements", g.G->labels()}}}};
}

json setup_json(const TwistSetup& S) {
  return {{"N", {{"gens", canonical_gens(S.N)}, {"order", S.N.size()}}}, {"p", S.p}};
}

json class_json(const TwistClass& tc, const StabilizerData& st, const GammaGroup& gamma) {
  return {{"rep", tc.rep},
          {"members", tc.members},
          {"degree", tc.degree},
          {"K", canonical_gens(st.K)},
          {"L", canonical_gens(st.L)},
          {"Gamma", gamma.members}};
}

}  // namespace

json pipeline_report(const TwistSetup& S, const LoadedGroup& g, const RunConfig& cfg) {
  ZetaOptions zo;
  zo.jobs = cfg.jobs;
  zo.check_members = true;
  auto Z = assemble_twist_zeta(S, zo);
  json r = header("pipeline", g);
  r["setup"] = setup_json(S);
  json classes = json::array();
  for (const auto& rec : Z.records) {
    const auto& bk = Z.buckets[rec.bucket];
    json c = class_json(Z.classes[rec.cls], rec.st, bk.gamma);
    c["index"] = rec.cls;
    c["gamma_id"] = rec.gamma_id;
    c["C_id"] = rec.c_id;
    c["T_id"] = rec.t_id;
    c["bucket"] = rec.bucket;
    classes.push_back(c);
  }
  json buckets = json::array();
  for (const auto& bk : Z.buckets)
    buckets.push_back({{"L", canonical_gens(bk.L)},
                       {"K", canonical_gens(bk.K)},
                       {"Gamma", bk.gamma.members},
                       {"C_id", bk.c_id},
                       {"T_id", bk.t_id},
                       {"index", S.G->order() / bk.L.size()},
                       {"classes", bk.classes},
                       {"partial", to_json(bk.partial)},
                       {"f_tilde", to_json(bk.f)},
                       {"f_tilde_members_agree", bk.f_agrees}});
  r["classes"] = classes;
  r["buckets"] = buckets;
  r["zeta"] = {{"assembled", to_json(Z.assembled)},
               {"brute", to_json(Z.brute)},
               {"rep_zeta", to_json(rep_zeta(S.all))},
               {"integral", Z.integral},
               {"partition_ok", Z.partition_ok},
               {"agree", Z.agree}};
  return r;
}

json chartab_report(const LoadedGroup& g, const std::optional<Subgroup>& N) {
  json r = header("chartab", g);
  r["G"] = to_json(*character_table(whole_group(g.G)));
  if (N) {
    r["N"] = to_json(*character_table(*N));
    r["N"]["gens"] = canonical_gens(*N);
  }
  return r;
}

json twist_report(const TwistSetup& S, const LoadedGroup& g) {
  json r = header("twist", g);
  r["setup"] = setup_json(S);
  json classes = json::array();
  for (const auto& tc : twist_classes(S.N, S.linG)) {
    auto ci = class_invariants(S, tc);
    classes.push_back(class_json(tc, ci.st, ci.gamma));
  }
  r["classes"] = classes;
  return r;
}

json invariants_report(const TwistSetup& S, const LoadedGroup& g, const RunConfig& cfg) {
  ZetaOptions zo;
  zo.jobs = cfg.jobs;
  auto Z = assemble_twist_zeta(S, zo);
  json r = header("invariants", g);
  r["setup"] = setup_json(S);
  json classes = json::array();
  bool all_agree = true;
  for (size_t i = 0; i < Z.classes.size(); ++i) {
    const auto& tc = Z.classes[i];
    auto mono = class_invariants(S, tc);
    auto mat = class_invariants(S, tc, InvariantOptions{-1, ExtRoute::Matrix, 0, 0});
    bool agree = h2_equal(mono.C, mat.C) && t_equal(mono, mat);
    all_agree = all_agree && agree;
    classes.push_back({{"class", i},
                       {"degree", tc.degree},
                       {"K_p", canonical_gens(mono.Kp)},
                       {"L_p", canonical_gens(mono.Lp)},
                       {"C", to_json(mono.C)},
                       {"T", Z.records[i].t_id},
                       {"Gamma", mono.gamma.members},
                       {"Gamma_p", mono.gamma_p.members},
                       {"routes",
                        {{"monomial", {{"C", to_json(mono.C)}, {"token", h1_token_json(mono.mu_p)}}},
                         {"matrix", {{"C", to_json(mat.C)}, {"token", h1_token_json(mat.mu_p)}}},
                         {"agree", agree}}}});
  }
  r["classes"] = classes;
  r["routes_agree"] = all_agree;
  return r;
}

json verify_report(const std::vector<CheckResult>& checks) {
  json r = {{"schema", kSchema}, {"command", "verify"}};
  json arr = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    json j = {{"name", c.name},
              {"entry", c.entry},
              {"criterion", c.criterion},
              {"passed", c.passed},
              {"samples", c.samples}};
    if (!c.passed) j["counterexample"] = c.counterexample;
    ok = ok && c.passed;
    arr.push_back(j);
  }
  r["checks"] = arr;
  r["passed"] = ok;
  return r;
}

}  // namespace tz::app
