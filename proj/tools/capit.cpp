// capit: verify extension specs, enumerate H^2 classes, sweep the census,
// and compute cohomology groups, with byte-deterministic reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "capit/census.hpp"
#include "capit/cohomology.hpp"
#include "capit/error.hpp"
#include "capit/report.hpp"
#include "capit/spec_io.hpp"
#include "capit/transfer.hpp"

namespace {

using namespace capit;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

IVec parse_invariants(const std::string& s) {
  IVec out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (...) {
      throw Error(ErrorKind::ParseError, "bad invariant list: " + s);
    }
  }
  return out;
}

std::vector<IMat> parse_action_file(const std::string& path, std::size_t ka) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (j.is_object() && j.contains("action")) j = j["action"];
  if (!j.is_array())
    throw Error(ErrorKind::ParseError, "action file: expected an array of matrices");
  std::vector<IMat> mats;
  for (const auto& mat : j) {
    IMat m(ka, ka);
    if (!mat.is_array() || mat.size() != ka)
      throw Error(ErrorKind::ParseError, "action file: matrix has wrong shape");
    for (std::size_t i = 0; i < ka; ++i) {
      if (!mat[i].is_array() || mat[i].size() != ka)
        throw Error(ErrorKind::ParseError, "action file: matrix has wrong shape");
      for (std::size_t jj = 0; jj < ka; ++jj) m(i, jj) = mat[i][jj].get<i64>();
    }
    mats.push_back(std::move(m));
  }
  return mats;
}

std::string ivec_json(const IVec& v) {
  nlohmann::ordered_json j = v;
  return j.dump();
}

i64 configured_cap() {
  if (const char* env = std::getenv("CAPIT_MAX_ORDER")) {
    try {
      return std::stoll(env);
    } catch (...) {
      throw Error(ErrorKind::ParseError, "CAPIT_MAX_ORDER is not an integer");
    }
  }
  return 64;
}

void emit(const Report& rep, const std::string& format) {
  std::cout << (format == "text" ? rep.to_text() : rep.to_json());
}

int cmd_verify(const std::string& file, const std::vector<std::string>& checks,
               const std::string& format, std::uint64_t seed) {
  std::string text = read_file(file);
  Report rep;
  rep.command = "verify";
  rep.input_hash = fnv1a_hex(text);

  std::set<std::string> want(checks.begin(), checks.end());
  auto selected = [&](const std::string& name) {
    return want.empty() || want.count(name) > 0;
  };

  ExtensionSpec spec = parse_spec(text);
  ExtensionGroup ext = spec.make_extension();
  if (selected("cocycle")) rep.add("cocycle", true);

  ExtensionCheckOptions opt;
  opt.cocycle_cap = 4096;
  opt.seed = seed;
  ExtensionCheckResult r = check_extension(ext, opt);

  std::string kernel_payload = "{\"kernel\":" + ivec_json(r.kernel_invariants) +
                               ",\"index\":" + std::to_string(r.index) + "}";
  if (selected("log_iso")) rep.add("log_iso", true);  // abelianization cross-check
  if (selected("lemma_a")) rep.add("lemma_a", r.lemma_a);
  if (selected("lemma_b")) rep.add("lemma_b", r.lemma_b);
  if (selected("principal_ideal")) rep.add("principal_ideal", r.principal_ideal);
  if (selected("divisibility")) rep.add("divisibility", r.divisibility, kernel_payload);
  if (selected("power_identity")) rep.add("power_identity", r.power_identity);
  if (selected("suzuki"))
    rep.add("suzuki", r.suzuki_all,
            "{\"subgroup_cases\":" + std::to_string(r.subgroup_cases) + "}");
  if (selected("tannaka")) {
    std::string payload = "{\"gamma_found\":" +
                          std::string(r.gamma_found ? "true" : "false") + "}";
    if (r.gamma_found)
      rep.add("tannaka", r.tannaka_ok, payload);
    else
      rep.skip("tannaka", payload);
  }
  if (selected("miyake"))
    rep.add("miyake", r.miyake_scolie,
            std::string("{\"surjective_phi\":") +
                (r.miyake_found ? "true" : "false") +
                ",\"cocycles\":" + std::to_string(r.cocycles_checked) +
                ",\"exhaustive\":" + (r.cocycles_exhaustive ? "true" : "false") +
                "}");
  emit(rep, format);
  return rep.all_passed() ? 0 : 1;
}

int cmd_enumerate(const std::string& g_s, const std::string& a_s,
                  const std::string& action_file, const std::string& format) {
  FiniteAbelianGroup g(parse_invariants(g_s));
  FiniteAbelianGroup a(parse_invariants(a_s));
  std::vector<IMat> mats;
  if (!action_file.empty())
    mats = parse_action_file(action_file, a.rank());
  else
    mats.assign(g.rank(), IMat::identity(a.rank()));
  GAction action(g, a, mats);
  action.validate();

  std::vector<ExtensionGroup> exts = enumerate_extensions(action);
  nlohmann::ordered_json out;
  out["tool"] = "capit";
  out["version"] = kToolVersion;
  out["command"] = "enumerate";
  out["count"] = exts.size();
  out["specs"] = nlohmann::ordered_json::array();
  for (const ExtensionGroup& e : exts)
    out["specs"].push_back(
        nlohmann::ordered_json::parse(serialize_spec(spec_from_extension(e))));
  if (format == "text") {
    std::cout << exts.size() << " extension class(es)\n";
    for (const ExtensionGroup& e : exts)
      std::cout << "---\n" << serialize_spec(spec_from_extension(e));
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_search(i64 max_order, const std::string& format) {
  i64 cap = configured_cap();
  if (max_order > cap)
    throw Error(ErrorKind::CapExceeded,
                "max-order exceeds the configured cap of " + std::to_string(cap));
  CensusOptions opt;
  opt.max_order = max_order;

  CensusSummary sum = run_census(opt);
  Report rep;
  rep.command = "search";
  rep.input_hash = fnv1a_hex("search:" + std::to_string(max_order));
  rep.add("zero_violations", sum.violations.empty(),
          "{\"pairs\":" + std::to_string(sum.pairs) +
              ",\"extensions\":" + std::to_string(sum.extensions) +
              ",\"subgroup_cases\":" + std::to_string(sum.subgroup_cases) +
              ",\"gamma_hits\":" + std::to_string(sum.gamma_hits) +
              ",\"violations\":" + std::to_string(sum.violations.size()) + "}");
  for (const CensusViolation& v : sum.violations)
    rep.add("violation:" + v.instance + ":" + v.check, false);
  emit(rep, format);
  return rep.all_passed() ? 0 : 1;
}

int cmd_cohomology(const std::string& g_s, const std::string& m_s, int n,
                   const std::string& action_file, bool with_reps,
                   const std::string& format) {
  FiniteAbelianGroup g(parse_invariants(g_s));
  FiniteAbelianGroup m(parse_invariants(m_s));
  std::vector<IMat> mats;
  if (!action_file.empty())
    mats = parse_action_file(action_file, m.rank());
  else
    mats.assign(g.rank(), IMat::identity(m.rank()));
  GAction gm(g, m, mats);
  gm.validate();

  CohomologyResult h = cohomology(gm, n);
  Report rep;
  rep.command = "cohomology";
  rep.input_hash =
      fnv1a_hex("cohomology:" + g_s + ":" + m_s + ":" + std::to_string(n));
  std::string payload = "{\"invariants\":" + ivec_json(h.group().invariants()) +
                        ",\"order\":" + std::to_string(h.group().order()) + "}";
  rep.add("h" + std::to_string(n), true, payload);
  if (with_reps) {
    for (std::size_t i = 0; i < h.representatives().size(); ++i) {
      nlohmann::ordered_json tbl = nlohmann::ordered_json::array();
      for (const IVec& v : h.representatives()[i]) tbl.push_back(v);
      rep.add("representative_" + std::to_string(i), true, tbl.dump());
    }
  }
  emit(rep, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transfer-map and group-cohomology verifier"};
  app.require_subcommand(1);

  std::string format = "json";
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "run checks on an extension spec");
  std::string verify_file;
  std::vector<std::string> checks;
  verify->add_option("file", verify_file, "extension spec file")->required();
  verify->add_option("--checks", checks, "subset of checks to run");
  verify->add_option("--format", format, "json or text");
  verify->add_option("--seed", seed, "seed for sampled searches");

  auto* enumerate = app.add_subcommand("enumerate", "one spec per H^2 class");
  std::string en_g, en_a, en_action;
  enumerate->add_option("--g", en_g, "G invariant factors, e.g. 2,2")->required();
  enumerate->add_option("--a", en_a, "A invariant factors")->required();
  enumerate->add_option("--action", en_action, "JSON file with action matrices");
  enumerate->add_option("--format", format, "json or text");

  auto* search = app.add_subcommand("search", "census sweep for violations");
  i64 max_order = 64;
  search->add_option("--max-order", max_order, "bound on |G|*|A|");
  search->add_option("--format", format, "json or text");

  auto* coh = app.add_subcommand("cohomology", "H^n of a G-module");
  std::string co_g, co_m, co_action;
  int degree = 1;
  bool with_reps = false;
  coh->add_option("--g", co_g, "G invariant factors")->required();
  coh->add_option("--m", co_m, "module invariant factors")->required();
  coh->add_option("--n", degree, "degree 0, 1 or 2");
  coh->add_option("--action", co_action, "JSON file with action matrices");
  coh->add_flag("--reps", with_reps, "include representative cocycles");
  coh->add_option("--format", format, "json or text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(verify))
      return cmd_verify(verify_file, checks, format, seed);
    if (app.got_subcommand(enumerate))
      return cmd_enumerate(en_g, en_a, en_action, format);
    if (app.got_subcommand(search)) return cmd_search(max_order, format);
    if (app.got_subcommand(coh))
      return cmd_cohomology(co_g, co_m, degree, co_action, with_reps, format);
  } catch (const Error& e) {
    std::cerr << "error [" << e.name() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
