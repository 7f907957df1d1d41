#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fahp/format.hpp"
#include "fahp/report.hpp"
#include "fahp/service.hpp"
#include "fahp/workspace.hpp"

namespace fahp::cli {

namespace {

using nlohmann::json;

constexpr int kDefaultPort = 8080;
constexpr const char* kPortEnv = "FAHP_PORT";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string problem;
  std::string second_problem;
  std::string method;
  std::string attitude;
  std::string add;
  std::string output;
  std::string format = "text";
  std::string host = "127.0.0.1";
  int port = kDefaultPort;
  bool strict = false;
};

// Reads a problem from disk, falling back to the bundled fixture of the same
// file name so `fahp solve paper-case-crisp.json` works from any directory.
LoadedProblem load(const std::string& path, Strictness strictness) {
  if (std::filesystem::exists(path)) return load_problem(path, strictness);
  const std::string name = std::filesystem::path(path).filename().string();
  for (auto fixture : fixture_names()) {
    if (fixture == name) return load_problem_text(paper_case_fixture(fixture), strictness);
  }
  throw Error(ErrorCode::IoError, "cannot read " + path);
}

Strictness strictness_of(const Options& o) { return o.strict ? Strictness::Strict : Strictness::Lenient; }

WeightMethod method_of(const std::string& text) {
  if (text.empty() || text == "geomean") return WeightMethod::GeometricMean;
  if (text == "eigen") return WeightMethod::Eigen;
  throw UsageError("--method must be eigen or geomean");
}

std::optional<Attitude> attitude_of(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return parse_attitude(text);
  } catch (const Error&) {
    throw UsageError("--attitude must be optimistic, moderate or pessimistic");
  }
}

bool json_output(const Options& o) {
  if (o.format == "json") return true;
  if (o.format == "text") return false;
  throw UsageError("--format must be text or json");
}

void emit(std::ostream& out, const Options& o, const json& j, const std::string& text) {
  if (json_output(o)) {
    out << j.dump(2) << '\n';
  } else {
    out << text;
  }
}

RankedResult solve_loaded(const DecisionProblem& p, const Options& o) {
  const auto attitude = attitude_of(o.attitude);
  if (p.mode() == Mode::Crisp) {
    if (attitude) throw UsageError("--attitude applies to fuzzy problems");
    return solve_crisp(p, method_of(o.method));
  }
  if (!o.method.empty()) throw UsageError("--method applies to crisp problems; fuzzy problems use extent analysis");
  return attitude ? what_if_attitude(p, *attitude) : solve_fuzzy(p);
}

int cmd_solve(const Options& o, std::ostream& out) {
  json_output(o);
  const auto loaded = load(o.problem, strictness_of(o));
  const RankedResult r = solve_loaded(loaded.problem, o);
  if (!o.output.empty()) save_result(r, o.output);
  std::string text;
  if (!loaded.repairs.empty()) text += render_repairs(loaded.repairs) + "\n";
  text += render_text(r);
  emit(out, o, {{"repairs", to_json(loaded.repairs)}, {"result", to_json(r)}}, text);
  return kExitOk;
}

int cmd_consistency(const Options& o, std::ostream& out) {
  json_output(o);
  const auto loaded = load(o.problem, strictness_of(o));
  const DecisionProblem& p = loaded.problem;
  const DecisionProblem crisp = p.mode() == Mode::Crisp ? p : defuzzify_problem(p, Attitude::Moderate);
  std::vector<MatrixDiagnostic> reports;
  reports.push_back({"criteria", consistency(crisp.crisp().criteria)});
  for (std::size_t c = 0; c < crisp.criteria().size(); ++c) {
    reports.push_back({crisp.criteria()[c], consistency(crisp.crisp().alternatives[c])});
  }
  std::string text;
  if (!loaded.repairs.empty()) text += render_repairs(loaded.repairs) + "\n";
  if (p.mode() == Mode::Fuzzy) text += "Fuzzy problem: consistency of the most promising (m) values.\n";
  json list = json::array();
  for (const auto& d : reports) {
    text += render_consistency(d.matrix, d.report);
    json entry = to_json(d.report);
    entry["matrix"] = d.matrix;
    list.push_back(std::move(entry));
  }
  emit(out, o, {{"repairs", to_json(loaded.repairs)}, {"mode", std::string(to_string(p.mode()))}, {"matrices", list}},
       text);
  return kExitOk;
}

RankedResult default_solve(const DecisionProblem& p) {
  return p.mode() == Mode::Crisp ? solve_crisp(p, WeightMethod::GeometricMean) : solve_fuzzy(p);
}

int cmd_compare(const Options& o, std::ostream& out) {
  json_output(o);
  const auto first = load(o.problem, strictness_of(o));
  ComparisonReport report;
  if (!o.second_problem.empty()) {
    const auto second = load(o.second_problem, strictness_of(o));
    report = compare_rankings(default_solve(first.problem), default_solve(second.problem));
  } else if (first.problem.mode() == Mode::Fuzzy) {
    RankedResult classical = what_if_attitude(first.problem, Attitude::Moderate);
    classical.label = "classical/geomean";
    report = compare_rankings(classical, solve_fuzzy(first.problem));
  } else {
    report = compare_rankings(solve_crisp(first.problem, WeightMethod::Eigen),
                              solve_crisp(first.problem, WeightMethod::GeometricMean));
  }
  emit(out, o, to_json(report), render_text(report));
  return kExitOk;
}

int cmd_what_if(const Options& o, std::ostream& out) {
  json_output(o);
  const auto attitude = attitude_of(o.attitude);
  if (!attitude) throw UsageError("what-if needs --attitude");
  const auto loaded = load(o.problem, strictness_of(o));
  if (loaded.problem.mode() != Mode::Fuzzy) throw UsageError("what-if needs a fuzzy problem");
  const RankedResult r = what_if_attitude(loaded.problem, *attitude);
  const RankedResult moderate = what_if_attitude(loaded.problem, Attitude::Moderate);
  const ComparisonReport vs = compare_rankings(moderate, r);
  emit(out, o, {{"result", to_json(r)}, {"versus_moderate", to_json(vs)}},
       render_text(r) + "\nAgainst the moderate reading:\n" + render_text(vs));
  return kExitOk;
}

Judgment parse_probe_value(const std::string& text, Mode mode) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '/')) parts.push_back(part);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number '" + s + "' in --add");
    }
  };
  if (mode == Mode::Fuzzy) {
    if (parts.size() != 3) throw UsageError("fuzzy --add values are l/m/u, got '" + text + "'");
    return make_tfn(number(parts[0]), number(parts[1]), number(parts[2]));
  }
  if (parts.size() == 1) return number(parts[0]);
  if (parts.size() == 2) return number(parts[0]) / number(parts[1]);
  throw UsageError("crisp --add values are numbers or a/b fractions, got '" + text + "'");
}

// NAME:v,v,...;v,v,...  one group per criterion, one value per existing
// alternative, each saying how the new alternative compares to it.
NewAlternative parse_column_spec(const std::string& spec, const DecisionProblem& p) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0) throw UsageError("--add expects NAME:values;values;...");
  NewAlternative added;
  added.name = spec.substr(0, colon);
  std::stringstream groups(spec.substr(colon + 1));
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<Judgment> column;
    std::stringstream values(group);
    std::string value;
    while (std::getline(values, value, ',')) column.push_back(parse_probe_value(value, p.mode()));
    added.judgments.push_back(std::move(column));
  }
  if (added.judgments.size() != p.criteria().size()) {
    throw UsageError("--add needs " + std::to_string(p.criteria().size()) + " ';'-separated groups, got " +
                     std::to_string(added.judgments.size()));
  }
  return added;
}

int cmd_probe(const Options& o, std::ostream& out) {
  json_output(o);
  const auto loaded = load(o.problem, strictness_of(o));
  std::optional<NewAlternative> added;
  if (!o.add.empty()) added = parse_column_spec(o.add, loaded.problem);
  const ProbeReport report = rank_reversal_probe(loaded.problem, added, method_of(o.method));
  emit(out, o, to_json(report), render_text(report));
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
  out << "serving on http://" << o.host << ":" << o.port << '\n' << std::flush;
  return service::serve(o.host, o.port) ? kExitOk : kExitValidation;
}

int default_port() {
  if (const char* env = std::getenv(kPortEnv)) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
    }
  }
  return kDefaultPort;
}

std::string scores_line(const std::vector<std::string>& names, const std::vector<double>& scores) {
  std::string s;
  for (std::size_t a = 0; a < names.size(); ++a) s += "  " + names[a] + " " + fixed4(scores[a]);
  return s;
}

}  // namespace

void print_demo(std::ostream& out) {
  const auto crisp = load_problem_text(paper_case_fixture(kAsPrintedCrispFixture), Strictness::Lenient);
  const auto fuzzy = load_problem_text(paper_case_fixture(kAsPrintedFuzzyFixture), Strictness::Lenient);
  const DecisionProblem& cp = crisp.problem;
  const DecisionProblem& fp = fuzzy.problem;

  out << "Case study: " << cp.goal() << '\n';
  out << "Criteria:";
  for (std::size_t c = 0; c < cp.criteria().size(); ++c) out << "  C" << c + 1 << " " << cp.criteria()[c];
  out << "\nAlternatives:";
  for (std::size_t a = 0; a < cp.alternatives().size(); ++a) out << "  A" << a + 1 << " " << cp.alternatives()[a];
  out << "\n\n== Input repairs (upper triangle authoritative) ==\n";
  out << "Crisp judgments: " << render_repairs(crisp.repairs);
  out << "Fuzzy judgments: " << render_repairs(fuzzy.repairs);

  out << "\n== Classical AHP ==\n";
  const RankedResult geomean = solve_crisp(cp, WeightMethod::GeometricMean);
  const RankedResult eigen = solve_crisp(cp, WeightMethod::Eigen);
  out << render_text(geomean) << '\n' << render_text(eigen);

  out << "\n== Fuzzy AHP (extent analysis) ==\n";
  out << "-- criteria --\n" << render_extents(extent_analysis(fp.fuzzy().criteria), fp.criteria());
  for (std::size_t c = 0; c < fp.criteria().size(); ++c) {
    out << "-- alternatives under " << fp.criteria()[c] << " --\n"
        << render_extents(extent_analysis(fp.fuzzy().alternatives[c]), fp.alternatives());
  }
  const RankedResult extent = solve_fuzzy(fp);
  out << '\n' << render_text(extent);

  out << "\n== Classical vs fuzzy ==\n" << render_text(compare_rankings(geomean, extent));
  out << "Reported in the original case study (display only):\n";
  out << "  classical" << scores_line(cp.alternatives(), {ReportedCaseStudy::classical_scores.begin(),
                                                         ReportedCaseStudy::classical_scores.end()})
      << '\n';
  out << "  fuzzy    " << scores_line(cp.alternatives(), {ReportedCaseStudy::fuzzy_scores.begin(),
                                                         ReportedCaseStudy::fuzzy_scores.end()})
      << '\n';

  out << "\n== Attitude what-ifs (fuzzy judgments defuzzified, geometric mean) ==\n";
  const RankedResult moderate = what_if_attitude(fp, Attitude::Moderate);
  for (Attitude a : {Attitude::Pessimistic, Attitude::Moderate, Attitude::Optimistic}) {
    const RankedResult r = what_if_attitude(fp, a);
    std::string name(to_string(a));
    name.resize(12, ' ');
    out << "  " << name << scores_line(r.alternatives, r.global_scores) << "  ranking:";
    for (std::size_t k = 0; k < r.rank_order.size(); ++k) {
      out << (k == 0 ? " " : " > ") << "A" << r.rank_order[k] + 1;
    }
    const auto flips = rank_flips(moderate.rank_order, r.rank_order);
    out << "  flips vs moderate: " << flips.size() << '\n';
  }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank alternatives with classical and fuzzy AHP", argv.empty() ? "fahp" : argv.front()};
  app.require_subcommand(1, 1);
  Options o;
  o.port = default_port();

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format: text or json");
  };
  auto add_strict = [&](CLI::App* cmd) {
    cmd->add_flag("--strict", o.strict, "Fail on invalid judgments instead of repairing them");
  };

  auto* solve = app.add_subcommand("solve", "Solve a problem document");
  solve->add_option("problem", o.problem, "Problem file (JSON or CSV)")->required();
  solve->add_option("--method", o.method, "Crisp weight method: eigen or geomean");
  solve->add_option("--attitude", o.attitude, "Defuzzify a fuzzy problem: optimistic, moderate or pessimistic");
  solve->add_option("--output,-o", o.output, "Also save the result as JSON here");
  add_strict(solve);
  add_format(solve);

  auto* cons = app.add_subcommand("consistency", "Report lambda_max, CI and CR for every matrix");
  cons->add_option("problem", o.problem, "Problem file (JSON or CSV)")->required();
  add_strict(cons);
  add_format(cons);

  auto* compare = app.add_subcommand("compare", "Side-by-side rankings");
  compare->add_option("problem", o.problem, "Problem file")->required();
  compare->add_option("other", o.second_problem, "Second problem file to compare against");
  add_strict(compare);
  add_format(compare);

  auto* what_if = app.add_subcommand("what-if", "Solve a fuzzy problem under a decision-maker attitude");
  what_if->add_option("problem", o.problem, "Fuzzy problem file")->required();
  what_if->add_option("--attitude", o.attitude, "optimistic, moderate or pessimistic")->required();
  add_strict(what_if);
  add_format(what_if);

  auto* probe = app.add_subcommand("probe", "Check for rank reversal when an alternative is added");
  probe->add_option("problem", o.problem, "Problem file")->required();
  probe->add_option("--add", o.add, "NAME:v,v,..;v,v,.. one group per criterion");
  probe->add_option("--method", o.method, "Crisp weight method: eigen or geomean");
  add_strict(probe);
  add_format(probe);

  auto* demo = app.add_subcommand("demo", "Walk through the bundled case study");

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", o.port, "Port (default from FAHP_PORT, else 8080)");
  serve->add_option("--host", o.host, "Bind address");

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(solve)) return cmd_solve(o, out);
    if (app.got_subcommand(cons)) return cmd_consistency(o, out);
    if (app.got_subcommand(compare)) return cmd_compare(o, out);
    if (app.got_subcommand(what_if)) return cmd_what_if(o, out);
    if (app.got_subcommand(probe)) return cmd_probe(o, out);
    if (app.got_subcommand(demo)) {
      print_demo(out);
      return kExitOk;
    }
    if (app.got_subcommand(serve)) return cmd_serve(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace fahp::cli
