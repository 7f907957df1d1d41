// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "case_tables.hpp"
#include "fahp/extent.hpp"
#include "fahp/format.hpp"
#include "fahp/hierarchy.hpp"
#include "fahp/workspace.hpp"
#include "oracles.hpp"
#include "run_binary.hpp"
#include "support.hpp"

using namespace fahp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double x, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

bool within(double value, double target, double tol) { return std::fabs(value - target) <= tol; }

// Value printed at three decimals equals the target printed the same way.
bool same_at_3(double value, double target) { return fmt(value, "%.3f") == fmt(target, "%.3f"); }

FuzzyMatrix criteria_judgments() { return validate_fuzzy_matrix(case_tables::approx(case_tables::kCriteriaText)); }

void row_sums(Outcome& o) {
  const auto set = synthetic_extents(criteria_judgments());
  const std::vector<Tfn> expected{{10, 14, 18}, {8, 12, 16}, {2.22, 2.286, 2.4}};
  for (std::size_t k = 0; k < 3; ++k) {
    const Tfn& got = set.row_sums[k + 1];
    const Tfn& want = expected[k];
    o.expect(same_at_3(got.l, want.l) && same_at_3(got.m, want.m) && same_at_3(got.u, want.u),
             "row " + std::to_string(k + 2) + " = " + to_string(got));
  }
  o.expect(within(set.total.l, 22.56, 0.005) && within(set.total.m, 30.816, 0.005) &&
               within(set.total.u, 39.73, 0.005),
           "total " + to_string(set.total));
  o.expect(same_at_3(set.row_sums[0].u, 3.33), "first row upper " + fmt(set.row_sums[0].u));
  o.note << " total=" << fmt(set.total.l, "%.3f") << "/" << fmt(set.total.m, "%.3f") << "/"
         << fmt(set.total.u, "%.3f") << " first-row-upper=" << fmt(set.row_sums[0].u, "%.2f");
}

void synthetic(Outcome& o) {
  const auto set = synthetic_extents(criteria_judgments());
  const std::vector<Tfn> printed{{0.0589, 0.0821, 0.147}, {0.25, 0.45, 0.8}, {0.20, 0.39, 0.71}, {0.056, 0.074, 0.11}};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Tfn& s = set.extents[i];
    worst = std::max({worst, std::fabs(s.l - printed[i].l), std::fabs(s.m - printed[i].m), std::fabs(s.u - printed[i].u)});
  }
  o.expect(worst <= 0.005, "max deviation " + fmt(worst));
  o.note << " max-deviation=" << fmt(worst, "%.5f") << " (tol 0.005)";
}

void classical(Outcome& o) {
  const auto p = load_problem_text(paper_case_fixture(kCrispFixture), Strictness::Strict).problem;
  const auto gm = solve_crisp(p, WeightMethod::GeometricMean);
  const auto ev = solve_crisp(p, WeightMethod::Eigen);
  const std::vector<double> printed{0.3200, 0.2436, 0.4364};
  double worst = 0.0;
  for (std::size_t a = 0; a < 3; ++a) worst = std::max(worst, std::fabs(gm.global_scores[a] - printed[a]));
  o.expect(worst <= 0.02, "score deviation " + fmt(worst));
  const std::vector<std::size_t> ranking{2, 0, 1};
  o.expect(gm.rank_order == ranking, "geometric-mean ranking");
  o.expect(ev.rank_order == ranking, "eigenvector ranking");
  o.note << " geomean=" << fixed4(gm.global_scores[0]) << "/" << fixed4(gm.global_scores[1]) << "/"
         << fixed4(gm.global_scores[2]) << " max-deviation=" << fmt(worst, "%.4f") << " (tol 0.02) ranking A3>A1>A2";
}

void aggregation(Outcome& o) {
  const auto& cw = ReportedCaseStudy::fuzzy_criteria_weights;
  const auto& a3 = ReportedCaseStudy::fuzzy_third_alternative_locals;
  std::vector<WeightVector> locals;
  for (double x : a3) locals.push_back({{x}, WeightMethod::Extent});
  const double score = aggregate_global({{cw.begin(), cw.end()}, WeightMethod::Extent}, locals)[0];
  o.expect(within(score, 0.3434, 0.0005), "score " + fmt(score));
  o.note << " score=" << fmt(score, "%.5f") << " (target 0.3434 tol 0.0005)";
}

void extent_oracle(Outcome& o) {
  const auto ref = oracle::extent_analysis(case_tables::exact(case_tables::kCriteriaText));
  const auto ew = extent_analysis(criteria_judgments());
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::fabs(ew.weights[i] - static_cast<double>(ref.weights[i])));
  o.expect(worst <= 1e-9, "oracle disagreement " + fmt(worst, "%.3g"));
  const std::vector<double> pinned{0.0, 0.5331, 0.4669, 0.0};
  o.expect(support::max_abs_diff(ew.weights.weights, pinned) <= 5e-5, "pinned weights");
  // The reported (0.14, 0.28, 0.28, 0.30) does not follow from the method.
  const auto& reported = ReportedCaseStudy::fuzzy_criteria_weights;
  o.expect(support::max_abs_diff(ew.weights.weights, {reported.begin(), reported.end()}) > 0.1,
           "reported weights unexpectedly reproduced");
  o.note << " weights=" << fixed4(ew.weights[0]) << "/" << fixed4(ew.weights[1]) << "/" << fixed4(ew.weights[2])
         << "/" << fixed4(ew.weights[3]) << " oracle-gap=" << fmt(worst, "%.2g");
}

void closed_form(Outcome& o) {
  std::mt19937_64 rng(20240611);
  double worst = 0.0;
  int bad_range = 0, bad_max = 0;
  for (int k = 0; k < 1000; ++k) {
    const Tfn a = support::random_tfn(rng, 0.01, 10.0);
    const Tfn b = support::random_tfn(rng, 0.01, 10.0);
    const double vab = possibility(a, b), vba = possibility(b, a);
    worst = std::max(worst, std::fabs(vab - oracle::possibility_grid({a.l, a.m, a.u}, {b.l, b.m, b.u})));
    if (vab < 0.0 || vab > 1.0) ++bad_range;
    if (std::max(vab, vba) != 1.0) ++bad_max;
  }
  o.expect(worst <= 1e-3, "grid disagreement " + fmt(worst));
  o.expect(bad_range == 0, std::to_string(bad_range) + " values outside [0,1]");
  o.expect(bad_max == 0, std::to_string(bad_max) + " pairs without a sure side");
  o.note << " pairs=1000 max-gap=" << fmt(worst, "%.2g") << " (tol 1e-3)";
}

void consistency_kernel(Outcome& o) {
  std::mt19937_64 rng(7);
  double worst_w = 0.0, worst_l = 0.0, worst_ci = 0.0;
  for (std::size_t n = 3; n <= 9; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto w = support::random_weights(rng, n);
      const auto m = validate_matrix(support::ratio_matrix(w));
      const auto ew = eigen_weights(m);
      worst_w = std::max({worst_w, support::max_abs_diff(ew.weights.weights, w),
                          support::max_abs_diff(geometric_mean_weights(m).weights, w)});
      worst_l = std::max(worst_l, std::fabs(ew.lambda_max - static_cast<double>(n)));
      worst_ci = std::max(worst_ci, consistency(m).ci);
    }
  }
  o.expect(worst_w <= 1e-8, "weights off by " + fmt(worst_w, "%.3g"));
  o.expect(worst_l <= 1e-8, "lambda off by " + fmt(worst_l, "%.3g"));
  o.expect(worst_ci <= 1e-8, "CI " + fmt(worst_ci, "%.3g"));
  const auto p = load_problem_text(paper_case_fixture(kCrispFixture), Strictness::Strict).problem;
  const double cr = consistency(p.crisp().criteria).cr;
  o.expect(cr < 0.10, "criteria CR " + fmt(cr));
  o.note << " weight-gap=" << fmt(worst_w, "%.2g") << " lambda-gap=" << fmt(worst_l, "%.2g")
         << " criteria-CR=" << fixed4(cr);
}

ErrorCode strict_failure(std::string_view fixture, std::string& context) {
  try {
    load_problem_text(paper_case_fixture(fixture), Strictness::Strict);
  } catch (const Error& e) {
    context = e.context();
    return e.code();
  }
  return ErrorCode::IoError;  // stands for "did not fail"
}

void validation(Outcome& o) {
  std::string crisp_ctx, fuzzy_ctx;
  const auto crisp = strict_failure(kAsPrintedCrispFixture, crisp_ctx);
  const auto fuzzy = strict_failure(kAsPrintedFuzzyFixture, fuzzy_ctx);
  o.expect(crisp == ErrorCode::ReciprocityViolation && crisp_ctx == "Uncertainty",
           "crisp strict load gave " + std::string(to_string(crisp)));
  o.expect(fuzzy == ErrorCode::MalformedTfn && fuzzy_ctx == "Uncertainty",
           "fuzzy strict load gave " + std::string(to_string(fuzzy)));
  const auto lc = load_problem_text(paper_case_fixture(kAsPrintedCrispFixture), Strictness::Lenient);
  const auto lf = load_problem_text(paper_case_fixture(kAsPrintedFuzzyFixture), Strictness::Lenient);
  o.expect(!lc.repairs.empty(), "crisp lenient repair log empty");
  o.expect(!lf.repairs.empty(), "fuzzy lenient repair log empty");
  o.note << " strict: " << to_string(crisp) << ", " << to_string(fuzzy) << "; lenient repairs: " << lc.repairs.size()
         << " crisp, " << lf.repairs.size() << " fuzzy";
}

void determinism(Outcome& o) {
  const std::string bin = FAHP_CLI_PATH;
  const std::vector<std::string> commands{"demo", "solve paper-case-crisp.json", "solve paper-case-fuzzy.json",
                                          "solve paper-case-asprinted-fuzzy.csv --format json"};
  for (const auto& c : commands) {
    const auto a = run_command(bin + " " + c);
    const auto b = run_command(bin + " " + c);
    o.expect(a.status == 0 && b.status == 0, "'" + c + "' exited nonzero");
    o.expect(!a.output.empty() && a.output == b.output, "'" + c + "' output differs");
  }
  o.note << " commands=" << commands.size() << " compared byte for byte";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"fuzzy row and column sums", row_sums},
      {"synthetic extents", synthetic},
      {"classical pipeline", classical},
      {"aggregation identity", aggregation},
      {"extent weights against exact-rational oracle", extent_oracle},
      {"possibility closed form against sup-min definition", closed_form},
      {"consistency kernel", consistency_kernel},
      {"validation of tabulated data", validation},
      {"deterministic cli output", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %s:%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.note.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
