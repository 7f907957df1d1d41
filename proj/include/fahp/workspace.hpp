#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fahp/hierarchy.hpp"

namespace fahp {

inline constexpr int kSchemaVersion = 1;

struct LoadedProblem {
  DecisionProblem problem;
  std::vector<RepairEntry> repairs;
};

// Saaty intensity for a linguistic label ("Strongly important" -> 5).
// Matching ignores case and surrounding whitespace. Throws UnknownLabel.
int label_to_saaty(std::string_view label);

// One judgment cell from a problem document or an API request:
// a number, {"saaty": k, "reciprocal": b}, {"label": "...", "reciprocal": b}
// or [l, m, u]. Fuzzy mode maps Saaty values and labels through
// scale_to_tfn and bare numbers to crisp-degenerate fuzzy numbers; crisp
// mode rejects triples. `where` prefixes error messages.
Judgment parse_judgment(const nlohmann::json& value, Mode mode, const std::string& where = "value");

nlohmann::json judgment_to_json(const Judgment& judgment);

// Problem documents (JSON) and multi-matrix CSV problems. The format is
// detected from the first non-blank character ('{' means JSON). Lenient mode
// repairs and logs; strict mode fails on the first violation.
LoadedProblem load_problem_text(std::string_view text, Strictness strictness = Strictness::Lenient);
LoadedProblem load_problem(const std::filesystem::path& path, Strictness strictness = Strictness::Lenient);

// Canonical upper-triangle document with full-precision numbers.
std::string problem_to_json(const DecisionProblem& p);

using ImportedMatrix = std::variant<RawMatrix, RawFuzzyMatrix>;

// n lines of n comma-separated fields. Crisp fields are decimals or "a/b"
// fractions, fuzzy fields "l/m/u". Blank lines are skipped.
ImportedMatrix import_matrix_csv(std::string_view text, Mode mode);

// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

void save_result(const RankedResult& result, const std::filesystem::path& path);
RankedResult load_result(const std::filesystem::path& path);

// The bundled case-study inputs. Names match the files shipped under data/.
std::string_view paper_case_fixture(std::string_view name);
inline constexpr std::string_view kCrispFixture = "paper-case-crisp.json";
inline constexpr std::string_view kFuzzyFixture = "paper-case-fuzzy.json";
inline constexpr std::string_view kAsPrintedCrispFixture = "paper-case-asprinted-crisp.csv";
inline constexpr std::string_view kAsPrintedFuzzyFixture = "paper-case-asprinted-fuzzy.csv";
const std::vector<std::string_view>& fixture_names();

// Figures printed with the original case study, in fixture alternative and
// criteria order. Display-only annotations, never solver inputs.
struct ReportedCaseStudy {
  static constexpr std::array<double, 3> classical_scores{0.320006, 0.243598, 0.436396};
  static constexpr std::array<double, 3> fuzzy_scores{0.2918, 0.3580, 0.3434};
  static constexpr std::array<double, 4> fuzzy_criteria_weights{0.14, 0.28, 0.28, 0.30};
  // Local weights of the third alternative under each criterion.
  static constexpr std::array<double, 4> fuzzy_third_alternative_locals{0.28, 0.286, 0.286, 0.48};
};

}  // namespace fahp
