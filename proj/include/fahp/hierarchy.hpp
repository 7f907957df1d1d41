#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fahp/comparison.hpp"
#include "fahp/extent.hpp"
#include "fahp/fuzzy.hpp"

namespace fahp {

enum class Mode { Crisp, Fuzzy };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct CrispJudgments {
  ComparisonMatrix criteria;
  std::vector<ComparisonMatrix> alternatives;  // one per criterion, criteria order

  friend bool operator==(const CrispJudgments&, const CrispJudgments&) = default;
};

struct FuzzyJudgments {
  FuzzyMatrix criteria;
  std::vector<FuzzyMatrix> alternatives;

  friend bool operator==(const FuzzyJudgments&, const FuzzyJudgments&) = default;
};

// Goal -> criteria -> alternatives, one criteria layer.
class DecisionProblem {
 public:
  // Both factories check matrix orders against the name lists and reject
  // duplicate names.
  static DecisionProblem make_crisp(std::string goal, std::vector<std::string> criteria,
                                    std::vector<std::string> alternatives, CrispJudgments judgments);
  static DecisionProblem make_fuzzy(std::string goal, std::vector<std::string> criteria,
                                    std::vector<std::string> alternatives, FuzzyJudgments judgments);

  const std::string& goal() const noexcept { return goal_; }
  const std::vector<std::string>& criteria() const noexcept { return criteria_; }
  const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
  Mode mode() const noexcept { return judgments_.index() == 0 ? Mode::Crisp : Mode::Fuzzy; }

  // Throw ModeMismatch when asked for the other mode.
  const CrispJudgments& crisp() const;
  const FuzzyJudgments& fuzzy() const;

  friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;

 private:
  DecisionProblem(std::string goal, std::vector<std::string> criteria, std::vector<std::string> alternatives,
                  std::variant<CrispJudgments, FuzzyJudgments> judgments)
      : goal_(std::move(goal)),
        criteria_(std::move(criteria)),
        alternatives_(std::move(alternatives)),
        judgments_(std::move(judgments)) {}

  std::string goal_;
  std::vector<std::string> criteria_;
  std::vector<std::string> alternatives_;
  std::variant<CrispJudgments, FuzzyJudgments> judgments_;
};

struct MatrixDiagnostic {
  std::string matrix;  // "criteria" or the criterion name
  ConsistencyReport report;

  friend bool operator==(const MatrixDiagnostic&, const MatrixDiagnostic&) = default;
};

struct RankedResult {
  std::string label;  // which pipeline produced it, e.g. "crisp/geomean"
  std::vector<std::string> criteria;
  std::vector<std::string> alternatives;
  WeightVector criteria_weights;
  std::vector<WeightVector> local_weights;
  std::vector<double> global_scores;
  std::vector<std::size_t> rank_order;
  std::vector<MatrixDiagnostic> diagnostics;  // crisp pipelines only

  friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

// Indices sorted by score, descending; equal scores keep input order.
std::vector<std::size_t> rank_order(std::span<const double> scores);

// score_a = sum_c criteria[c] * locals[c][a].
std::vector<double> aggregate_global(const WeightVector& criteria_weights, std::span<const WeightVector> locals);

RankedResult solve_crisp(const DecisionProblem& p, WeightMethod method = WeightMethod::GeometricMean);
RankedResult solve_fuzzy(const DecisionProblem& p);

// Crisp problem built from one component of every fuzzy cell, lower
// triangles rebuilt from the upper triangle.
DecisionProblem defuzzify_problem(const DecisionProblem& p, Attitude attitude);

// defuzzify_problem followed by a geometric-mean crisp solve.
RankedResult what_if_attitude(const DecisionProblem& p, Attitude attitude);

struct RankFlip {
  std::size_t first;   // alternative ranked above `second` by the first result
  std::size_t second;
};

struct ComparisonReport {
  std::vector<std::string> alternatives;
  std::string label_a;
  std::string label_b;
  std::vector<double> scores_a;
  std::vector<double> scores_b;
  std::vector<std::size_t> rank_a;
  std::vector<std::size_t> rank_b;
  std::vector<RankFlip> flips;
  bool top_agrees = true;
};

// Pairs whose relative order differs between two rank orders over the same
// index set.
std::vector<RankFlip> rank_flips(std::span<const std::size_t> rank_a, std::span<const std::size_t> rank_b);

ComparisonReport compare_rankings(const RankedResult& a, const RankedResult& b);

// A judgment as entered: crisp ratio or fuzzy number.
using Judgment = std::variant<double, Tfn>;

// New alternative for a rank-reversal probe. judgments[c][k] compares the
// new alternative against existing alternative k under criterion c.
struct NewAlternative {
  std::string name;
  std::vector<std::vector<Judgment>> judgments;
};

// Appends an alternative to every alternatives matrix (reciprocal-filled).
DecisionProblem extend_problem(const DecisionProblem& p, const NewAlternative& added);

struct ProbeReport {
  RankedResult before;
  RankedResult after;
  std::optional<std::string> added;
  std::vector<RankFlip> flips;  // among the original alternatives only
};

// Crisp problems are solved with `method`, fuzzy ones with extent analysis.
ProbeReport rank_reversal_probe(const DecisionProblem& p, const std::optional<NewAlternative>& added,
                                WeightMethod method = WeightMethod::GeometricMean);

}  // namespace fahp
