#include "fahp/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fahp {

namespace {

constexpr const char* kCriteriaMatrix = "criteria";

void check_names(const std::vector<std::string>& names, const char* what) {
  if (names.empty()) throw Error(ErrorCode::InvalidProblem, std::string("no ") + what);
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw Error(ErrorCode::InvalidProblem, std::string("empty name in ") + what);
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::InvalidProblem, std::string("duplicate name '") + name + "' in " + what);
    }
  }
}

template <typename Matrix>
void check_shape(const std::vector<std::string>& criteria, const std::vector<std::string>& alternatives,
                 const Matrix& criteria_matrix, const std::vector<Matrix>& alternative_matrices) {
  check_names(criteria, "criteria");
  check_names(alternatives, "alternatives");
  if (criteria_matrix.order() != criteria.size()) {
    throw Error(ErrorCode::DimensionMismatch, "criteria matrix has order " + std::to_string(criteria_matrix.order()) +
                                                  " for " + std::to_string(criteria.size()) + " criteria");
  }
  if (alternative_matrices.size() != criteria.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(alternative_matrices.size()) +
                                                  " alternatives matrices for " + std::to_string(criteria.size()) +
                                                  " criteria");
  }
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    if (alternative_matrices[c].order() != alternatives.size()) {
      throw Error(ErrorCode::DimensionMismatch, "matrix for '" + criteria[c] + "' has order " +
                                                    std::to_string(alternative_matrices[c].order()) + " for " +
                                                    std::to_string(alternatives.size()) + " alternatives");
    }
  }
}

template <typename Fn>
auto tagged(const std::string& matrix, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw e.with_context(matrix);
  }
}

RankedResult assemble(const DecisionProblem& p, std::string label, WeightVector criteria_weights,
                      std::vector<WeightVector> locals) {
  RankedResult r;
  r.label = std::move(label);
  r.criteria = p.criteria();
  r.alternatives = p.alternatives();
  r.global_scores = aggregate_global(criteria_weights, locals);
  r.rank_order = rank_order(r.global_scores);
  r.criteria_weights = std::move(criteria_weights);
  r.local_weights = std::move(locals);
  return r;
}

ComparisonMatrix extend_crisp(const ComparisonMatrix& m, const std::vector<Judgment>& column,
                              std::vector<std::string> labels) {
  const std::size_t n = m.order();
  RawMatrix raw = m.to_raw();
  for (auto& row : raw) row.push_back(1.0);
  raw.emplace_back(n + 1, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double* v = std::get_if<double>(&column[k]);
    if (v == nullptr) throw Error(ErrorCode::ModeMismatch, "crisp problem needs crisp judgments for the new alternative");
    raw[n][k] = *v;
    raw[k][n] = 1.0 / *v;
  }
  return validate_matrix(raw, std::move(labels), Strictness::Lenient);
}

FuzzyMatrix extend_fuzzy(const FuzzyMatrix& m, const std::vector<Judgment>& column,
                         std::vector<std::string> labels) {
  const std::size_t n = m.order();
  RawFuzzyMatrix raw = m.to_raw();
  for (auto& row : raw) row.push_back(kUnitTfn);
  raw.emplace_back(n + 1, kUnitTfn);
  for (std::size_t k = 0; k < n; ++k) {
    const Tfn* t = std::get_if<Tfn>(&column[k]);
    if (t == nullptr) throw Error(ErrorCode::ModeMismatch, "fuzzy problem needs fuzzy judgments for the new alternative");
    raw[n][k] = *t;
    raw[k][n] = tfn_invert(*t);
  }
  return validate_fuzzy_matrix(raw, std::move(labels));
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Crisp ? "crisp" : "fuzzy"; }

Mode parse_mode(std::string_view text) {
  if (text == "crisp") return Mode::Crisp;
  if (text == "fuzzy") return Mode::Fuzzy;
  throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(text) + "'");
}

DecisionProblem DecisionProblem::make_crisp(std::string goal, std::vector<std::string> criteria,
                                            std::vector<std::string> alternatives, CrispJudgments judgments) {
  check_shape(criteria, alternatives, judgments.criteria, judgments.alternatives);
  return DecisionProblem(std::move(goal), std::move(criteria), std::move(alternatives), std::move(judgments));
}

DecisionProblem DecisionProblem::make_fuzzy(std::string goal, std::vector<std::string> criteria,
                                            std::vector<std::string> alternatives, FuzzyJudgments judgments) {
  check_shape(criteria, alternatives, judgments.criteria, judgments.alternatives);
  return DecisionProblem(std::move(goal), std::move(criteria), std::move(alternatives), std::move(judgments));
}

const CrispJudgments& DecisionProblem::crisp() const {
  if (const auto* j = std::get_if<CrispJudgments>(&judgments_)) return *j;
  throw Error(ErrorCode::ModeMismatch, "problem holds fuzzy judgments");
}

const FuzzyJudgments& DecisionProblem::fuzzy() const {
  if (const auto* j = std::get_if<FuzzyJudgments>(&judgments_)) return *j;
  throw Error(ErrorCode::ModeMismatch, "problem holds crisp judgments");
}

std::vector<std::size_t> rank_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<double> aggregate_global(const WeightVector& criteria_weights, std::span<const WeightVector> locals) {
  if (locals.size() != criteria_weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(criteria_weights.size()) + " criteria weights but " +
                                                  std::to_string(locals.size()) + " local weight vectors");
  }
  if (locals.empty()) return {};
  const std::size_t alternatives = locals.front().size();
  std::vector<double> scores(alternatives, 0.0);
  for (std::size_t c = 0; c < locals.size(); ++c) {
    if (locals[c].size() != alternatives) {
      throw Error(ErrorCode::DimensionMismatch, "local weight vector " + std::to_string(c) + " has " +
                                                    std::to_string(locals[c].size()) + " entries, expected " +
                                                    std::to_string(alternatives));
    }
    for (std::size_t a = 0; a < alternatives; ++a) scores[a] += criteria_weights[c] * locals[c][a];
  }
  return scores;
}

RankedResult solve_crisp(const DecisionProblem& p, WeightMethod method) {
  const CrispJudgments& j = p.crisp();
  if (method == WeightMethod::Extent) throw Error(ErrorCode::ModeMismatch, "extent analysis needs fuzzy judgments");
  std::vector<MatrixDiagnostic> diagnostics;
  WeightVector criteria_weights = tagged(kCriteriaMatrix, [&] {
    diagnostics.push_back({kCriteriaMatrix, consistency(j.criteria)});
    return crisp_weights(j.criteria, method);
  });
  std::vector<WeightVector> locals;
  for (std::size_t c = 0; c < p.criteria().size(); ++c) {
    locals.push_back(tagged(p.criteria()[c], [&] {
      diagnostics.push_back({p.criteria()[c], consistency(j.alternatives[c])});
      return crisp_weights(j.alternatives[c], method);
    }));
  }
  RankedResult r = assemble(p, "crisp/" + std::string(to_string(method)), std::move(criteria_weights),
                            std::move(locals));
  r.diagnostics = std::move(diagnostics);
  return r;
}

RankedResult solve_fuzzy(const DecisionProblem& p) {
  const FuzzyJudgments& j = p.fuzzy();
  WeightVector criteria_weights = tagged(kCriteriaMatrix, [&] { return extent_weights(j.criteria); });
  std::vector<WeightVector> locals;
  for (std::size_t c = 0; c < p.criteria().size(); ++c) {
    locals.push_back(tagged(p.criteria()[c], [&] { return extent_weights(j.alternatives[c]); }));
  }
  return assemble(p, "fuzzy/extent", std::move(criteria_weights), std::move(locals));
}

DecisionProblem defuzzify_problem(const DecisionProblem& p, Attitude attitude) {
  const FuzzyJudgments& j = p.fuzzy();
  CrispJudgments crisp{defuzzify_matrix(j.criteria, attitude), {}};
  for (const auto& m : j.alternatives) crisp.alternatives.push_back(defuzzify_matrix(m, attitude));
  return DecisionProblem::make_crisp(p.goal(), p.criteria(), p.alternatives(), std::move(crisp));
}

RankedResult what_if_attitude(const DecisionProblem& p, Attitude attitude) {
  RankedResult r = solve_crisp(defuzzify_problem(p, attitude), WeightMethod::GeometricMean);
  r.label = "what-if/" + std::string(to_string(attitude));
  return r;
}

std::vector<RankFlip> rank_flips(std::span<const std::size_t> rank_a, std::span<const std::size_t> rank_b) {
  const std::size_t n = rank_a.size();
  std::vector<std::size_t> pos_b(n);
  for (std::size_t r = 0; r < n; ++r) pos_b[rank_b[r]] = r;
  std::vector<RankFlip> flips;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (pos_b[rank_a[x]] > pos_b[rank_a[y]]) flips.push_back({rank_a[x], rank_a[y]});
    }
  }
  return flips;
}

ComparisonReport compare_rankings(const RankedResult& a, const RankedResult& b) {
  if (a.alternatives != b.alternatives) {
    throw Error(ErrorCode::AlternativeSetMismatch, "results rank different alternative sets");
  }
  ComparisonReport out;
  out.alternatives = a.alternatives;
  out.label_a = a.label;
  out.label_b = b.label;
  out.scores_a = a.global_scores;
  out.scores_b = b.global_scores;
  out.rank_a = a.rank_order;
  out.rank_b = b.rank_order;
  out.flips = rank_flips(a.rank_order, b.rank_order);
  out.top_agrees = a.rank_order.empty() || a.rank_order.front() == b.rank_order.front();
  return out;
}

DecisionProblem extend_problem(const DecisionProblem& p, const NewAlternative& added) {
  const std::size_t criteria = p.criteria().size();
  const std::size_t existing = p.alternatives().size();
  if (added.judgments.size() != criteria) {
    throw Error(ErrorCode::DimensionMismatch, "new alternative has judgments for " +
                                                  std::to_string(added.judgments.size()) + " criteria, expected " +
                                                  std::to_string(criteria));
  }
  for (std::size_t c = 0; c < criteria; ++c) {
    if (added.judgments[c].size() != existing) {
      throw Error(ErrorCode::DimensionMismatch, "new alternative has " + std::to_string(added.judgments[c].size()) +
                                                    " judgments under '" + p.criteria()[c] + "', expected " +
                                                    std::to_string(existing));
    }
  }
  std::vector<std::string> names = p.alternatives();
  names.push_back(added.name);
  if (p.mode() == Mode::Crisp) {
    CrispJudgments j{p.crisp().criteria, {}};
    for (std::size_t c = 0; c < criteria; ++c) {
      j.alternatives.push_back(
          tagged(p.criteria()[c], [&] { return extend_crisp(p.crisp().alternatives[c], added.judgments[c], names); }));
    }
    return DecisionProblem::make_crisp(p.goal(), p.criteria(), std::move(names), std::move(j));
  }
  FuzzyJudgments j{p.fuzzy().criteria, {}};
  for (std::size_t c = 0; c < criteria; ++c) {
    j.alternatives.push_back(
        tagged(p.criteria()[c], [&] { return extend_fuzzy(p.fuzzy().alternatives[c], added.judgments[c], names); }));
  }
  return DecisionProblem::make_fuzzy(p.goal(), p.criteria(), std::move(names), std::move(j));
}

ProbeReport rank_reversal_probe(const DecisionProblem& p, const std::optional<NewAlternative>& added,
                                WeightMethod method) {
  auto solve = [method](const DecisionProblem& q) {
    return q.mode() == Mode::Crisp ? solve_crisp(q, method) : solve_fuzzy(q);
  };
  ProbeReport out;
  out.before = solve(p);
  if (!added) {
    out.after = out.before;
    return out;
  }
  out.added = added->name;
  out.after = solve(extend_problem(p, *added));
  // Rank order of the original alternatives only, as seen after the addition.
  std::vector<std::size_t> restricted;
  for (std::size_t idx : out.after.rank_order) {
    if (idx < p.alternatives().size()) restricted.push_back(idx);
  }
  out.flips = rank_flips(out.before.rank_order, restricted);
  return out;
}

}  // namespace fahp
