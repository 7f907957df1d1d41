#include "fahp/comparison.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "fahp/format.hpp"

namespace fahp {

class MatrixFactory {
 public:
  static ComparisonMatrix make(std::size_t n, std::vector<double> entries, std::vector<std::string> labels) {
    return ComparisonMatrix(n, std::move(entries), std::move(labels));
  }
};

namespace {

constexpr int kPowerIterationCap = 10000;
constexpr double kPowerIterationTolerance = 1e-12;

constexpr std::array<double, kMaxRandomIndexOrder + 1> kRandomIndex = {
    0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.54, 1.56, 1.57, 1.58};

std::size_t check_square(const RawMatrix& raw) {
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " + std::to_string(raw[i].size()) +
                                            " entries, expected " + std::to_string(n));
    }
  }
  if (n < 1) throw Error(ErrorCode::OrderTooSmall, "empty comparison matrix");
  return n;
}

std::vector<std::string> checked_labels(std::vector<std::string> labels, std::size_t n) {
  if (labels.empty()) return default_labels(n);
  if (labels.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(labels.size()) + " labels for a matrix of order " + std::to_string(n));
  }
  return labels;
}

bool reciprocal_within(double a, double b, double tol) { return std::abs(a * b - 1.0) <= tol; }

Error non_positive(std::size_t i, std::size_t j, double v) {
  return Error(ErrorCode::NonPositiveEntry,
               "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + format_number(v), CellRef{i, j});
}

std::vector<double> flatten(const RawMatrix& raw) {
  std::vector<double> out;
  out.reserve(raw.size() * raw.size());
  for (const auto& row : raw) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

double tolerance_for(Strictness strictness) noexcept {
  return strictness == Strictness::Strict ? kStrictTolerance : kLenientTolerance;
}

std::string_view to_string(WeightMethod method) {
  switch (method) {
    case WeightMethod::Eigen: return "eigen";
    case WeightMethod::GeometricMean: return "geomean";
    case WeightMethod::Extent: return "extent";
  }
  return "unknown";
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i + 1));
  return out;
}

RawMatrix ComparisonMatrix::to_raw() const {
  RawMatrix raw(order_, std::vector<double>(order_));
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) raw[i][j] = (*this)(i, j);
  return raw;
}

ComparisonMatrix validate_matrix(const RawMatrix& raw, std::vector<std::string> labels, Strictness strictness) {
  const std::size_t n = check_square(raw);
  const double tol = tolerance_for(strictness);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = raw[i][j];
      if (!(v > 0.0) || !std::isfinite(v)) throw non_positive(i, j, v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(raw[i][i] - 1.0) > tol) {
      throw Error(ErrorCode::DiagonalNotOne,
                  "diagonal entry " + std::to_string(i) + " = " + format_number(raw[i][i]), CellRef{i, i});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!reciprocal_within(raw[i][j], raw[j][i], tol)) {
        throw Error(ErrorCode::ReciprocityViolation,
                    "a(" + std::to_string(i) + "," + std::to_string(j) + ") = " + format_number(raw[i][j]) + " but a(" +
                        std::to_string(j) + "," + std::to_string(i) + ") = " + format_number(raw[j][i]),
                    CellRef{i, j});
      }
    }
  }
  return MatrixFactory::make(n, flatten(raw), checked_labels(std::move(labels), n));
}

ComparisonMatrix repair_matrix(const RawMatrix& raw, std::vector<std::string> labels) {
  const std::size_t n = check_square(raw);
  std::vector<double> entries(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = raw[i][j];
      if (!(v > 0.0) || !std::isfinite(v)) throw non_positive(i, j, v);
      entries[i * n + j] = v;
      entries[j * n + i] = 1.0 / v;
    }
  }
  return MatrixFactory::make(n, std::move(entries), checked_labels(std::move(labels), n));
}

Reconciled<ComparisonMatrix> reconcile_matrix(const RawMatrix& raw, std::vector<std::string> labels,
                                              const std::string& name) {
  const std::size_t n = check_square(raw);
  RawMatrix fixed = raw;
  std::vector<RepairEntry> log;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = raw[i][j];
      if (!(v > 0.0) || !std::isfinite(v)) throw non_positive(i, j, v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(raw[i][i] - 1.0) > kLenientTolerance) {
      log.push_back({name, {i, i}, format_number(raw[i][i]), "1", "diagonal forced to 1"});
    }
    fixed[i][i] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double lower = raw[j][i];
      const bool usable = lower > 0.0 && std::isfinite(lower);
      if (usable && reciprocal_within(raw[i][j], lower, kLenientTolerance)) continue;
      fixed[j][i] = 1.0 / raw[i][j];
      log.push_back({name, {j, i}, format_number(lower), format_number(fixed[j][i]),
                     usable ? "not reciprocal of (" + std::to_string(i) + "," + std::to_string(j) + ")"
                            : "non-positive lower-triangle entry"});
    }
  }
  return {MatrixFactory::make(n, flatten(fixed), checked_labels(std::move(labels), n)), std::move(log)};
}

ComparisonMatrix consistent_matrix(std::span<const double> weights, std::vector<std::string> labels) {
  const std::size_t n = weights.size();
  if (n < 1) throw Error(ErrorCode::OrderTooSmall, "need at least one weight");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0)) throw non_positive(i, i, weights[i]);
  }
  std::vector<double> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = i == j ? 1.0 : weights[i] / weights[j];
  return MatrixFactory::make(n, std::move(entries), checked_labels(std::move(labels), n));
}

EigenWeights eigen_weights(const ComparisonMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int iter = 1; iter <= kPowerIterationCap; ++iter) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * w[j];
      next[i] = acc;
      total += acc;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - w[i]));
    }
    w.swap(next);
    if (delta < kPowerIterationTolerance) {
      // λ_max as the mean of (Aw)_i / w_i.
      double lambda = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double aw = 0.0;
        for (std::size_t j = 0; j < n; ++j) aw += m(i, j) * w[j];
        lambda += aw / w[i];
      }
      return {{std::move(w), WeightMethod::Eigen}, lambda / static_cast<double>(n), iter};
    }
  }
  throw Error(ErrorCode::ConvergenceFailure,
              "power iteration did not settle within " + std::to_string(kPowerIterationCap) + " iterations");
}

WeightVector geometric_mean_weights(const ComparisonMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(m(i, j));
    r[i] = std::exp(log_sum / static_cast<double>(n));
  }
  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  for (double& x : r) x /= total;
  return {std::move(r), WeightMethod::GeometricMean};
}

double random_index(std::size_t order) {
  if (order > kMaxRandomIndexOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "random index is tabulated up to order 15, got " + std::to_string(order));
  }
  return kRandomIndex[order];
}

ConsistencyReport consistency(const ComparisonMatrix& m) {
  const std::size_t n = m.order();
  const double ri = random_index(n);
  const double lambda = eigen_weights(m).lambda_max;
  const double ci = n > 1 ? (lambda - static_cast<double>(n)) / static_cast<double>(n - 1) : 0.0;
  // Orders 1 and 2 are always consistent; RI is zero there.
  const double cr = ri > 0.0 ? ci / ri : 0.0;
  return {lambda, ci, cr, cr <= kConsistencyThreshold};
}

WeightVector crisp_weights(const ComparisonMatrix& m, WeightMethod method) {
  switch (method) {
    case WeightMethod::Eigen: return eigen_weights(m).weights;
    case WeightMethod::GeometricMean: return geometric_mean_weights(m);
    case WeightMethod::Extent: break;
  }
  throw Error(ErrorCode::ModeMismatch, "extent analysis needs a fuzzy matrix");
}

}  // namespace fahp
