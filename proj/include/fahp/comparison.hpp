#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fahp/error.hpp"

namespace fahp {

// Row-major square array as read from user input, before validation.
using RawMatrix = std::vector<std::vector<double>>;

enum class Strictness { Strict, Lenient };

inline constexpr double kStrictTolerance = 1e-9;
// Data files print reciprocals to two or three decimals (0.14 for 1/7).
inline constexpr double kLenientTolerance = 0.05;

double tolerance_for(Strictness strictness) noexcept;

// Positive reciprocal matrix of crisp judgments with unit diagonal.
// Only obtainable through validate_matrix / repair_matrix / consistent_matrix.
class ComparisonMatrix {
 public:
  std::size_t order() const noexcept { return order_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  RawMatrix to_raw() const;

  friend bool operator==(const ComparisonMatrix&, const ComparisonMatrix&) = default;

 private:
  friend class MatrixFactory;
  ComparisonMatrix(std::size_t order, std::vector<double> entries, std::vector<std::string> labels)
      : order_(order), entries_(std::move(entries)), labels_(std::move(labels)) {}

  std::size_t order_;
  std::vector<double> entries_;
  std::vector<std::string> labels_;
};

enum class WeightMethod { Eigen, GeometricMean, Extent };

std::string_view to_string(WeightMethod method);

struct WeightVector {
  std::vector<double> weights;
  WeightMethod method = WeightMethod::Eigen;

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

struct EigenWeights {
  WeightVector weights;
  double lambda_max = 0.0;
  int iterations = 0;
};

struct ConsistencyReport {
  double lambda_max = 0.0;
  double ci = 0.0;
  double cr = 0.0;
  bool consistent = true;

  friend bool operator==(const ConsistencyReport&, const ConsistencyReport&) = default;
};

inline constexpr double kConsistencyThreshold = 0.10;
inline constexpr std::size_t kMaxRandomIndexOrder = 15;

// One cell rewritten by lenient reconciliation. Values are rendered text so
// crisp and fuzzy repairs share a log format.
struct RepairEntry {
  std::string matrix;
  CellRef cell;
  std::string before;
  std::string after;
  std::string reason;
};

template <typename Matrix>
struct Reconciled {
  Matrix matrix;
  std::vector<RepairEntry> repairs;
};

// Labels may be empty, in which case "1".."n" are generated.
ComparisonMatrix validate_matrix(const RawMatrix& raw, std::vector<std::string> labels = {},
                                 Strictness strictness = Strictness::Strict);

// Keeps the strict upper triangle, forces a unit diagonal and rewrites the
// lower triangle with reciprocals. Idempotent.
ComparisonMatrix repair_matrix(const RawMatrix& raw, std::vector<std::string> labels = {});

// Lenient validation that only rewrites the cells it has to: lower-triangle
// cells outside the lenient tolerance (or non-positive) become the reciprocal
// of their upper-triangle partner, and off-unit diagonals become 1. Cells
// within tolerance keep their printed values.
Reconciled<ComparisonMatrix> reconcile_matrix(const RawMatrix& raw, std::vector<std::string> labels = {},
                                              const std::string& name = {});

// a_ij = w_i / w_j; w must be strictly positive.
ComparisonMatrix consistent_matrix(std::span<const double> weights, std::vector<std::string> labels = {});

EigenWeights eigen_weights(const ComparisonMatrix& m);
WeightVector geometric_mean_weights(const ComparisonMatrix& m);

// Saaty random index; throws UnsupportedOrder above order 15.
double random_index(std::size_t order);
ConsistencyReport consistency(const ComparisonMatrix& m);

// Convenience: dispatches to eigen or geometric-mean extraction.
WeightVector crisp_weights(const ComparisonMatrix& m, WeightMethod method);

std::vector<std::string> default_labels(std::size_t n);

}  // namespace fahp
