#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fahp/comparison.hpp"

namespace fahp {

// Triangular fuzzy number: lower limit, most promising value, upper limit.
struct Tfn {
  double l = 1.0;
  double m = 1.0;
  double u = 1.0;

  friend bool operator==(const Tfn&, const Tfn&) = default;
};

inline constexpr Tfn kUnitTfn{1.0, 1.0, 1.0};

bool is_ordered(const Tfn& t) noexcept;

// Throws MalformedTfn unless l <= m <= u and all components are finite.
Tfn make_tfn(double l, double m, double u);

Tfn tfn_add(const Tfn& a, const Tfn& b) noexcept;
// Component-wise product; both operands need l > 0.
Tfn tfn_mul(const Tfn& a, const Tfn& b);
// (1/u, 1/m, 1/l); needs l > 0.
Tfn tfn_invert(const Tfn& a);

inline Tfn operator+(const Tfn& a, const Tfn& b) noexcept { return tfn_add(a, b); }

// Piecewise-linear triangular membership. A collapsed leg (l == m or m == u)
// acts as a step that reaches 1 at m.
double membership_at(const Tfn& a, double x) noexcept;

inline constexpr int kScaleMin = 1;
inline constexpr int kScaleMax = 9;

// Fuzzy counterpart of a 1..9 judgment: 1 -> (1,1,1), otherwise
// (max(k-2, 1), k, min(k+2, 9)). The reciprocal flag inverts the result.
Tfn scale_to_tfn(int saaty, bool reciprocal = false);

enum class Attitude { Pessimistic, Moderate, Optimistic };

std::string_view to_string(Attitude attitude);
Attitude parse_attitude(std::string_view text);

double defuzzify(const Tfn& a, Attitude attitude) noexcept;

// "l/m/u" with four decimals.
std::string to_string(const Tfn& t);
// Accepts "[l, m, u]", "(l, m, u)" or "l/m/u". Throws ParseError / MalformedTfn.
Tfn parse_tfn(std::string_view text);

using RawFuzzyMatrix = std::vector<std::vector<Tfn>>;

// Square matrix of positive TFN judgments, unit diagonal, and cells that are
// component-wise reciprocal to their transpose within the lenient tolerance.
class FuzzyMatrix {
 public:
  std::size_t order() const noexcept { return order_; }
  const Tfn& operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  RawFuzzyMatrix to_raw() const;

  // Scales every component of every cell; used to probe scale invariance.
  FuzzyMatrix scaled(double factor) const;

  friend bool operator==(const FuzzyMatrix&, const FuzzyMatrix&) = default;

 private:
  friend class FuzzyMatrixFactory;
  FuzzyMatrix(std::size_t order, std::vector<Tfn> entries, std::vector<std::string> labels)
      : order_(order), entries_(std::move(entries)), labels_(std::move(labels)) {}

  std::size_t order_;
  std::vector<Tfn> entries_;
  std::vector<std::string> labels_;
};

// Rejects malformed cells, non-positive cells, non-unit diagonals and
// reciprocity violations beyond kLenientTolerance. Order 1 is allowed here
// (extent analysis of a single element is well defined).
FuzzyMatrix validate_fuzzy_matrix(const RawFuzzyMatrix& raw, std::vector<std::string> labels = {});

// Upper triangle authoritative: malformed upper cells are re-sorted, lower
// cells that are malformed or outside tolerance are replaced by the inverse
// of their upper partner. Every rewrite is logged.
Reconciled<FuzzyMatrix> reconcile_fuzzy_matrix(const RawFuzzyMatrix& raw, std::vector<std::string> labels = {},
                                               const std::string& name = {});

// Full overwrite of the lower triangle with inverses of the upper triangle.
FuzzyMatrix repair_fuzzy_matrix(const RawFuzzyMatrix& raw, std::vector<std::string> labels = {});

// Picks one component from every cell, then rebuilds a reciprocal crisp
// matrix from the upper triangle.
ComparisonMatrix defuzzify_matrix(const FuzzyMatrix& fm, Attitude attitude);

}  // namespace fahp
