#pragma once

#include <vector>

#include "fahp/comparison.hpp"
#include "fahp/fuzzy.hpp"

namespace fahp {

// Synthetic extents of a fuzzy comparison matrix.
struct ExtentSet {
  std::vector<Tfn> row_sums;
  std::vector<Tfn> column_sums;
  Tfn total;  // sum of every cell, before inversion
  std::vector<Tfn> extents;
};

// n x n degrees of possibility V(S_i >= S_j); unit diagonal.
struct PossibilityMatrix {
  std::size_t order = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * order + j]; }
};

// S_i = rowSum_i (x) total^-1, i.e. (row.l / total.u, row.m / total.m, row.u / total.l).
ExtentSet synthetic_extents(const FuzzyMatrix& fm);

// Degree of possibility V(a >= b): the height of the intersection of a's
// right leg with b's left leg, 1 when a.m >= b.m, 0 when the supports are
// disjoint the wrong way round.
double possibility(const Tfn& a, const Tfn& b);

PossibilityMatrix possibility_matrix(const std::vector<Tfn>& extents);

struct ExtentWeights {
  ExtentSet extents;
  PossibilityMatrix possibilities;
  std::vector<double> raw;  // min over k != i of V(S_i >= S_k)
  WeightVector weights;
};

// Full extent-analysis pass with intermediates kept for reporting.
ExtentWeights extent_analysis(const FuzzyMatrix& fm);

inline WeightVector extent_weights(const FuzzyMatrix& fm) { return extent_analysis(fm).weights; }

}  // namespace fahp
