#include "fahp/extent.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "fahp/format.hpp"

namespace fahp {

ExtentSet synthetic_extents(const FuzzyMatrix& fm) {
  const std::size_t n = fm.order();
  ExtentSet out;
  out.row_sums.assign(n, Tfn{0.0, 0.0, 0.0});
  out.column_sums.assign(n, Tfn{0.0, 0.0, 0.0});
  out.total = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.row_sums[i] = out.row_sums[i] + fm(i, j);
      out.column_sums[j] = out.column_sums[j] + fm(i, j);
    }
  }
  for (const Tfn& row : out.row_sums) out.total = out.total + row;
  if (out.total.l <= 0.0 || out.total.m <= 0.0 || out.total.u <= 0.0) {
    throw Error(ErrorCode::DegenerateTotal, "cell total " + to_string(out.total) + " has a non-positive component");
  }
  const Tfn inverse = tfn_invert(out.total);
  out.extents.reserve(n);
  for (const Tfn& row : out.row_sums) out.extents.push_back(tfn_mul(row, inverse));
  return out;
}

double possibility(const Tfn& a, const Tfn& b) {
  if (a.m >= b.m) return 1.0;
  if (b.l >= a.u) return 0.0;
  // a.m < b.m and b.l < a.u: a's falling leg meets b's rising leg.
  const double denom = (a.m - a.u) - (b.m - b.l);
  const double v = (b.l - a.u) / denom;
  const double clamped = std::clamp(v, 0.0, 1.0);
  if (std::abs(clamped - v) > 1e-9) {
    std::clog << "fahp: possibility " << format_number(v) << " clamped to [0,1] for " << to_string(a) << " >= "
              << to_string(b) << '\n';
  }
  return clamped;
}

PossibilityMatrix possibility_matrix(const std::vector<Tfn>& extents) {
  const std::size_t n = extents.size();
  PossibilityMatrix out{n, std::vector<double>(n * n, 1.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.values[i * n + j] = possibility(extents[i], extents[j]);
  return out;
}

ExtentWeights extent_analysis(const FuzzyMatrix& fm) {
  ExtentWeights out;
  out.extents = synthetic_extents(fm);
  out.possibilities = possibility_matrix(out.extents.extents);
  const std::size_t n = fm.order();
  out.raw.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) out.raw[i] = std::min(out.raw[i], out.possibilities(i, k));
  const double total = std::accumulate(out.raw.begin(), out.raw.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::DegenerateWeights, "every extent is dominated; raw weights sum to zero");
  }
  std::vector<double> w(n);
  std::transform(out.raw.begin(), out.raw.end(), w.begin(), [total](double r) { return r / total; });
  out.weights = {std::move(w), WeightMethod::Extent};
  return out;
}

}  // namespace fahp
