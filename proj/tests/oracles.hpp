#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numeric code.

#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using RationalTfn = std::array<Rational, 3>;
using RationalFuzzyMatrix = std::vector<std::vector<RationalTfn>>;

// Exact value of a decimal literal such as "0.143".
Rational decimal(const std::string& text);
RationalTfn tfn(const std::string& l, const std::string& m, const std::string& u);

struct ExtentOracle {
  std::vector<RationalTfn> row_sums;
  RationalTfn total;
  std::vector<RationalTfn> extents;
  std::vector<std::vector<Rational>> possibility;
  std::vector<Rational> weights;
};

// Row sums, synthetic extents, degrees of possibility and normalized
// min-aggregated weights, all in exact rational arithmetic.
ExtentOracle extent_analysis(const RationalFuzzyMatrix& m);

// sup over x >= y of min(mu_a(x), mu_b(y)), evaluated on a dense grid with
// a running maximum of mu_b. Grid spacing keeps the slope error below 1e-4.
double possibility_grid(const std::array<double, 3>& a, const std::array<double, 3>& b);

// Largest real root of det(A - x I) found by Faddeev-LeVerrier coefficients
// and bisection in long double.
long double largest_eigenvalue(const std::vector<std::vector<long double>>& a);

}  // namespace oracle
