#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fahp/comparison.hpp"
#include "fahp/fuzzy.hpp"

namespace support {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Positive weights summing to 1, spread across two orders of magnitude.
inline std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.05, 5.0);
  std::vector<double> w(n);
  for (auto& x : w) x = dist(rng);
  const double s = sum(w);
  for (auto& x : w) x /= s;
  return w;
}

inline fahp::RawMatrix ratio_matrix(const std::vector<double>& w) {
  fahp::RawMatrix m(w.size(), std::vector<double>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m[i][j] = w[i] / w[j];
  return m;
}

// Reciprocal matrix from random Saaty-scale judgments above the diagonal.
inline fahp::RawMatrix random_reciprocal(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> scale(1, 9);
  std::bernoulli_distribution flip(0.5);
  fahp::RawMatrix m(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = scale(rng);
      if (flip(rng)) v = 1.0 / v;
      m[i][j] = v;
      m[j][i] = 1.0 / v;
    }
  }
  return m;
}

inline fahp::Tfn random_tfn(std::mt19937_64& rng, double lo = 0.05, double hi = 9.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  double a = dist(rng), b = dist(rng), c = dist(rng);
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return {a, b, c};
}

// Reciprocal fuzzy matrix built from random ordered upper-triangle cells.
inline fahp::RawFuzzyMatrix random_fuzzy(std::mt19937_64& rng, std::size_t n) {
  fahp::RawFuzzyMatrix m(n, std::vector<fahp::Tfn>(n, fahp::kUnitTfn));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const fahp::Tfn t = random_tfn(rng, 0.12, 9.0);
      m[i][j] = t;
      m[j][i] = {1.0 / t.u, 1.0 / t.m, 1.0 / t.l};
    }
  }
  return m;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

template <typename T>
std::vector<std::vector<T>> permute(const std::vector<std::vector<T>>& m, const std::vector<std::size_t>& p) {
  std::vector<std::vector<T>> out(m.size(), std::vector<T>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[p[i]][p[j]];
  return out;
}

// Crisp criteria judgments of the case study.
inline fahp::RawMatrix case_criteria() {
  return {{1, 1.0 / 5, 1.0 / 3, 1}, {5, 1, 1, 7}, {3, 1, 1, 7}, {1, 1.0 / 7, 1.0 / 7, 1}};
}

inline fahp::RawFuzzyMatrix case_fuzzy_criteria() {
  return {{{1, 1, 1}, {0.14, 0.2, 0.33}, {0.2, 0.33, 1}, {1, 1, 1}},
          {{3, 5, 7}, {1, 1, 1}, {1, 1, 1}, {5, 7, 9}},
          {{1, 3, 5}, {1, 1, 1}, {1, 1, 1}, {5, 7, 9}},
          {{1, 1, 1}, {0.11, 0.143, 0.2}, {0.11, 0.143, 0.2}, {1, 1, 1}}};
}

}  // namespace support

#include "fahp/error.hpp"

// Runs `expr` and returns the library error code it raised; fails the test if
// nothing (or something else) is thrown.
#define FAHP_ERROR_CODE(expr)                                  \
  ([&]() -> std::optional<fahp::ErrorCode> {                   \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const fahp::Error& e) {                           \
      return e.code();                                         \
    }                                                          \
    return std::nullopt;                                       \
  }())
