#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

Rational decimal(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return decimal(text + ".0");
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  // cpp_int reads a leading zero as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  boost::multiprecision::cpp_int denom = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) denom *= 10;
  return Rational(boost::multiprecision::cpp_int(digits)) / Rational(denom);
}

RationalTfn tfn(const std::string& l, const std::string& m, const std::string& u) {
  return {decimal(l), decimal(m), decimal(u)};
}

namespace {

Rational v_closed(const RationalTfn& a, const RationalTfn& b) {
  if (a[1] >= b[1]) return 1;
  if (b[0] >= a[2]) return 0;
  return (b[0] - a[2]) / ((a[1] - a[2]) - (b[1] - b[0]));
}

double membership(const std::array<double, 3>& t, double x) {
  const double l = t[0], m = t[1], u = t[2];
  if (x == m) return 1.0;
  if (x < l || x > u) return 0.0;
  if (x < m) return m > l ? (x - l) / (m - l) : 0.0;
  return u > m ? (u - x) / (u - m) : 0.0;
}

}  // namespace

ExtentOracle extent_analysis(const RationalFuzzyMatrix& m) {
  const std::size_t n = m.size();
  ExtentOracle out;
  out.total = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    RationalTfn row{0, 0, 0};
    for (std::size_t j = 0; j < n; ++j)
      for (int k = 0; k < 3; ++k) row[k] += m[i][j][k];
    for (int k = 0; k < 3; ++k) out.total[k] += row[k];
    out.row_sums.push_back(row);
  }
  for (const auto& row : out.row_sums) {
    out.extents.push_back({row[0] / out.total[2], row[1] / out.total[1], row[2] / out.total[0]});
  }
  out.possibility.assign(n, std::vector<Rational>(n, 1));
  std::vector<Rational> raw(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k) continue;
      out.possibility[i][k] = v_closed(out.extents[i], out.extents[k]);
      raw[i] = std::min(raw[i], out.possibility[i][k]);
    }
  }
  Rational sum = 0;
  for (const auto& r : raw) sum += r;
  for (const auto& r : raw) out.weights.push_back(r / sum);
  return out;
}

double possibility_grid(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double lo0 = std::min(a[0], b[0]);
  const double hi0 = std::max(a[2], b[2]);
  if (!(hi0 > lo0)) return 1.0;
  constexpr std::size_t kPoints = 20000;

  // One pass over [lo, hi]; `carry` is sup mu_b on y < lo. Returns the best
  // objective and the grid cell around its argmax.
  struct Pass {
    double best;
    double left;
    double right;
    double carry_left;
  };
  auto pass = [&](double lo, double hi, double carry) {
    std::vector<double> xs;
    xs.reserve(kPoints + 8);
    for (std::size_t k = 0; k <= kPoints; ++k) xs.push_back(lo + (hi - lo) * static_cast<double>(k) / kPoints);
    for (double x : {a[0], a[1], a[2], b[0], b[1], b[2]})
      if (x > lo && x < hi) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    std::vector<double> prefix(xs.size());
    double running = carry;
    Pass out{-1.0, lo, hi, carry};
    std::size_t arg = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      running = std::max(running, membership(b, xs[k]));
      prefix[k] = running;
      const double v = std::min(membership(a, xs[k]), running);
      if (v > out.best) {
        out.best = v;
        arg = k;
      }
    }
    const std::size_t left = arg == 0 ? 0 : arg - 1;
    out.left = xs[left];
    out.right = xs[std::min(arg + 1, xs.size() - 1)];
    out.carry_left = left == 0 ? carry : prefix[left - 1];
    return out;
  };

  Pass p = pass(lo0, hi0, 0.0);
  double best = p.best;
  for (int zoom = 0; zoom < 4 && p.right > p.left; ++zoom) {
    p = pass(p.left, p.right, p.carry_left);
    best = std::max(best, p.best);
  }
  return best;
}

long double largest_eigenvalue(const std::vector<std::vector<long double>>& a) {
  const std::size_t n = a.size();
  using Mat = std::vector<std::vector<long double>>;
  auto mul = [n](const Mat& x, const Mat& y) {
    Mat z(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  // Faddeev-LeVerrier: p(x) = x^n + c[n-1] x^(n-1) + ... + c[0].
  std::vector<long double> c(n + 1, 0.0L);
  c[n] = 1.0L;
  Mat m(n, std::vector<long double>(n, 0.0L));
  for (std::size_t k = 1; k <= n; ++k) {
    Mat am = mul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    const Mat amk = mul(a, m);
    long double trace = 0.0L;
    for (std::size_t i = 0; i < n; ++i) trace += amk[i][i];
    c[n - k] = -trace / static_cast<long double>(k);
  }
  auto p = [&](long double x) {
    long double acc = 0.0L;
    for (std::size_t k = n + 1; k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  long double bound = 0.0L;
  for (const auto& row : a) {
    long double s = 0.0L;
    for (long double v : row) s += std::fabs(v);
    bound = std::max(bound, s);
  }
  // Scan down from the Gershgorin bound for the first sign change.
  const int steps = 200000;
  long double hi = bound + 1.0L;
  const long double dx = (bound + 1.0L) / steps;
  long double lo = hi - dx;
  while (lo > -bound - 1.0L && (p(lo) > 0) == (p(hi) > 0)) {
    hi = lo;
    lo -= dx;
  }
  for (int k = 0; k < 200; ++k) {
    const long double mid = (lo + hi) / 2;
    if ((p(mid) > 0) == (p(hi) > 0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace oracle
