#include "fahp/fuzzy.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "fahp/format.hpp"

namespace fahp {

class FuzzyMatrixFactory {
 public:
  static FuzzyMatrix make(std::size_t n, std::vector<Tfn> entries, std::vector<std::string> labels) {
    return FuzzyMatrix(n, std::move(entries), std::move(labels));
  }
};

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

bool positive(const Tfn& t) { return t.l > 0.0; }

bool finite(const Tfn& t) { return std::isfinite(t.l) && std::isfinite(t.m) && std::isfinite(t.u); }

bool reciprocal_within(const Tfn& a, const Tfn& b, double tol) {
  return std::abs(a.l * b.u - 1.0) <= tol && std::abs(a.m * b.m - 1.0) <= tol && std::abs(a.u * b.l - 1.0) <= tol;
}

bool unit_within(const Tfn& t, double tol) {
  return std::abs(t.l - 1.0) <= tol && std::abs(t.m - 1.0) <= tol && std::abs(t.u - 1.0) <= tol;
}

Tfn sorted(Tfn t) {
  std::array<double, 3> v{t.l, t.m, t.u};
  std::sort(v.begin(), v.end());
  return {v[0], v[1], v[2]};
}

std::size_t check_square(const RawFuzzyMatrix& raw) {
  const std::size_t n = raw.size();
  if (n == 0) throw Error(ErrorCode::OrderTooSmall, "empty fuzzy matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " + std::to_string(raw[i].size()) +
                                            " entries, expected " + std::to_string(n));
    }
  }
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

std::vector<Tfn> flatten(const RawFuzzyMatrix& raw) {
  std::vector<Tfn> out;
  for (const auto& row : raw) out.insert(out.end(), row.begin(), row.end());
  return out;
}

void require_positive_upper(const RawFuzzyMatrix& raw) {
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Tfn& t = raw[i][j];
      if (!finite(t) || std::min({t.l, t.m, t.u}) <= 0.0) {
        throw Error(ErrorCode::NonPositiveEntry, "cell " + cell_name(i, j) + " = " + to_string(t), CellRef{i, j});
      }
    }
  }
}

double parse_component(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

bool is_ordered(const Tfn& t) noexcept { return finite(t) && t.l <= t.m && t.m <= t.u; }

Tfn make_tfn(double l, double m, double u) {
  Tfn t{l, m, u};
  if (!is_ordered(t)) throw Error(ErrorCode::MalformedTfn, "need l <= m <= u, got " + to_string(t));
  return t;
}

Tfn tfn_add(const Tfn& a, const Tfn& b) noexcept { return {a.l + b.l, a.m + b.m, a.u + b.u}; }

Tfn tfn_mul(const Tfn& a, const Tfn& b) {
  if (!positive(a) || !positive(b)) {
    throw Error(ErrorCode::NonPositiveOperand, "fuzzy product of " + to_string(a) + " and " + to_string(b));
  }
  return {a.l * b.l, a.m * b.m, a.u * b.u};
}

Tfn tfn_invert(const Tfn& a) {
  if (!positive(a)) throw Error(ErrorCode::NonPositiveOperand, "cannot invert " + to_string(a));
  return {1.0 / a.u, 1.0 / a.m, 1.0 / a.l};
}

double membership_at(const Tfn& a, double x) noexcept {
  if (x == a.m) return 1.0;
  if (x < a.l || x > a.u) return 0.0;
  if (x < a.m) return a.m > a.l ? (x - a.l) / (a.m - a.l) : 0.0;
  return a.u > a.m ? (a.u - x) / (a.u - a.m) : 0.0;
}

Tfn scale_to_tfn(int saaty, bool reciprocal) {
  if (saaty < kScaleMin || saaty > kScaleMax) {
    throw Error(ErrorCode::OutOfScale, "judgment " + std::to_string(saaty) + " outside 1..9");
  }
  Tfn t = kUnitTfn;
  if (saaty > 1) {
    const double k = saaty;
    t = {std::max(k - 2.0, 1.0), k, std::min(k + 2.0, 9.0)};
  }
  return reciprocal ? tfn_invert(t) : t;
}

std::string_view to_string(Attitude attitude) {
  switch (attitude) {
    case Attitude::Pessimistic: return "pessimistic";
    case Attitude::Moderate: return "moderate";
    case Attitude::Optimistic: return "optimistic";
  }
  return "unknown";
}

Attitude parse_attitude(std::string_view text) {
  if (text == "pessimistic") return Attitude::Pessimistic;
  if (text == "moderate") return Attitude::Moderate;
  if (text == "optimistic") return Attitude::Optimistic;
  throw Error(ErrorCode::ParseError, "unknown attitude '" + std::string(text) + "'");
}

double defuzzify(const Tfn& a, Attitude attitude) noexcept {
  switch (attitude) {
    case Attitude::Pessimistic: return a.l;
    case Attitude::Moderate: return a.m;
    case Attitude::Optimistic: return a.u;
  }
  return a.m;
}

std::string to_string(const Tfn& t) { return fixed4(t.l) + "/" + fixed4(t.m) + "/" + fixed4(t.u); }

Tfn parse_tfn(std::string_view text) {
  std::string body(text);
  const auto first = body.find_first_not_of(" \t");
  const auto last = body.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error(ErrorCode::ParseError, "empty fuzzy number");
  body = body.substr(first, last - first + 1);
  char sep = '/';
  if ((body.front() == '[' && body.back() == ']') || (body.front() == '(' && body.back() == ')')) {
    body = body.substr(1, body.size() - 2);
    sep = ',';
  }
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = body.find(sep, start);
    parts.push_back(parse_component(std::string_view(body).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::ParseError, "fuzzy number needs three components: '" + std::string(text) + "'");
  }
  return make_tfn(parts[0], parts[1], parts[2]);
}

RawFuzzyMatrix FuzzyMatrix::to_raw() const {
  RawFuzzyMatrix raw(order_, std::vector<Tfn>(order_));
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) raw[i][j] = (*this)(i, j);
  return raw;
}

FuzzyMatrix FuzzyMatrix::scaled(double factor) const {
  std::vector<Tfn> cells = entries_;
  for (Tfn& t : cells) t = {t.l * factor, t.m * factor, t.u * factor};
  return FuzzyMatrix(order_, std::move(cells), labels_);
}

FuzzyMatrix validate_fuzzy_matrix(const RawFuzzyMatrix& raw, std::vector<std::string> labels) {
  const std::size_t n = check_square(raw);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Tfn& t = raw[i][j];
      if (!is_ordered(t)) {
        throw Error(ErrorCode::MalformedTfn, "cell " + cell_name(i, j) + " = " + to_string(t) + " is not l <= m <= u",
                    CellRef{i, j});
      }
      if (!positive(t)) {
        throw Error(ErrorCode::NonPositiveEntry, "cell " + cell_name(i, j) + " = " + to_string(t), CellRef{i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!unit_within(raw[i][i], kLenientTolerance)) {
      throw Error(ErrorCode::DiagonalNotOne, "diagonal cell " + std::to_string(i) + " = " + to_string(raw[i][i]),
                  CellRef{i, i});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!reciprocal_within(raw[i][j], raw[j][i], kLenientTolerance)) {
        throw Error(ErrorCode::ReciprocityViolation,
                    "cell " + cell_name(i, j) + " = " + to_string(raw[i][j]) + " but cell " + cell_name(j, i) + " = " +
                        to_string(raw[j][i]),
                    CellRef{i, j});
      }
    }
  }
  return FuzzyMatrixFactory::make(n, flatten(raw), checked_labels(std::move(labels), n));
}

Reconciled<FuzzyMatrix> reconcile_fuzzy_matrix(const RawFuzzyMatrix& raw, std::vector<std::string> labels,
                                               const std::string& name) {
  const std::size_t n = check_square(raw);
  RawFuzzyMatrix fixed = raw;
  std::vector<RepairEntry> log;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!is_ordered(fixed[i][j]) && finite(fixed[i][j])) {
        const Tfn resorted = sorted(fixed[i][j]);
        log.push_back({name, {i, j}, to_string(fixed[i][j]), to_string(resorted), "components re-sorted"});
        fixed[i][j] = resorted;
      }
    }
  }
  require_positive_upper(fixed);
  for (std::size_t i = 0; i < n; ++i) {
    if (!unit_within(fixed[i][i], kLenientTolerance) || !is_ordered(fixed[i][i])) {
      log.push_back({name, {i, i}, to_string(fixed[i][i]), to_string(kUnitTfn), "diagonal forced to (1,1,1)"});
    }
    fixed[i][i] = kUnitTfn;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Tfn& lower = fixed[j][i];
      std::string reason;
      if (!is_ordered(lower)) {
        reason = "malformed fuzzy number";
      } else if (!positive(lower)) {
        reason = "non-positive lower-triangle cell";
      } else if (!reciprocal_within(fixed[i][j], lower, kLenientTolerance)) {
        reason = "not reciprocal of " + cell_name(i, j);
      } else {
        continue;
      }
      const Tfn replacement = tfn_invert(fixed[i][j]);
      log.push_back({name, {j, i}, to_string(lower), to_string(replacement), std::move(reason)});
      fixed[j][i] = replacement;
    }
  }
  return {FuzzyMatrixFactory::make(n, flatten(fixed), checked_labels(std::move(labels), n)), std::move(log)};
}

FuzzyMatrix repair_fuzzy_matrix(const RawFuzzyMatrix& raw, std::vector<std::string> labels) {
  const std::size_t n = check_square(raw);
  RawFuzzyMatrix fixed(n, std::vector<Tfn>(n, kUnitTfn));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      fixed[i][j] = finite(raw[i][j]) ? sorted(raw[i][j]) : raw[i][j];
    }
  }
  require_positive_upper(fixed);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) fixed[j][i] = tfn_invert(fixed[i][j]);
  return FuzzyMatrixFactory::make(n, flatten(fixed), checked_labels(std::move(labels), n));
}

ComparisonMatrix defuzzify_matrix(const FuzzyMatrix& fm, Attitude attitude) {
  const std::size_t n = fm.order();
  RawMatrix raw(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) raw[i][j] = defuzzify(fm(i, j), attitude);
  return repair_matrix(raw, fm.labels());
}

}  // namespace fahp
