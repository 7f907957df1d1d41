#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fahp {

enum class ErrorCode {
  NonSquare,
  OrderTooSmall,
  NonPositiveEntry,
  DiagonalNotOne,
  ReciprocityViolation,
  MalformedTfn,
  NonPositiveOperand,
  OutOfScale,
  ConvergenceFailure,
  UnsupportedOrder,
  DegenerateTotal,
  DegenerateWeights,
  DimensionMismatch,
  AlternativeSetMismatch,
  ModeMismatch,
  InvalidProblem,
  ParseError,
  UnknownLabel,
  RaggedRows,
  BadNumber,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Cell coordinates are attached when the failure is tied to one matrix entry.
struct CellRef {
  std::size_t row;
  std::size_t col;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::optional<CellRef> cell = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<CellRef>& cell() const noexcept { return cell_; }
  // Name of the matrix that failed, when raised from inside a hierarchy.
  const std::string& context() const noexcept { return context_; }

  Error with_context(std::string context) const;

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<CellRef> cell_;
  std::string context_;
};

}  // namespace fahp
