#include "fahp/error.hpp"

namespace fahp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::DiagonalNotOne: return "DiagonalNotOne";
    case ErrorCode::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorCode::MalformedTfn: return "MalformedTfn";
    case ErrorCode::NonPositiveOperand: return "NonPositiveOperand";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::DegenerateTotal: return "DegenerateTotal";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AlternativeSetMismatch: return "AlternativeSetMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::BadNumber: return "BadNumber";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail) {
  std::string out{to_string(code)};
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, std::optional<CellRef> cell)
    : std::runtime_error(compose(code, detail)), code_(code), detail_(std::move(detail)), cell_(cell) {}

Error Error::with_context(std::string context) const {
  Error tagged(code_, context + ": " + detail_, cell_);
  tagged.context_ = std::move(context);
  return tagged;
}

}  // namespace fahp
