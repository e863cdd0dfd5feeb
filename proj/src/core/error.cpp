#include "hearth/core/error.hpp"

namespace hearth {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedId: return "MalformedId";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::DuplicateService: return "DuplicateService";
    case ErrorCode::UnknownService: return "UnknownService";
    case ErrorCode::HandlerFailure: return "HandlerFailure";
    case ErrorCode::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::WrongType: return "WrongType";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::InvalidTier: return "InvalidTier";
    case ErrorCode::UnknownAutomation: return "UnknownAutomation";
    case ErrorCode::UnknownScene: return "UnknownScene";
    case ErrorCode::Disabled: return "Disabled";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string SourceLocation::to_string() const {
  std::string out = path.empty() ? std::string("<document>") : path;
  if (line) {
    out += " (line " + std::to_string(*line);
    if (column) out += ", column " + std::to_string(*column);
    out += ")";
  }
  return out;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(hearth::to_string(code)) + ": " + message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, SourceLocation where)
    : std::runtime_error(std::string(hearth::to_string(code)) + " at " + where.to_string() + ": " +
                         message),
      code_(code),
      where_(std::move(where)) {}

}  // namespace hearth
