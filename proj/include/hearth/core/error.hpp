#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hearth {

enum class ErrorCode : std::uint8_t {
  // core runtime
  MalformedId,
  DuplicateId,
  UnknownEntity,
  TypeMismatch,
  DuplicateService,
  UnknownService,
  HandlerFailure,
  NonMonotoneTimestamp,
  // config
  SyntaxError,
  UnknownKey,
  WrongType,
  MissingKey,
  DanglingReference,
  InvalidTier,
  // automation
  UnknownAutomation,
  UnknownScene,
  Disabled,
  // memstore
  BudgetTooSmall,
  TooFewSamples,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Position inside a configuration document. `path` is always filled
/// (e.g. "scenes[0].targets[1].entity"); line/column come from the YAML
/// parser when the error originates there, 1-based.
struct SourceLocation {
  std::string path;
  std::optional<int> line;
  std::optional<int> column;

  std::string to_string() const;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, SourceLocation where);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourceLocation>& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<SourceLocation> where_;
};

}  // namespace hearth
