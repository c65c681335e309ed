#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qst {

enum class ErrorCode {
  InvalidSize,
  InvalidPair,
  Index,
  InvalidEdge,
  DuplicateEdge,
  InvalidParameter,
  NoPath,
  SizeLimit,
  InvalidVariance,
  NumericInput,
  NumericConsistency,
  Domain,
  UnsupportedSize,
  InvalidWindow,
  UnsupportedGraph,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qst
