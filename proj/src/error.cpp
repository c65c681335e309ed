#include "qst/error.hpp"

namespace qst {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSize: return "invalid-size";
    case ErrorCode::InvalidPair: return "invalid-pair";
    case ErrorCode::Index: return "index";
    case ErrorCode::InvalidEdge: return "invalid-edge";
    case ErrorCode::DuplicateEdge: return "duplicate-edge";
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::NoPath: return "no-path";
    case ErrorCode::SizeLimit: return "size-limit";
    case ErrorCode::InvalidVariance: return "invalid-variance";
    case ErrorCode::NumericInput: return "numeric-input";
    case ErrorCode::NumericConsistency: return "numeric-consistency";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::UnsupportedSize: return "unsupported-size";
    case ErrorCode::InvalidWindow: return "invalid-window";
    case ErrorCode::UnsupportedGraph: return "unsupported-graph";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace qst
