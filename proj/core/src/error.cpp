#include "bsent/error.hpp"

namespace bsent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::cutoff: return "cutoff";
  case ErrorCode::truncation: return "truncation";
  case ErrorCode::degenerate_input: return "degenerate_input";
  case ErrorCode::undefined_state: return "undefined_state";
  case ErrorCode::domain: return "domain";
  case ErrorCode::support: return "support";
  case ErrorCode::finite_dimension: return "finite_dimension";
  case ErrorCode::grid: return "grid";
  case ErrorCode::invalid_state: return "invalid_state";
  case ErrorCode::parse: return "parse";
  case ErrorCode::semantic: return "semantic";
  case ErrorCode::io: return "io";
  }
  return "unknown";
}

} // namespace bsent
