#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsent {

enum class ErrorCode {
  cutoff,           // level or dimension incompatible with the Fock cutoff
  truncation,       // analytic family does not fit the cutoff at the required tail bound
  degenerate_input, // e.g. all-zero superposition coefficients
  undefined_state,  // normalization by a vanishing quantity (photon subtraction of vacuum)
  domain,           // parameter outside its admissible range
  support,          // relative entropy with X not supported on Y
  finite_dimension, // G-concurrence requested for an infinite-rank family
  grid,             // grid does not satisfy a check's precondition
  invalid_state,    // a matrix/vector failed the state invariants
  parse,            // state-spec syntax error
  semantic,         // state-spec parsed but describes an invalid state
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace bsent
