#pragma once

// Text form of an input state, e.g. "fock:6", "coherent:1.0,0.5",
// "sup:0.6|0>+0.8|3>@8", "random:6,3", "thermal:0.5".
//
//   spec   := family ( "@" INT )?
//   family := "fock:" INT | "coherent:" FLOAT ("," FLOAT)? | "thermal:" FLOAT
//           | "random:" INT "," INT | "sup:" term ("+" term)*
//   term   := FLOAT "|" INT ">"
//
// Family names are case-insensitive; no whitespace is accepted.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsent/verifier.hpp"

namespace bsent::cli {

/// Syntax error: byte offset into the source and the tokens that would have been accepted.
class SpecSyntaxError : public Error {
public:
  SpecSyntaxError(std::size_t offset, std::vector<std::string> expected, std::string_view source);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

enum class Family { fock, coherent, thermal, random, superposition };

struct SpecTerm {
  double coefficient;
  int level;
  friend bool operator==(const SpecTerm&, const SpecTerm&) = default;
};

struct StateSpec {
  Family family = Family::fock;
  int level = 0;            // fock
  double re = 0.0;          // coherent
  double im = 0.0;          // coherent
  double nbar = 0.0;        // thermal
  int dim = 0;              // random
  std::uint64_t seed = 0;   // random
  std::vector<SpecTerm> terms; // superposition, in source order
  std::optional<int> cutoff;

  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

/// Throws SpecSyntaxError (code parse) or Error(semantic), never anything else.
StateSpec parse_state_spec(std::string_view text);

/// Canonical text; parse_state_spec(format_state_spec(s)) == s.
std::string format_state_spec(const StateSpec& spec);

/// Builds the labelled state (label = canonical text). Thermal specs are mixed.
LabeledState build_state(const StateSpec& spec);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

} // namespace bsent::cli
