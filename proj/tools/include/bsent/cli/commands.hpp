#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsent/cli/state_spec.hpp"

namespace bsent::cli {

enum class Command { sweep, verify, fig1, poly };
enum class OutputFormat { csv, json };

/// Process exit statuses.
enum ExitStatus : int {
  kExitOk = 0,
  kExitChecksFailed = 1,
  kExitUsage = 2,   // bad flags, parse or semantic errors in state specs
  kExitNumeric = 3, // domain/support/truncation errors from the numerics
  kExitIo = 4,
};

struct RunConfig {
  Command command = Command::sweep;
  std::vector<std::string> states;
  std::vector<MonotoneKind> kinds;
  GridSpec grid = kDefaultGrid;
  bool grid_given = false;
  Tolerances tolerances;
  std::string out;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 20260101;
  std::optional<SuiteKind> suite;
  std::vector<std::string> checks;
  Expectation expect = Expectation::pass;
  bool inject_corruption = false;
};

/// "von_neumann", "renyi:2.5", "renyi:1..12" (integer orders a..b).
std::vector<MonotoneKind> parse_kind_list(std::string_view text);
/// "t_min,t_max,points".
GridSpec parse_grid(std::string_view text);
/// "name=value" where name is a Tolerances field; value must be positive.
void apply_tolerance(Tolerances& tol, std::string_view assignment);

/// One row per grid point: T,value,kind,state,alpha (17 significant digits, LF).
std::string sweep_csv(const SweepCurve& curve);
std::string sweep_json(const SweepCurve& curve);
/// Array of report records.
std::string reports_json(const std::vector<TheoremReport>& reports);
std::string reports_csv(const std::vector<TheoremReport>& reports);
/// m,p_m with entries below 1e-14 in magnitude written as 0.
std::string poly_csv(const OverlapPolynomial& poly);

/// File name used for a (state, kind) sweep.
std::string sweep_file_name(const std::string& state_label, const MonotoneKind& kind, OutputFormat format);

/// The checks run by `verify` for a user state when no --check is given.
std::vector<std::string> default_checks(const LabeledState& state, const MonotoneKind& kind);
/// Runs a named check on a user state. Throws Error(semantic) for unknown names.
TheoremReport run_named_check(const std::string& check, const LabeledState& state, const MonotoneKind& kind,
                              const RunConfig& config);

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fig1(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_poly(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bsent::cli
