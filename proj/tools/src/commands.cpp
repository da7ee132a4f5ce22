#include "bsent/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsent/version.hpp"

namespace bsent::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

double parse_number(std::string_view text, const char* what) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw Error(ErrorCode::semantic, std::string(what) + ": '" + std::string(text) + "' is not a number");
  return v;
}

int parse_int(std::string_view text, const char* what) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw Error(ErrorCode::semantic, std::string(what) + ": '" + std::string(text) + "' is not an integer");
  return v;
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  f << content;
  f.close();
  if (!f) throw Error(ErrorCode::io, "failed writing '" + path.string() + "'");
}

std::string expectation_name(Expectation e) {
  switch (e) {
  case Expectation::pass: return "pass";
  case Expectation::fail: return "fail";
  case Expectation::informational: return "informational";
  }
  return "pass";
}

Json grid_json(const GridSpec& g) {
  return Json{{"t_min", g.t_min}, {"t_max", g.t_max}, {"points", g.points}};
}

Json alpha_json(const MonotoneKind& kind) {
  return kind.tag == MonotoneKind::Tag::renyi ? Json(kind.alpha) : Json(nullptr);
}

std::vector<LabeledState> build_states(const std::vector<std::string>& specs) {
  std::vector<LabeledState> out;
  for (const auto& s : specs) out.push_back(build_state(parse_state_spec(s)));
  return out;
}

int exit_for(const Error& e) {
  switch (e.code()) {
  case ErrorCode::parse:
  case ErrorCode::semantic: return kExitUsage;
  case ErrorCode::io: return kExitIo;
  default: return kExitNumeric;
  }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

const std::vector<TheoremReport>& unmet_note(const std::vector<TheoremReport>& reports, std::ostream& err) {
  for (const auto& r : reports)
    if (!r.meets_expectation())
      err << "unmet: " << r.check << " [" << r.state << ", " << r.kind << "] passed=" << (r.passed ? "true" : "false")
          << " expected=" << expectation_name(r.expected) << " margin=" << g17(r.worst_margin) << "\n";
  return reports;
}

} // namespace

std::vector<MonotoneKind> parse_kind_list(std::string_view text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const auto dots = t.find("..");
  if (colon != std::string::npos && dots != std::string::npos && dots > colon) {
    const MonotoneKind family = MonotoneKind::parse(t.substr(0, colon) + ":1");
    if (family.tag != MonotoneKind::Tag::renyi)
      throw Error(ErrorCode::semantic, "kind: order ranges apply to renyi only");
    const int a = parse_int(std::string_view(t).substr(colon + 1, dots - colon - 1), "kind range start");
    const int b = parse_int(std::string_view(t).substr(dots + 2), "kind range end");
    if (a < 1 || b < a || b - a > 1000) throw Error(ErrorCode::semantic, "kind: range needs 1 <= a <= b");
    std::vector<MonotoneKind> out;
    for (int k = a; k <= b; ++k) out.push_back(MonotoneKind::renyi(k));
    return out;
  }
  try {
    return {MonotoneKind::parse(t)};
  } catch (const Error& e) {
    throw Error(ErrorCode::semantic, e.what());
  }
}

GridSpec parse_grid(std::string_view text) {
  const std::string t(text);
  const auto c1 = t.find(',');
  const auto c2 = c1 == std::string::npos ? std::string::npos : t.find(',', c1 + 1);
  if (c2 == std::string::npos || t.find(',', c2 + 1) != std::string::npos)
    throw Error(ErrorCode::semantic, "grid: expected t_min,t_max,points");
  GridSpec g{parse_number(t.substr(0, c1), "grid t_min"), parse_number(t.substr(c1 + 1, c2 - c1 - 1), "grid t_max"),
             parse_int(t.substr(c2 + 1), "grid points")};
  try {
    make_grid(g);
  } catch (const Error& e) {
    throw Error(ErrorCode::semantic, e.what());
  }
  return g;
}

void apply_tolerance(Tolerances& tol, std::string_view assignment) {
  const std::string a(assignment);
  const auto eq = a.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::semantic, "tol: expected name=value");
  const std::string name = trim(a.substr(0, eq));
  const double value = parse_number(a.substr(eq + 1), "tol value");
  if (!(value > 0.0)) throw Error(ErrorCode::semantic, "tol: '" + name + "' must be positive");
  struct Field {
    const char* name;
    double Tolerances::*member;
  };
  static const Field fields[] = {
      {"symmetry", &Tolerances::symmetry},         {"concavity", &Tolerances::concavity},
      {"convexity", &Tolerances::convexity},       {"peak", &Tolerances::peak},
      {"monotonicity", &Tolerances::monotonicity}, {"log_concavity", &Tolerances::log_concavity},
      {"derivative", &Tolerances::derivative},     {"lemma3", &Tolerances::lemma3},
      {"residual", &Tolerances::residual},         {"determinant", &Tolerances::determinant},
      {"data_processing", &Tolerances::data_processing},
      {"separability", &Tolerances::separability}, {"qcs", &Tolerances::qcs},
      {"polynomial", &Tolerances::polynomial},     {"reconstruction", &Tolerances::reconstruction},
  };
  for (const auto& f : fields)
    if (name == f.name) {
      tol.*(f.member) = value;
      return;
    }
  throw Error(ErrorCode::semantic, "tol: unknown tolerance '" + name + "'");
}

std::string sweep_csv(const SweepCurve& c) {
  std::string out = "T,value,kind,state,alpha\n";
  const std::string kind = csv_field(c.kind.name());
  const std::string state = csv_field(c.state_label);
  const std::string alpha = c.kind.tag == MonotoneKind::Tag::renyi ? g17(c.kind.alpha) : "";
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    out += g17(c.grid[i]) + "," + g17(c.values[i]) + "," + kind + "," + state + "," + alpha + "\n";
  return out;
}

std::string sweep_json(const SweepCurve& c) {
  Json j{{"state", c.state_label},
         {"kind", c.kind.name()},
         {"alpha", alpha_json(c.kind)},
         {"grid_spec", grid_json(c.spec)},
         {"T", c.grid},
         {"value", c.values},
         {"log_base", "e"},
         {"version", kVersion}};
  return j.dump(2) + "\n";
}

std::string reports_json(const std::vector<TheoremReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports)
    arr.push_back(Json{{"check", r.check},
                       {"state", r.state},
                       {"kind", r.kind},
                       {"passed", r.passed},
                       {"expected", expectation_name(r.expected)},
                       {"worst_margin", r.worst_margin},
                       {"tolerance", r.tolerance},
                       {"locus", r.locus},
                       {"grid", grid_json(r.grid)},
                       {"log_base", "e"},
                       {"version", kVersion}});
  return arr.dump(2) + "\n";
}

std::string reports_csv(const std::vector<TheoremReport>& reports) {
  std::string out = "check,state,kind,passed,expected,worst_margin,tolerance,locus,t_min,t_max,points\n";
  for (const auto& r : reports) {
    std::string locus;
    for (std::size_t i = 0; i < r.locus.size(); ++i) locus += (i ? ";" : "") + g17(r.locus[i]);
    out += csv_field(r.check) + "," + csv_field(r.state) + "," + csv_field(r.kind) + "," +
           (r.passed ? "true" : "false") + "," + expectation_name(r.expected) + "," + g17(r.worst_margin) + "," +
           g17(r.tolerance) + "," + locus + "," + g17(r.grid.t_min) + "," + g17(r.grid.t_max) + "," +
           std::to_string(r.grid.points) + "\n";
  }
  return out;
}

std::string poly_csv(const OverlapPolynomial& poly) {
  std::string out = "m,p_m\n";
  for (int m = 0; m <= poly.m_max(); ++m) {
    const double p = poly.coefficient(m);
    out += std::to_string(m) + "," + (std::abs(p) < 1e-14 ? std::string("0") : g17(p)) + "\n";
  }
  return out;
}

std::string sweep_file_name(const std::string& state_label, const MonotoneKind& kind, OutputFormat format) {
  auto slug = [](const std::string& s) {
    std::string o;
    for (char c : s) o += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
    return o;
  };
  return slug(state_label) + "__" + slug(kind.label()) + (format == OutputFormat::csv ? ".csv" : ".json");
}

std::vector<std::string> default_checks(const LabeledState& state, const MonotoneKind& kind) {
  using Tag = MonotoneKind::Tag;
  if (!state.is_pure()) {
    if (kind.tag == Tag::von_neumann) return {"mixed_input_concavity"};
    if (kind.tag == Tag::purity) return {"convexity"};
    if (kind.tag == Tag::mixedness) return {"concavity"};
    if (kind.tag == Tag::qcs_witness) return {"qcs_bound"};
    return {};
  }
  switch (kind.tag) {
  case Tag::von_neumann:
  case Tag::mixedness:
  case Tag::renyi: return {"symmetry", "concavity", "peak_at_half"};
  case Tag::purity: return {"symmetry", "convexity"};
  case Tag::g_concurrence: return {"symmetry", "gconc_monotonicity", "peak_at_half"};
  case Tag::qcs_witness:
    return state.pure().finite_support() ? std::vector<std::string>{"qcs_bound"}
                                         : std::vector<std::string>{"qcs_bound", "qcs_classical"};
  }
  return {};
}

TheoremReport run_named_check(const std::string& check, const LabeledState& state, const MonotoneKind& kind,
                              const RunConfig& config) {
  const Tolerances& tol = config.tolerances;
  if (check == "derivative_identity") {
    if (!state.is_pure()) throw Error(ErrorCode::semantic, "derivative_identity needs a pure state");
    return check_derivative_identity_sweep(state.label, state.pure(),
                                           config.grid_given ? config.grid : kDerivativeGrid, tol.derivative);
  }
  if (check == "mixed_input_concavity") return check_mixed_input_concavity(state, config.grid, tol.concavity);
  const SweepCurve curve = sweep(state, kind, config.grid);
  if (check == "symmetry") return check_symmetry(curve, tol.symmetry);
  if (check == "concavity") return check_concavity(curve, tol.concavity);
  if (check == "convexity") return check_convexity(curve, tol.convexity);
  if (check == "peak_at_half" || check == "peak") return check_peak_at_half(curve, tol.peak);
  if (check == "gconc_monotonicity" || check == "monotonicity")
    return check_gconc_monotonicity(curve, tol.monotonicity, tol.log_concavity);
  if (check == "qcs_bound") return check_qcs_bound(curve, tol.qcs);
  if (check == "qcs_classical") return check_qcs_classical(curve, tol.qcs);
  throw Error(ErrorCode::semantic, "unknown check '" + check + "'");
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.states.empty()) throw Error(ErrorCode::semantic, "sweep: no state given");
    const std::vector<LabeledState> states = build_states(config.states);
    const std::vector<MonotoneKind> kinds =
        config.kinds.empty() ? std::vector<MonotoneKind>{MonotoneKind::von_neumann()} : config.kinds;
    const fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
    for (const auto& s : states)
      for (const auto& k : kinds) {
        const SweepCurve curve = sweep(s, k, config.grid);
        const fs::path path = dir / sweep_file_name(s.label, k, config.format);
        write_file(path, config.format == OutputFormat::csv ? sweep_csv(curve) : sweep_json(curve));
        out << path.string() << "\n";
      }
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<TheoremReport> reports;
    const std::vector<LabeledState> states = build_states(config.states);
    const std::vector<MonotoneKind> kinds =
        config.kinds.empty() ? std::vector<MonotoneKind>{MonotoneKind::von_neumann()} : config.kinds;
    for (const auto& s : states)
      for (const auto& k : kinds)
        for (const auto& check : config.checks.empty() ? default_checks(s, k) : config.checks) {
          TheoremReport r = run_named_check(check, s, k, config);
          r.expected = config.expect;
          reports.push_back(std::move(r));
        }
    if (config.suite || states.empty()) {
      SuiteOptions options;
      options.kind = config.suite.value_or(SuiteKind::full);
      options.grid = config.grid;
      options.tolerances = config.tolerances;
      options.inject_corruption = config.inject_corruption;
      options.seed = config.seed;
      for (auto& r : run_suite(options)) reports.push_back(std::move(r));
    }
    const std::string body =
        config.format == OutputFormat::json ? reports_json(reports) : reports_csv(reports);
    if (config.out.empty()) out << body;
    else write_file(config.out, body);
    unmet_note(reports, err);
    std::size_t unmet = 0;
    for (const auto& r : reports) unmet += r.meets_expectation() ? 0 : 1;
    err << reports.size() << " checks, " << unmet << " unmet\n";
    return static_cast<int>(unmet == 0 ? kExitOk : kExitChecksFailed);
  });
}

int cmd_fig1(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CounterexampleResult result = run_counterexample(config.tolerances);
    const fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
    Json curves = Json::array();
    for (std::size_t i = 0; i < result.curves.size(); ++i) {
      const SweepCurve& c = result.curves[i];
      const RenyiSummary& s = result.summaries[i];
      const std::string file = "fig1_renyi_" + std::to_string(static_cast<int>(s.alpha)) + ".csv";
      write_file(dir / file, sweep_csv(c));
      out << (dir / file).string() << "\n";
      curves.push_back(Json{{"alpha", s.alpha},
                            {"argmax_t", s.argmax_t},
                            {"max_value", s.max_value},
                            {"concave", s.concave},
                            {"peak_at_half", s.peak_at_half},
                            {"max_second_difference", s.max_second_difference},
                            {"max_second_difference_t", s.max_second_difference_t},
                            {"file", file}});
    }
    Json checks = Json::parse(reports_json(result.reports));
    const Json summary{{"state", "fock:6"},
                       {"kind", "renyi"},
                       {"grid", grid_json(kCounterexampleGrid)},
                       {"curves", curves},
                       {"checks", checks},
                       {"log_base", "e"},
                       {"version", kVersion}};
    write_file(dir / "fig1_summary.json", summary.dump(2) + "\n");
    out << (dir / "fig1_summary.json").string() << "\n";
    unmet_note(result.reports, err);
    return static_cast<int>(suite_passed(result.reports) ? kExitOk : kExitChecksFailed);
  });
}

int cmd_poly(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.states.empty() || config.states.size() > 2)
      throw Error(ErrorCode::semantic, "poly: expects one or two states");
    const std::vector<LabeledState> states = build_states(config.states);
    auto as_density = [](const LabeledState& s) { return s.is_pure() ? s.pure().projector() : s.mixed(); };
    const DensityMatrix a = as_density(states.front());
    const DensityMatrix b = as_density(states.back());
    const OverlapPolynomial poly = overlap_coefficients(a, b);

    double residual = 0.0;
    double residual_t = config.grid.t_min;
    for (double t : make_grid(config.grid)) {
      const double r = std::abs(overlap_reconstruct(poly, Transmission(t)) - overlap_direct(a, b, Transmission(t)));
      if (r > residual) {
        residual = r;
        residual_t = t;
      }
    }
    double low = poly.coefficient(0);
    for (double p : poly.coefficients()) low = std::min(low, p);

    const fs::path csv_path = config.out.empty() ? fs::path("poly.csv") : fs::path(config.out);
    fs::path json_path = csv_path;
    json_path.replace_extension(".json");
    if (json_path == csv_path) json_path += ".json";
    write_file(csv_path, poly_csv(poly));
    Json states_j = Json::array();
    for (const auto& s : states) states_j.push_back(s.label);
    const Json companion{{"states", states_j},
                         {"cutoff", a.cutoff()},
                         {"m_max", poly.m_max()},
                         {"coefficients", poly.coefficients()},
                         {"min_coefficient", low},
                         {"reconstruction_residual", residual},
                         {"residual_t", residual_t},
                         {"grid", grid_json(config.grid)},
                         {"log_base", "e"},
                         {"version", kVersion}};
    write_file(json_path, companion.dump(2) + "\n");
    out << csv_path.string() << "\n" << json_path.string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beam-splitter entanglement sweeps and shape certification", "bsent"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> kind_texts;
  std::vector<std::string> tol_texts;
  std::string grid_text;
  std::string sweep_format = "csv";
  std::string verify_format = "json";
  std::string suite_text;
  std::string expect_text = "pass";

  auto common = [&](CLI::App* sub, bool with_states) {
    if (with_states) sub->add_option("states", config.states, "State specs, e.g. fock:6 or sup:0.6|0>+0.8|3>@8");
    sub->add_option("--grid", grid_text, "t_min,t_max,points (default 0.01,0.99,101)");
    sub->add_option("--tol", tol_texts, "Tolerance override name=value (repeatable)")->expected(1)->take_all();
    sub->add_option("--out", config.out, "Output path");
  };

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Write one curve file per (state, kind)");
  common(sweep_cmd, true);
  sweep_cmd->add_option("--kind", kind_texts, "Monotone, e.g. von_neumann, renyi:2, renyi:1..12 (repeatable)")
      ->expected(1)
      ->take_all();
  sweep_cmd->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run shape checks and write a JSON report");
  common(verify_cmd, true);
  verify_cmd->add_option("--kind", kind_texts, "Monotone for user states (repeatable)")->expected(1)->take_all();
  verify_cmd->add_option("--check", config.checks, "Check name for user states (repeatable)")->expected(1)->take_all();
  verify_cmd->add_option("--suite", suite_text, "full or quick")->check(CLI::IsMember({"full", "quick"}));
  verify_cmd->add_option("--expect", expect_text, "Expected verdict of user-state checks: pass or fail")
      ->check(CLI::IsMember({"pass", "fail"}));
  verify_cmd->add_flag("--inject-corruption", config.inject_corruption,
                       "Corrupt an expected-pass suite curve (the run must then fail)");
  verify_cmd->add_option("--format", verify_format, "json or csv")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* fig1_cmd = app.add_subcommand("fig1", "Renyi orders 1..12 of |6> with a summary JSON");
  fig1_cmd->add_option("--out", config.out, "Output directory");
  fig1_cmd->add_option("--tol", tol_texts, "Tolerance override name=value")->expected(1)->take_all();

  CLI::App* poly_cmd = app.add_subcommand("poly", "Overlap polynomial coefficients in 1-2T");
  common(poly_cmd, true);

  for (CLI::App* sub : {sweep_cmd, verify_cmd, fig1_cmd, poly_cmd})
    sub->add_option("--seed", config.seed, "Seed for randomized checks")->default_val(config.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(kExitOk) : static_cast<int>(kExitUsage);
  }

  const int prep = guarded(err, [&] {
    for (const auto& k : kind_texts)
      for (const auto& kind : parse_kind_list(k)) config.kinds.push_back(kind);
    for (const auto& t : tol_texts) apply_tolerance(config.tolerances, t);
    if (!grid_text.empty()) {
      config.grid = parse_grid(grid_text);
      config.grid_given = true;
    }
    const std::string& format_text = verify_cmd->parsed() ? verify_format : sweep_format;
    config.format = format_text == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!suite_text.empty()) config.suite = suite_text == "quick" ? SuiteKind::quick : SuiteKind::full;
    config.expect = expect_text == "fail" ? Expectation::fail : Expectation::pass;
    return static_cast<int>(kExitOk);
  });
  if (prep != kExitOk) return prep;

  if (sweep_cmd->parsed()) {
    config.command = Command::sweep;
    return cmd_sweep(config, out, err);
  }
  if (verify_cmd->parsed()) {
    config.command = Command::verify;
    return cmd_verify(config, out, err);
  }
  if (fig1_cmd->parsed()) {
    config.command = Command::fig1;
    return cmd_fig1(config, out, err);
  }
  config.command = Command::poly;
  return cmd_poly(config, out, err);
}

} // namespace bsent::cli
