#pragma once

// Experiment orchestration behind the command-line tool: builds systems and
// right-hand sides from an ExperimentConfig and emits CSV or JSON.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhl_lab/amplitudes.hpp"
#include "hhl_lab/circuit.hpp"
#include "hhl_lab/error.hpp"
#include "hhl_lab/error_analysis.hpp"
#include "hhl_lab/filters.hpp"
#include "hhl_lab/io.hpp"
#include "hhl_lab/linalg.hpp"
#include "hhl_lab/parallel.hpp"

namespace hhl_lab {

enum class Command { amplitudes, simulate, error_sweep, verify };
enum class OutputFormat { csv, json };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::amplitudes: return "amplitudes";
    case Command::simulate: return "simulate";
    case Command::error_sweep: return "error-sweep";
    case Command::verify: return "verify";
  }
  return "unknown";
}

struct ExperimentConfig {
  Command command = Command::simulate;
  int n = 1;
  int n_t = 6;
  double gamma = 0.5;
  double kappa = 4.0;
  std::optional<double> kappa_tilde;  // defaults to kappa
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> spectrum;
  std::string b;  // empty: command default
  std::vector<int> sweep{6, 7, 8, 9};
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  bool power_of_two = false;
  double inject_f_scale = 1.0;  // fault injection, hidden flag

  double kappa_tilde_value() const { return kappa_tilde.value_or(kappa); }
  FilterParams filter() const { return FilterParams(kappa_tilde_value(), inject_f_scale); }

  std::string b_value() const {
    if (!b.empty()) return b;
    return command == Command::error_sweep ? "random-well" : "uniform";
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = std::string(to_string(command));
    j["n"] = n;
    j["nt"] = n_t;
    j["gamma"] = gamma;
    j["kappa"] = kappa;
    j["kappa_tilde"] = kappa_tilde_value();
    j["seed"] = seed;
    j["spectrum"] = spectrum ? nlohmann::ordered_json(*spectrum) : nlohmann::ordered_json(nullptr);
    j["b"] = b_value();
    j["sweep"] = sweep;
    j["format"] = format == OutputFormat::csv ? "csv" : "json";
    j["power_of_two"] = power_of_two;
    if (inject_f_scale != 1.0) j["inject_f_scale"] = inject_f_scale;
    return j;
  }
};

namespace detail {

inline nlohmann::ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline void write_csv_preamble(io::CsvWriter& w, const ExperimentConfig& cfg) {
  w.comment("hhl_lab version=" + std::string(io::kArtifactVersion) +
            " schema_version=" + std::to_string(io::kSchemaVersion));
  w.comment("config=" + cfg.to_json().dump());
}

inline nlohmann::ordered_json json_preamble(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema_version"] = io::kSchemaVersion;
  j["version"] = std::string(io::kArtifactVersion);
  j["config"] = cfg.to_json();
  return j;
}

}  // namespace detail

/// Circuit configuration for T = 2^n_t.
inline HHLConfig circuit_config(const ExperimentConfig& e, int n_t) {
  return make_config(e.n, n_t, e.gamma, e.kappa, e.kappa_tilde_value());
}

/// Analytic configuration for the amplitude tables: T = ceil(kappa/gamma + 1)
/// unless power_of_two is set, in which case T = 2^n_t.
inline HHLConfig amplitude_config(const ExperimentConfig& e) {
  if (e.power_of_two) return make_analytic_config(std::int64_t{1} << e.n_t, e.gamma, e.kappa, e.kappa_tilde_value());
  const double needed = e.kappa / e.gamma + 1.0;
  auto t = static_cast<std::int64_t>(std::ceil(needed * (1.0 - Tolerances::condition_slack)));
  return make_analytic_config(std::max<std::int64_t>(t, 2), e.gamma, e.kappa, e.kappa_tilde_value());
}

/// Explicit spectrum with a seeded random eigenbasis, or a random system.
inline HermitianSystem build_system(const ExperimentConfig& e, const HHLConfig& cfg) {
  if (!e.spectrum) return random_system(e.n, e.kappa, cfg.T, e.seed);
  std::vector<double> eigs = *e.spectrum;
  if (eigs.size() != cfg.dim()) {
    throw Error(ErrorKind::ConfigError, "spectrum needs " + std::to_string(cfg.dim()) + " values");
  }
  std::sort(eigs.begin(), eigs.end());
  const auto w = spectrum_window(e.kappa, cfg.T);
  const double slack = 1e-12;
  for (double l : eigs) {
    if (l < w.lo * (1.0 - slack) || l > w.hi * (1.0 + slack)) {
      throw Error(ErrorKind::ConfigError, "eigenvalue " + io::format_double(l) + " outside [" +
                                              io::format_double(w.lo) + ", " + io::format_double(w.hi) + "]");
    }
  }
  Rng rng(e.seed);
  Matrix u = random_unitary(cfg.dim(), rng);
  return HermitianSystem::from_spectrum(std::move(eigs), std::move(u));
}

/// Right-hand side in the eigenbasis: uniform | basis:j | random | random-well
/// | comma-separated real amplitudes.
inline ComplexVector build_beta(const ExperimentConfig& e, const HermitianSystem& sys, std::ostream& log) {
  const std::string choice = e.b_value();
  const std::size_t dim = sys.size();
  if (choice == "uniform") return ComplexVector(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  if (choice.rfind("basis:", 0) == 0) {
    const long long j = io::parse_int(std::string_view(choice).substr(6));
    if (j < 0 || static_cast<std::size_t>(j) >= dim) throw Error(ErrorKind::ConfigError, "basis index out of range");
    ComplexVector v(dim);
    v[static_cast<std::size_t>(j)] = 1.0;
    return v;
  }
  Rng rng(e.seed ^ 0x9e3779b97f4a7c15ULL);
  if (choice == "random") return random_state(dim, rng);
  if (choice == "random-well") {
    ComplexVector v(dim);
    bool any = false;
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex z = rng.complex_gaussian();
      if (sys.eigenvalues()[j] >= 1.0 / e.kappa_tilde_value()) {
        v[j] = z;
        any = true;
      }
    }
    if (!any) throw Error(ErrorKind::IllConditionedInput, "no eigenvalue lies in the well-conditioned range");
    return normalized(std::move(v));
  }
  const auto vals = io::parse_double_list(choice);
  if (vals.size() != dim) throw Error(ErrorKind::ConfigError, "b needs " + std::to_string(dim) + " amplitudes");
  ComplexVector v(vals.begin(), vals.end());
  const double nrm = norm(v);
  if (std::abs(nrm - 1.0) > 1e-9) {
    log << "warning: b has norm " << io::format_double(nrm) << ", renormalizing\n";
    v = normalized(std::move(v));
  }
  return v;
}

// ---------------------------------------------------------------------------
// amplitudes

inline int cmd_amplitudes(const ExperimentConfig& e, std::ostream& out) {
  const HHLConfig cfg = amplitude_config(e);
  const LambdaChoice choices[3] = {LambdaChoice::small, LambdaChoice::moderate, LambdaChoice::large};

  if (e.format == OutputFormat::json) {
    auto j = detail::json_preamble(e);
    j["T"] = cfg.T;
    j["t0"] = cfg.t0;
    j["tables"] = nlohmann::ordered_json::array();
    for (auto c : choices) {
      const auto table = figure_sweep(cfg, c);
      nlohmann::ordered_json t;
      t["choice"] = std::string(to_string(c));
      t["lambda"] = table.eigenvalues.front();
      std::int64_t violations = 0;
      t["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : table.rows) {
        violations += r.alpha_abs > r.bound;
        t["rows"].push_back({{"k", r.k}, {"delta", r.delta}, {"alpha_abs", r.alpha_abs}, {"bound", detail::num(r.bound)}});
      }
      t["violations"] = violations;
      j["tables"].push_back(std::move(t));
    }
    out << j.dump(2) << '\n';
    return 0;
  }

  io::CsvWriter w(out);
  detail::write_csv_preamble(w, e);
  w.comment("T=" + std::to_string(cfg.T) + " t0=" + io::format_double(cfg.t0));
  for (auto c : choices) {
    const auto table = figure_sweep(cfg, c);
    std::int64_t violations = 0;
    for (const auto& r : table.rows) violations += r.alpha_abs > r.bound;
    w.comment("table=" + std::string(to_string(c)) + " lambda=" + io::format_double(table.eigenvalues.front()) +
              " violations=" + std::to_string(violations));
    w.header({"k", "delta", "alpha_abs", "bound"});
    for (const auto& r : table.rows) {
      w.row(r.k, r.delta, r.alpha_abs, std::isfinite(r.bound) ? io::format_double(r.bound) : std::string{});
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulationResult {
  ComplexVector solution;   // computational basis
  ComplexVector classical;  // computational basis, normalized A^{-1} b
  double distance = 0.0;
  double err_ps2 = std::numeric_limits<double>::quiet_NaN();  // joint space, well-conditioned b
  double p1 = 0.0;
  double p2 = 0.0;
  double p_well = 0.0;
  double p_ill = 0.0;
  double clock_zero_weight = 0.0;       // of Phi_f
  double clock_zero_probability = 0.0;  // inside the PS2 state
};

inline SimulationResult simulate(const HermitianSystem& sys, std::span<const Complex> beta, const FilterParams& p,
                                 const HHLConfig& cfg) {
  SimulationResult r;
  const CircuitState phi_f = run_practical(sys, beta, p, cfg);
  r.p_well = phi_f.flag_weight(FlagLevel::well);
  r.p_ill = phi_f.flag_weight(FlagLevel::ill);
  r.clock_zero_weight = phi_f.clock_weight(0);
  const auto ps1 = post_select_well_ill(phi_f);
  const auto ps2 = post_select_well(ps1);
  r.p1 = ps1.probability;
  r.p2 = ps2.probability;
  const auto extracted = extract_solution(ps2.state);
  r.clock_zero_probability = extracted.clock_zero_probability;
  r.solution = sys.to_computational(extracted.coefficients);
  const ComplexVector x_eig = classical_solution(sys, beta);
  r.classical = sys.to_computational(x_eig);
  r.distance = hhl_lab::distance(r.solution, r.classical);
  if (in_well_conditioned_subspace(sys.eigenvalues(), beta, p)) {
    r.err_ps2 = hhl_lab::distance(ps2.state, embed_solution(x_eig, cfg));
  }
  return r;
}

inline int cmd_simulate(const ExperimentConfig& e, std::ostream& out, std::ostream& log) {
  const HHLConfig cfg = circuit_config(e, e.n_t);
  const HermitianSystem sys = build_system(e, cfg);
  const ComplexVector beta = build_beta(e, sys, log);
  const SimulationResult r = simulate(sys, beta, e.filter(), cfg);

  const std::pair<const char*, double> summary[] = {
      {"distance", r.distance},   {"err_ps2", r.err_ps2}, {"p1", r.p1},
      {"p2", r.p2},               {"p_well", r.p_well},   {"p_ill", r.p_ill},
      {"clock_zero_weight", r.clock_zero_weight},         {"clock_zero_probability", r.clock_zero_probability},
      {"t0", cfg.t0}};

  if (e.format == OutputFormat::json) {
    auto j = detail::json_preamble(e);
    j["T"] = cfg.T;
    j["eigenvalues"] = sys.eigenvalues();
    j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.solution.size(); ++i) {
      j["rows"].push_back({{"index", i},
                           {"solution_re", r.solution[i].real()},
                           {"solution_im", r.solution[i].imag()},
                           {"classical_re", r.classical[i].real()},
                           {"classical_im", r.classical[i].imag()}});
    }
    for (const auto& [k, v] : summary) j["summary"][k] = detail::num(v);
    out << j.dump(2) << '\n';
    return 0;
  }

  io::CsvWriter w(out);
  detail::write_csv_preamble(w, e);
  std::string eigs;
  for (double l : sys.eigenvalues()) eigs += (eigs.empty() ? "" : ",") + io::format_double(l);
  w.comment("T=" + std::to_string(cfg.T) + " eigenvalues=" + eigs);
  w.header({"index", "solution_re", "solution_im", "classical_re", "classical_im"});
  for (std::size_t i = 0; i < r.solution.size(); ++i) {
    w.row(i, r.solution[i].real(), r.solution[i].imag(), r.classical[i].real(), r.classical[i].imag());
  }
  for (const auto& [k, v] : summary) w.comment(std::string(k) + "=" + io::format_double(v));
  return 0;
}

// ---------------------------------------------------------------------------
// error-sweep

struct SweepResult {
  std::vector<ErrorReport> reports;
  double slope_err_full = std::numeric_limits<double>::quiet_NaN();
  double slope_err_ps1 = std::numeric_limits<double>::quiet_NaN();
  double slope_err_ps2 = std::numeric_limits<double>::quiet_NaN();
  bool bounds_ok = true;
};

inline double try_slope(const std::vector<ErrorReport>& reports, double ErrorReport::*field) {
  std::vector<double> x, y;
  for (const auto& r : reports) {
    if (!(r.*field > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    x.push_back(r.t0);
    y.push_back(r.*field);
  }
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return fit_loglog_slope(x, y);
}

/// One report per n_t, computed in parallel; order follows e.sweep.
inline SweepResult error_sweep(const ExperimentConfig& e, std::ostream& log) {
  if (e.sweep.empty()) throw Error(ErrorKind::ConfigError, "sweep list is empty");
  SweepResult out;
  out.reports.resize(e.sweep.size());
  std::vector<HHLConfig> cfgs;
  for (int nt : e.sweep) cfgs.push_back(circuit_config(e, nt));
  std::vector<std::string> warnings(e.sweep.size());
  parallel_for(e.sweep.size(), [&](std::size_t i) {
    const HermitianSystem sys = build_system(e, cfgs[i]);
    std::ostringstream local;
    const ComplexVector beta = build_beta(e, sys, local);
    warnings[i] = local.str();
    out.reports[i] = analyze(sys, beta, e.filter(), cfgs[i]);
  });
  for (const auto& w : warnings) log << w;
  out.slope_err_full = try_slope(out.reports, &ErrorReport::err_full);
  out.slope_err_ps1 = try_slope(out.reports, &ErrorReport::err_ps1);
  out.slope_err_ps2 = try_slope(out.reports, &ErrorReport::err_ps2);
  for (const auto& r : out.reports) out.bounds_ok = out.bounds_ok && r.bound_ok();
  return out;
}

inline int cmd_error_sweep(const ExperimentConfig& e, std::ostream& out, std::ostream& log) {
  const SweepResult s = error_sweep(e, log);
  const std::vector<std::string> cols = {"n_t", "T",  "t0",    "err_full", "err_ps1", "err_ps2", "p",
                                         "p_bar", "p1", "p2", "term1",    "term2",   "bound_full"};
  if (e.format == OutputFormat::json) {
    auto j = detail::json_preamble(e);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : s.reports) {
      j["rows"].push_back({{"n_t", r.n_t},
                           {"T", r.T},
                           {"t0", r.t0},
                           {"err_full", detail::num(r.err_full)},
                           {"err_ps1", detail::num(r.err_ps1)},
                           {"err_ps2", detail::num(r.err_ps2)},
                           {"p", detail::num(r.p)},
                           {"p_bar", detail::num(r.p_bar)},
                           {"p1", detail::num(r.p1)},
                           {"p2", detail::num(r.p2)},
                           {"term1", detail::num(r.terms.term1)},
                           {"term2", detail::num(r.terms.term2)},
                           {"bound_full", detail::num(r.bound_full)}});
    }
    j["footer"] = {{"slope_err_full", detail::num(s.slope_err_full)},
                   {"slope_err_ps1", detail::num(s.slope_err_ps1)},
                   {"slope_err_ps2", detail::num(s.slope_err_ps2)},
                   {"bounds_ok", s.bounds_ok}};
    out << j.dump(2) << '\n';
  } else {
    io::CsvWriter w(out);
    detail::write_csv_preamble(w, e);
    w.header(cols);
    for (const auto& r : s.reports) {
      w.row(r.n_t, r.T, r.t0, r.err_full, r.err_ps1, r.err_ps2, r.p, r.p_bar, r.p1, r.p2, r.terms.term1,
            r.terms.term2, r.bound_full);
    }
    w.comment("slope_err_full=" + io::format_double(s.slope_err_full));
    w.comment("slope_err_ps1=" + io::format_double(s.slope_err_ps1));
    w.comment("slope_err_ps2=" + io::format_double(s.slope_err_ps2));
    w.comment(std::string("bounds_ok=") + (s.bounds_ok ? "true" : "false"));
  }
  return s.bounds_ok ? 0 : 3;
}

// ---------------------------------------------------------------------------
// verify

enum class CheckStatus { pass, fail, finding };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::finding: return "FINDING";
  }
  return "?";
}

/// Analytic verification suite. Findings are reported but do not gate.
inline std::vector<CheckResult> run_verification(const ExperimentConfig& e) {
  std::vector<CheckResult> out;
  const FilterParams p = e.filter();
  const HHLConfig cfg = circuit_config(e, e.n_t);
  auto gate = [](bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; };

  {
    CheckResult c{"filter_normalization"};
    double worst = 0.0, at = 0.0;
    constexpr int grid = 100001;
    for (int i = 0; i < grid; ++i) {
      const double l = static_cast<double>(i) / (grid - 1);
      const double s = filter_f(l, p) * filter_f(l, p) + filter_g(l, p) * filter_g(l, p);
      if (s > worst) {
        worst = s;
        at = l;
      }
    }
    c.status = gate(worst <= 0.25 * (1.0 + Tolerances::arithmetic));
    c.detail = {{"max_f2_plus_g2", worst}, {"at_lambda", at}, {"limit", 0.25}};
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"lipschitz"};
    const auto rep = verify_lipschitz(p, 100000, e.seed);
    c.status = gate(rep.ok);
    c.detail = {{"max_ratio", rep.max_ratio}, {"bound", rep.bound}, {"worst_lambda1", rep.worst_lambda1},
                {"worst_lambda2", rep.worst_lambda2}, {"pairs", rep.pairs}};
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"alpha_tail_bound"};
    const auto rep = verify_alpha_tail_bound(cfg, 4000);
    c.status = gate(rep.ok);
    c.detail = {{"T", cfg.T}, {"points", rep.points}, {"violations", rep.violations.size()},
                {"worst_margin", rep.worst_margin}};
    if (!rep.violations.empty()) {
      const auto& v = rep.violations.front();
      c.detail["first_violation"] = {{"delta", v.delta}, {"alpha_abs", v.alpha_abs}, {"bound", v.bound}};
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult exact{"polynomial_inequality_exact"};
    CheckResult printed{"polynomial_inequality_sqrt2_over_T"};
    bool exact_ok = true;
    std::int64_t printed_bad = 0;
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (std::int64_t t = 4; t <= 1024; t *= 2) {
      const auto ex = verify_polynomial_inequality(t, 10000, PolynomialForm::exact);
      exact_ok = exact_ok && ex.ok;
      const auto pr = verify_polynomial_inequality(t, 10000, PolynomialForm::as_printed);
      if (!pr.ok) {
        ++printed_bad;
        records.push_back({{"T", t}, {"lhs", pr.lhs}, {"violations", pr.violations},
                           {"first_a", pr.first_violation_a}, {"last_a", pr.last_violation_a},
                           {"worst_a", pr.worst_a}, {"worst_slack", pr.worst_slack}});
      }
    }
    exact.status = gate(exact_ok);
    exact.detail = {{"T_range", "4..1024"}, {"grid", 10000}};
    printed.status = printed_bad ? CheckStatus::finding : CheckStatus::pass;
    printed.detail = {{"T_with_counterexamples", printed_bad}, {"counterexamples", records}};
    out.push_back(std::move(exact));
    out.push_back(std::move(printed));
  }
  {
    std::vector<double> lambdas = window_grid(cfg, 4001);
    const auto scan = scan_tail_sums(lambdas, cfg);
    CheckResult two{"tail_sum_two_sided"};
    two.status = gate(scan.max_two_sided <= kTailSumTwoSidedBound);
    two.detail = {{"max", scan.max_two_sided}, {"argmax_lambda", scan.argmax_two_sided}, {"limit", kTailSumTwoSidedBound}};
    CheckResult one{"tail_sum_one_sided"};
    one.status = gate(scan.max_above <= kTailSumOneSidedBound);
    one.detail = {{"max", scan.max_above}, {"argmax_lambda", scan.argmax_above}, {"limit", kTailSumOneSidedBound}};
    CheckResult lit{"tail_sum_two_sided_vs_1_24"};
    lit.status = scan.max_two_sided <= kTailSumOneSidedBound ? CheckStatus::pass : CheckStatus::finding;
    lit.detail = {{"max", scan.max_two_sided}, {"argmax_lambda", scan.argmax_two_sided}, {"limit", kTailSumOneSidedBound}};
    out.push_back(std::move(two));
    out.push_back(std::move(one));
    out.push_back(std::move(lit));
  }
  {
    CheckResult c{"inner_product_routes"};
    try {
      const HermitianSystem sys = build_system(e, cfg);
      double disc = 0.0, imag = 0.0;
      ExperimentConfig variant = e;
      for (const char* b : {"uniform", "random", "random-well"}) {
        variant.b = b;
        std::ostringstream sink;
        const auto r = analyze(sys, build_beta(variant, sys, sink), p, cfg);
        disc = std::max(disc, r.max_route_discrepancy);
        imag = std::max(imag, r.max_imag);
      }
      c.status = gate(imag <= 1e-10);
      c.detail = {{"max_discrepancy", disc}, {"max_imag", imag}};
    } catch (const Error& err) {
      c.status = CheckStatus::fail;
      c.detail = {{"error", err.what()}};
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline int cmd_verify(const ExperimentConfig& e, std::ostream& out, std::ostream& log) {
  const auto checks = run_verification(e);
  bool ok = true;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) {
      ok = false;
      failures.push_back({{"name", c.name}, {"detail", c.detail}});
    }
  }
  if (e.format == OutputFormat::json) {
    auto j = detail::json_preamble(e);
    j["ok"] = ok;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});
    }
    out << j.dump(2) << '\n';
  } else {
    for (const auto& c : checks) out << '[' << to_string(c.status) << "] " << c.name << ' ' << c.detail.dump() << '\n';
    if (!ok) log << "failures: " << failures.dump() << '\n';
  }
  return ok ? 0 : 3;
}

inline int run_command(const ExperimentConfig& e, std::ostream& out, std::ostream& log) {
  switch (e.command) {
    case Command::amplitudes: return cmd_amplitudes(e, out);
    case Command::simulate: return cmd_simulate(e, out, log);
    case Command::error_sweep: return cmd_error_sweep(e, out, log);
    case Command::verify: return cmd_verify(e, out, log);
  }
  return 2;
}

/// Process exit code for a library error.
inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroProbability: return 4;
    case ErrorKind::FormulaMismatch:
    case ErrorKind::BoundViolation:
    case ErrorKind::NoConvergence: return 3;
    default: return 2;
  }
}

}  // namespace hhl_lab
