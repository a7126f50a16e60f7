// hhl_lab: amplitude tables, circuit simulation, error sweeps and the
// analytic verification suite.

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhl_lab/experiment.hpp"

namespace {

using hhl_lab::Error;
using hhl_lab::ErrorKind;
using hhl_lab::ExperimentConfig;

struct RawOptions {
  std::string config_path;
  std::string spectrum;
  std::string sweep;
  std::string format = "csv";
  double kappa_tilde = 0.0;
};

// Values from the JSON config file fill options not given on the command line.
void apply_config_file(const std::string& path, CLI::App& app, ExperimentConfig& e, RawOptions& raw) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ConfigError, std::string("config file: ") + ex.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config file must hold a JSON object");

  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  auto join = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
    return s;
  };
  try {
    static const std::set<std::string> known = {"n", "nt", "gamma", "kappa", "kappa_tilde", "seed",  "spectrum",
                                                "b", "sweep", "out",   "format", "power_of_two"};
    for (const auto& [key, v] : j.items()) {
      if (!known.contains(key)) throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
      if (key == "n" && unset("--n")) e.n = v.get<int>();
      else if (key == "nt" && unset("--nt")) e.n_t = v.get<int>();
      else if (key == "gamma" && unset("--gamma")) e.gamma = v.get<double>();
      else if (key == "kappa" && unset("--kappa")) e.kappa = v.get<double>();
      else if (key == "kappa_tilde" && unset("--kappa-tilde")) e.kappa_tilde = v.get<double>();
      else if (key == "seed" && unset("--seed")) e.seed = v.get<std::uint64_t>();
      else if (key == "spectrum" && unset("--spectrum")) raw.spectrum = join(v);
      else if (key == "b" && unset("--b")) e.b = join(v);
      else if (key == "sweep" && unset("--sweep")) raw.sweep = join(v);
      else if (key == "out" && unset("--out")) e.output_path = v.get<std::string>();
      else if (key == "format" && unset("--format")) raw.format = v.get<std::string>();
      else if (key == "power_of_two" && unset("--power-of-two")) e.power_of_two = v.get<bool>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ConfigError, std::string("config file: ") + ex.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HHL linear-solver lab: QPE amplitudes, circuit simulation and error bounds"};
  app.require_subcommand(1);

  ExperimentConfig e;
  RawOptions raw;

  app.add_option("--config", raw.config_path, "JSON config file; command-line flags take precedence");
  app.add_option("--n", e.n, "Input-register qubits, N = 2^n")->check(CLI::Range(1, 5));
  app.add_option("--nt", e.n_t, "Clock qubits, T = 2^nt")->check(CLI::Range(1, 20));
  app.add_option("--gamma", e.gamma, "t0 = gamma * 2 pi T");
  app.add_option("--kappa", e.kappa, "Condition number");
  app.add_option("--kappa-tilde", raw.kappa_tilde, "Filter condition number (default: kappa)");
  app.add_option("--seed", e.seed, "Seed for the random system and b");
  app.add_option("--spectrum", raw.spectrum, "Explicit eigenvalues l1,l2,...");
  app.add_option("--b", e.b, "uniform | basis:j | random | random-well | c1,c2,... (eigenbasis amplitudes)");
  app.add_option("--sweep", raw.sweep, "Clock sizes nt1,nt2,... for error-sweep");
  app.add_option("--out", e.output_path, "Output file (default: stdout)");
  app.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--power-of-two", e.power_of_two, "Amplitude tables with T = 2^nt instead of kappa/gamma + 1");
  app.add_option("--inject-f-scale", e.inject_f_scale)->group("");

  const std::pair<const char*, hhl_lab::Command> commands[] = {
      {"amplitudes", hhl_lab::Command::amplitudes},
      {"simulate", hhl_lab::Command::simulate},
      {"error-sweep", hhl_lab::Command::error_sweep},
      {"verify", hhl_lab::Command::verify},
  };
  const char* help[] = {"QPE amplitude tables for small, moderate and large eigenvalues",
                        "Run the practical circuit and extract the solution",
                        "Error quantities across clock sizes", "Analytic verification suite"};
  for (std::size_t i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->fallthrough();
    sub->callback([&e, c = commands[i].second] { e.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!raw.config_path.empty()) apply_config_file(raw.config_path, app, e, raw);
    if (app.get_option("--kappa-tilde")->count() > 0) e.kappa_tilde = raw.kappa_tilde;
    if (!raw.spectrum.empty()) e.spectrum = hhl_lab::io::parse_double_list(raw.spectrum);
    if (!raw.sweep.empty()) e.sweep = hhl_lab::io::parse_int_list(raw.sweep);
    if (raw.format == "json") {
      e.format = hhl_lab::OutputFormat::json;
    } else if (raw.format == "csv") {
      e.format = hhl_lab::OutputFormat::csv;
    } else {
      throw Error(ErrorKind::ConfigError, "format must be csv or json");
    }

    if (e.output_path.empty() || e.output_path == "-") return hhl_lab::run_command(e, std::cout, std::cerr);
    std::ofstream out(e.output_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + e.output_path);
    const int rc = hhl_lab::run_command(e, out, std::cerr);
    out.close();
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + e.output_path);
    return rc;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return hhl_lab::exit_code_for(err.kind());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
}
