#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "elasto/harness.hpp"

namespace {

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(elasto::parse_number(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral 2D incompressible elastodynamics harness"};
  app.require_subcommand(1);
  app.footer(
      "Exit status: 0 ok, 1 asserted check failed, 2 breakdown, 3 usage or I/O error, "
      "4 stopped by boundary contamination");

  std::string config_path;
  std::vector<std::string> overrides;
  auto* sim = app.add_subcommand("simulate", "Run one simulation and write series, summary, snapshots and plots");
  sim->add_option("--config", config_path, "key = value configuration file")->required();
  sim->add_option("--set", overrides, "override key=value (repeatable)");

  std::string eps_text;
  auto* sweep = app.add_subcommand("sweep", "Run the configuration for several amplitudes");
  sweep->add_option("--config", config_path, "configuration file")->required();
  sweep->add_option("--eps", eps_text, "comma-separated descending amplitudes")->required();
  sweep->add_option("--set", overrides, "override key=value (repeatable)");

  std::string suite;
  elasto::CheckOptions copt;
  auto* check = app.add_subcommand("check", "Run a check suite: identities, inequalities, algebra, materials");
  check->add_option("suite", suite, "suite name")->required();
  check->add_option("--seed", copt.seed, "random seed");
  check->add_option("--samples", copt.samples, "random samples for the algebra suite")->check(CLI::Range(10000, 10000000));
  check->add_option("--n", copt.n, "grid size for field-based suites")->check(CLI::Range(16, 1024));
  check->add_flag("--negative-control", copt.negative_control, "evaluate the identities on corrupted data");

  std::string snapshot;
  int k = 2;
  std::optional<double> r_min;
  auto* diag = app.add_subcommand("diagnose", "One-shot diagnostics of a snapshot");
  diag->add_option("snapshot", snapshot, "snapshot file")->required();
  diag->add_option("--k", k, "diagnostic order");
  diag->add_option("--r-min", r_min, "frame cutoff radius (default 4 dx)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim || *sweep) {
      const elasto::Config c = elasto::load_config(config_path, overrides);
      if (*sim) return elasto::cmd_simulate(c, std::cout, std::cerr);
      for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
      return elasto::cmd_sweep(c, parse_eps_list(eps_text), std::cout, std::cerr);
    }
    if (*check) return elasto::cmd_check(suite, copt, std::cout, std::cerr);
    if (*diag) return elasto::cmd_diagnose(snapshot, k, r_min, std::cout, std::cerr);
  } catch (const elasto::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return elasto::kExitUsage;
  }
  return elasto::kExitUsage;
}
