#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elasto/config.hpp"
#include "elasto/diagnostics.hpp"
#include "elasto/dynamics.hpp"

namespace elasto {

// Exit codes of the command entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailed = 1;
inline constexpr int kExitBreakdown = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitContamination = 4;

/// Grid 256^2, L = 4 pi, r_min = 4 dx, gaussian bump of width 1, k = 2, t_max = 50.
Config reference_config(double eps = 0.01);

StreamSpec stream_spec(const Config& c, double amplitude);

/// H^k_Lambda size of the linearized unit-amplitude data (v = perp-grad psi, G = grad v).
/// The run amplitude is eps divided by this number.
double unit_data_norm(const Config& c);
double amplitude_for(const Config& c);

std::optional<Material> material_for(const Config& c);
Dynamics dynamics_for(const Config& c);

/// Flow-generated initial state at amplitude_for(c).
State initial_state(const Config& c, std::optional<InitialData>* info = nullptr);

std::vector<std::string> series_columns();
std::string series_header();
std::string series_row(const DiagRow& row);

struct RunOptions {
  bool write_files = true;
  /// Overrides the CFL-derived step when positive.
  double fixed_dt = 0.0;
  std::ostream* log = nullptr;
};

struct RunResult {
  SimulationOutcome outcome;
  std::vector<DiagRow> rows;
  double amplitude = 0.0;
  double unit_norm = 0.0;
  double sup_Ek = 0.0;
  double max_C_growth = 0.0;
  bool bound_ok = true;  // sup E_k <= 2 eps^2
  std::optional<double> t_breakdown;
  double compat_initial = 0.0;
  double max_Xk_excluded = 0.0;
  /// Running maxima of every series column after t.
  std::map<std::string, double> maxima;
  int exit_code = kExitOk;
};

/// Runs the configured simulation. With write_files, output.dir receives
/// series.csv, summary.txt, config.txt, snapshots/ and the SVG plots.
RunResult run_simulation(const Config& c, const RunOptions& opt = {});

struct CheckItem {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool asserted = true;
  bool pass = true;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;
  std::vector<std::string> warnings;
  std::string tables;

  void add(const std::string& name, double value, double tolerance, bool asserted = true);
  void add_min(const std::string& name, double value, double lower, bool asserted = true);
  bool passed() const;
  const CheckItem* find(const std::string& name) const;
  std::string format() const;
};

struct CheckOptions {
  std::uint64_t seed = 20240607;
  int samples = 20000;
  bool negative_control = false;
  int n = 256;
};

CheckReport check_algebra(const CheckOptions& opt);
/// Frame identities and pressure duality on flow-generated data. The negative
/// control adds a gradient to v and a multiple of I to G before evaluating.
CheckReport check_identities(const CheckOptions& opt);
/// Ratio suites of the weighted Sobolev inequalities at n and 2n; measured only.
CheckReport check_inequalities(const CheckOptions& opt);
CheckReport check_materials(const CheckOptions& opt);

int cmd_simulate(const Config& c, std::ostream& out, std::ostream& err);
int cmd_sweep(const Config& c, const std::vector<double>& eps_list, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& suite, const CheckOptions& opt, std::ostream& out, std::ostream& err);
int cmd_diagnose(const std::string& snapshot, int k, std::optional<double> r_min, std::ostream& out,
                 std::ostream& err);

}  // namespace elasto
