#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elasto/grid.hpp"
#include "elasto/kinematics.hpp"

namespace elasto {

/// Parse or validation failure; the message carries the line (or override) position.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Config {
  int n = 0;
  double L = 0.0;
  std::optional<double> r_min;  // default 4 dx

  StreamShape shape = StreamShape::GaussianBump;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double width = 1.0;
  std::array<double, 2> center{0.0, 0.0};

  double t_max = 50.0;
  double cfl = 0.5;
  double dt_min = 1e-6;
  int out_every = 10;
  int snapshot_every = 0;  // in output rows; 0 keeps only the first and last

  int k = 2;
  std::string material = "hookean";
  std::vector<double> constants;

  std::string output_dir = "out";

  /// Non-fatal notes such as repeated keys.
  std::vector<std::string> warnings;

  double resolved_r_min() const;
};

/// Parses "key = value" lines ('#' starts a comment). Repeated keys: last wins,
/// with a warning. Overrides have the form "key=value" and are applied after the
/// file. Validation runs before anything is allocated.
Config parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
Config load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Throws ConfigError for out-of-range or inconsistent settings.
void validate(const Config& c);

/// Accepts plain numbers and multiples of pi: "pi", "4pi", "4*pi", "pi/2".
double parse_number(const std::string& text);

/// Canonical key = value listing of c.
std::string to_string(const Config& c);

}  // namespace elasto
