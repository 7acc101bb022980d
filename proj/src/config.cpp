#include "elasto/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "elasto/material.hpp"

namespace elasto {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double plain_number(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return x;
}

long integer(const std::string& s) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return x;
}

std::vector<double> number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(item));
  }
  return out;
}

using Setter = void (*)(Config&, const std::string&);

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n", [](Config& c, const std::string& v) { c.n = static_cast<int>(integer(v)); }},
      {"grid.L", [](Config& c, const std::string& v) { c.L = parse_number(v); }},
      {"frame.r_min",
       [](Config& c, const std::string& v) {
         if (v == "auto") {
           c.r_min.reset();
         } else {
           c.r_min = parse_number(v);
         }
       }},
      {"data.shape",
       [](Config& c, const std::string& v) {
         try {
           c.shape = parse_stream_shape(v);
         } catch (const Error& e) {
           throw ConfigError(e.what());
         }
       }},
      {"data.eps", [](Config& c, const std::string& v) { c.eps = parse_number(v); }},
      {"data.seed",
       [](Config& c, const std::string& v) {
         const long s = integer(v);
         if (s < 0) throw ConfigError("data.seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"data.width", [](Config& c, const std::string& v) { c.width = parse_number(v); }},
      {"data.center",
       [](Config& c, const std::string& v) {
         const auto xs = number_list(v);
         if (xs.size() != 2) throw ConfigError("data.center needs two comma-separated numbers");
         c.center = {xs[0], xs[1]};
       }},
      {"run.t_max", [](Config& c, const std::string& v) { c.t_max = parse_number(v); }},
      {"run.cfl", [](Config& c, const std::string& v) { c.cfl = parse_number(v); }},
      {"run.dt_min", [](Config& c, const std::string& v) { c.dt_min = parse_number(v); }},
      {"run.out_every", [](Config& c, const std::string& v) { c.out_every = static_cast<int>(integer(v)); }},
      {"run.snapshot_every",
       [](Config& c, const std::string& v) { c.snapshot_every = static_cast<int>(integer(v)); }},
      {"diag.k", [](Config& c, const std::string& v) { c.k = static_cast<int>(integer(v)); }},
      {"material.name", [](Config& c, const std::string& v) { c.material = v; }},
      {"material.constants", [](Config& c, const std::string& v) { c.constants = number_list(v); }},
      {"output.dir", [](Config& c, const std::string& v) { c.output_dir = v; }},
  };
  return table;
}

const char* kRequired[] = {"grid.n", "grid.L", "data.shape", "data.eps"};

void apply(Config& c, std::map<std::string, std::string>& seen, const std::string& key, const std::string& value,
           const std::string& where) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(where + ": unknown key '" + key + "'");
  if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
  if (seen.count(key)) c.warnings.push_back(where + ": '" + key + "' repeated, last value wins");
  seen[key] = value;
  try {
    it->second(c, value);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + key + ": " + e.what());
  }
}

std::pair<std::string, std::string> split_assignment(const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
  return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

}  // namespace

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return plain_number(s);
  std::string coef = trim(s.substr(0, pos));
  std::string rest = trim(s.substr(pos + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double value = M_PI * (coef.empty() ? 1.0 : (coef == "-" ? -1.0 : plain_number(coef)));
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("not a number: '" + s + "'");
    const double d = plain_number(trim(rest.substr(1)));
    if (d == 0.0) throw ConfigError("division by zero in '" + s + "'");
    value /= d;
  }
  return value;
}

double Config::resolved_r_min() const { return r_min ? *r_min : 4.0 * (2.0 * L / n); }

void validate(const Config& c) {
  if (c.n < 16 || c.n % 2 != 0) throw ConfigError("grid.n must be even and >= 16");
  if (c.n > 8192) throw ConfigError("grid.n larger than 8192 is not supported");
  if (!(c.L > 0.0) || !std::isfinite(c.L)) throw ConfigError("grid.L must be positive");
  const double dx = 2.0 * c.L / c.n;
  const double r_min = c.resolved_r_min();
  if (!(r_min > 0.0) || r_min >= c.L / 8.0) throw ConfigError("frame.r_min must lie in (0, L/8)");
  if (r_min < dx) throw ConfigError("frame.r_min must be at least one grid spacing");
  if (!(c.eps >= 0.0) || !std::isfinite(c.eps)) throw ConfigError("data.eps must be finite and non-negative");
  if (!(c.width > 0.0)) throw ConfigError("data.width must be positive");
  if (!(c.t_max > 0.0)) throw ConfigError("run.t_max must be positive");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("run.cfl must lie in (0, 1]");
  if (!(c.dt_min > 0.0)) throw ConfigError("run.dt_min must be positive");
  if (c.out_every < 1) throw ConfigError("run.out_every must be >= 1");
  if (c.snapshot_every < 0) throw ConfigError("run.snapshot_every must be >= 0");
  if (c.k < 0 || c.k > 3) throw ConfigError("diag.k must lie in [0, 3]");
  if (c.output_dir.empty()) throw ConfigError("output.dir must not be empty");
  Material m = Material::hookean();
  try {
    m = Material::by_name(c.material, c.constants);
  } catch (const Error& e) {
    throw ConfigError(std::string("material: ") + e.what());
  }
  if (!m.is_hookean() && !validate(m).admissible()) throw ConfigError("material '" + c.material + "' is not admissible");
  if (!m.is_hookean() && c.k != 0) throw ConfigError("non-Hookean materials support diag.k = 0 only");
}

Config parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  Config c;
  std::map<std::string, std::string> seen;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(number);
    const auto [key, value] = split_assignment(line, where);
    apply(c, seen, key, value, where);
  }
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const std::string where = "override " + std::to_string(i + 1);
    const auto [key, value] = split_assignment(overrides[i], where);
    apply(c, seen, key, value, where);
  }
  for (const char* key : kRequired)
    if (!seen.count(key)) throw ConfigError(std::string("missing required key '") + key + "'");
  validate(c);
  return c;
}

Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string to_string(const Config& c) {
  std::ostringstream o;
  o.precision(17);
  o << "grid.n = " << c.n << "\n"
    << "grid.L = " << c.L << "\n"
    << "frame.r_min = " << c.resolved_r_min() << "\n"
    << "data.shape = " << to_string(c.shape) << "\n"
    << "data.eps = " << c.eps << "\n"
    << "data.seed = " << c.seed << "\n"
    << "data.width = " << c.width << "\n"
    << "data.center = " << c.center[0] << ", " << c.center[1] << "\n"
    << "run.t_max = " << c.t_max << "\n"
    << "run.cfl = " << c.cfl << "\n"
    << "run.dt_min = " << c.dt_min << "\n"
    << "run.out_every = " << c.out_every << "\n"
    << "run.snapshot_every = " << c.snapshot_every << "\n"
    << "diag.k = " << c.k << "\n"
    << "material.name = " << c.material << "\n";
  if (!c.constants.empty()) {
    o << "material.constants = ";
    for (std::size_t i = 0; i < c.constants.size(); ++i) o << (i ? ", " : "") << c.constants[i];
    o << "\n";
  }
  o << "output.dir = " << c.output_dir << "\n";
  return o.str();
}

}  // namespace elasto
