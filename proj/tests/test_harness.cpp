#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "elasto/config.hpp"
#include "elasto/harness.hpp"
#include "elasto/snapshot.hpp"

using namespace elasto;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = "grid.n = 128\ngrid.L = 4pi\ndata.shape = gaussian-bump\ndata.eps = 0.01\n";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("elasto_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Config tiny(double eps, const fs::path& dir) {
  Config c = parse_config(kMinimal, {"grid.n = 64", "frame.r_min = 1.0", "run.t_max = 0.5", "run.out_every = 2",
                                     "output.dir = " + dir.string(), "data.eps = " + std::to_string(eps)});
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, NumbersAcceptPiForms) {
  EXPECT_DOUBLE_EQ(parse_number("pi"), M_PI);
  EXPECT_DOUBLE_EQ(parse_number("4pi"), 4 * M_PI);
  EXPECT_DOUBLE_EQ(parse_number("4*pi"), 4 * M_PI);
  EXPECT_DOUBLE_EQ(parse_number("pi/2"), M_PI / 2);
  EXPECT_DOUBLE_EQ(parse_number(" 1e-3 "), 1e-3);
  EXPECT_THROW(parse_number("pie"), ConfigError);
  EXPECT_THROW(parse_number("pi/0"), ConfigError);
}

TEST(Config, ParsesDefaultsCommentsAndOverrides) {
  const Config c = parse_config(std::string("# comment\n") + kMinimal + "run.cfl = 0.25  # trailing\n",
                                {"data.eps=0.02"});
  EXPECT_EQ(c.n, 128);
  EXPECT_DOUBLE_EQ(c.L, 4 * M_PI);
  EXPECT_DOUBLE_EQ(c.cfl, 0.25);
  EXPECT_DOUBLE_EQ(c.eps, 0.02);
  EXPECT_EQ(c.material, "hookean");
  EXPECT_EQ(c.k, 2);
  ASSERT_EQ(c.warnings.size(), 1u);
  EXPECT_NE(c.warnings[0].find("override 1"), std::string::npos);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_NE(error_of(std::string(kMinimal) + "grid.m = 3\n").find("line 5: unknown key 'grid.m'"), std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "\nrun.cfl 0.3\n").find("line 6"), std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "run.cfl = fast\n").find("line 5: run.cfl"), std::string::npos);
  EXPECT_NE(error_of(kMinimal, {"bogus = 1"}).find("override 1"), std::string::npos);
  EXPECT_NE(error_of("grid.n = 64\n").find("missing required key"), std::string::npos);
}

TEST(Config, ValidationRejectsBadValues) {
  EXPECT_FALSE(error_of(kMinimal, {"grid.n = 63"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"grid.n = 64"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"run.cfl = 1.5"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"data.eps = -1"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"diag.k = 4"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"frame.r_min = 5"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"frame.r_min = 1", "material.name = stiffening"}).empty());
  EXPECT_TRUE(error_of(kMinimal, {"frame.r_min = 1", "material.name = stiffening", "diag.k = 0"}).empty());
  EXPECT_FALSE(error_of(kMinimal, {"frame.r_min = 1", "material.name = neo-log", "material.constants = -1",
                                   "diag.k = 0"}).empty());
}

TEST(Config, PrintedConfigParsesBack) {
  const Config c = parse_config(kMinimal, {"frame.r_min = 1.0", "data.center = 0.5, -0.25"});
  const Config d = parse_config(to_string(c));
  EXPECT_EQ(to_string(c), to_string(d));
  EXPECT_DOUBLE_EQ(d.center[1], -0.25);
}

TEST(Snapshot, RoundTripIsBitExact) {
  const fs::path dir = scratch("snap");
  Config c = tiny(0.01, dir);
  const State s = initial_state(c);
  const std::string path = (dir / "s.bin").string();
  write_snapshot(path, s);
  const State r = read_snapshot(path);
  EXPECT_EQ(r.grid(), s.grid());
  EXPECT_EQ(r.t, s.t);
  for (std::size_t k = 0; k < s.v[0].size(); ++k) {
    ASSERT_EQ(r.v[0][k], s.v[0][k]);
    ASSERT_EQ(r.G(1, 0)[k], s.G(1, 0)[k]);
    ASSERT_EQ(r.p[k], s.p[k]);
  }
  EXPECT_EQ(fs::file_size(path), 8 + 4 + 8 + 8 + 7 * 64 * 64 * 8u);
}

TEST(Snapshot, CorruptFilesAreRejected) {
  const fs::path dir = scratch("snapbad");
  const State s = initial_state(tiny(0.01, dir));
  const std::string path = (dir / "s.bin").string();
  write_snapshot(path, s);
  fs::resize_file(path, fs::file_size(path) - 8);
  EXPECT_THROW(read_snapshot(path), Error);
  std::ofstream(path, std::ios::binary) << "NOTASNAPSHOT";
  EXPECT_THROW(read_snapshot(path), Error);
  EXPECT_THROW(read_snapshot((dir / "missing.bin").string()), Error);
}

TEST(Series, HeaderMatchesRowWidth) {
  const auto cols = series_columns();
  EXPECT_EQ(cols.front(), "t");
  EXPECT_EQ(cols[5], "C_growth");
  DiagRow row;
  row.special.assign(cols.size() - 12, {"x", 1.0});
  const std::string line = series_row(row);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), static_cast<long>(cols.size() - 1));
}

TEST(Run, ZeroAmplitudeGivesAllZeroSeries) {
  const fs::path dir = scratch("zero");
  const RunResult r = run_simulation(tiny(0.0, dir));
  EXPECT_EQ(r.outcome.stop_reason, StopReason::TMax);
  EXPECT_EQ(r.exit_code, kExitOk);
  ASSERT_GE(r.rows.size(), 2u);
  for (const DiagRow& row : r.rows) {
    EXPECT_EQ(row.E0, 0.0);
    EXPECT_EQ(row.Ek, 0.0);
    EXPECT_EQ(row.Xk, 0.0);
    EXPECT_EQ(row.C_growth, 0.0);
  }
  EXPECT_TRUE(fs::exists(dir / "series.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));
  EXPECT_TRUE(fs::exists(dir / "snapshots" / "state_000000.bin"));
}

TEST(Run, RepeatedRunsWriteIdenticalSeries) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  run_simulation(tiny(0.01, a));
  run_simulation(tiny(0.01, b));
  const std::string sa = slurp(a / "series.csv");
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b / "series.csv"));
}

TEST(Run, SmallDataStaysBoundedOnShortWindow) {
  const fs::path dir = scratch("bound");
  const RunResult r = run_simulation(tiny(0.01, dir));
  EXPECT_TRUE(r.bound_ok);
  EXPECT_LE(r.sup_Ek, 2 * 0.01 * 0.01);
  EXPECT_LT(r.rows.back().divV, 1e-12);
}

TEST(Commands, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_diagnose("/nonexistent/file.bin", 2, std::nullopt, out, err), kExitUsage);
  EXPECT_EQ(cmd_check("nonsense", CheckOptions{}, out, err), kExitUsage);
  const fs::path dir = scratch("cmd");
  EXPECT_EQ(cmd_sweep(tiny(0.01, dir), {0.01, 0.02}, out, err), kExitUsage);
}

TEST(Commands, DiagnoseReproducesFirstRow) {
  const fs::path dir = scratch("diag");
  const Config c = tiny(0.01, dir);
  const RunResult r = run_simulation(c);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_diagnose((dir / "snapshots" / "state_000000.bin").string(), c.k, c.r_min, out, err), kExitOk)
      << err.str();
  std::ostringstream e0;
  e0.precision(17);
  EXPECT_NE(out.str().find("E0"), std::string::npos);
  const State s = read_snapshot((dir / "snapshots" / "state_000000.bin").string());
  const DiagRow row = diagnose_state(s, make_frame(s.grid(), c.resolved_r_min()), c.k);
  EXPECT_EQ(series_row(row), series_row(r.rows.front()));
}
