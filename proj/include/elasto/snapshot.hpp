#pragma once

#include <string>

#include "elasto/dynamics.hpp"

namespace elasto {

/// Binary state file: "ELAS2D01", u32 n, f64 L, f64 t, then the planes v1, v2,
/// G11, G12, G21, G22, p of n*n f64 each. All values little-endian.
void write_snapshot(const std::string& path, const State& s);

/// Throws Error on a bad magic, inconsistent header, or wrong file size.
State read_snapshot(const std::string& path);

}  // namespace elasto
