#include "elasto/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace elasto {

namespace {

constexpr char kMagic[8] = {'E', 'L', 'A', 'S', '2', 'D', '0', '1'};
constexpr std::size_t kHeader = 8 + 4 + 8 + 8;

template <typename T>
void put(std::vector<char>& buf, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  buf.insert(buf.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get(const char* p) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::string& path, const State& s) {
  const Grid& g = s.grid();
  std::vector<char> buf(kMagic, kMagic + 8);
  buf.reserve(kHeader + 7 * g.size() * 8);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n()));
  put<double>(buf, g.half_width());
  put<double>(buf, s.t);
  const ScalarField* planes[7] = {&s.v[0], &s.v[1], &s.G.c[0], &s.G.c[1], &s.G.c[2], &s.G.c[3], &s.p};
  for (const ScalarField* f : planes)
    for (double x : f->values()) put<double>(buf, x);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open snapshot for writing: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error("failed writing snapshot: " + path);
}

State read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot: " + path);
  const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kHeader) throw Error("snapshot format error: file shorter than header");
  if (std::memcmp(buf.data(), kMagic, 8) != 0) throw Error("snapshot format error: bad magic");
  const auto n = get<std::uint32_t>(buf.data() + 8);
  const double L = get<double>(buf.data() + 12);
  const double t = get<double>(buf.data() + 20);
  if (n < 16 || n % 2 != 0 || n > 65536) throw Error("snapshot format error: invalid grid size");
  const std::size_t expected = kHeader + 7ull * n * n * 8;
  if (buf.size() != expected) {
    throw Error("snapshot format error: size " + std::to_string(buf.size()) + " does not match expected " +
                std::to_string(expected));
  }
  const Grid g = make_grid(static_cast<int>(n), L);
  State s{t, VectorField(g), MatrixField(g), ScalarField(g)};
  ScalarField* planes[7] = {&s.v[0], &s.v[1], &s.G.c[0], &s.G.c[1], &s.G.c[2], &s.G.c[3], &s.p};
  const char* p = buf.data() + kHeader;
  for (ScalarField* f : planes) {
    for (double& x : f->values()) {
      x = get<double>(p);
      p += 8;
    }
  }
  return s;
}

}  // namespace elasto
