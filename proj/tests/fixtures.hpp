#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "secpur/datagen.hpp"
#include "secpur/index.hpp"

namespace fixture {

// Ellipsoidal holes with a known best plane (axes 1, 2).
//   4-D: semi-axes 0.6, 0.6, 0.35, 0.35, N = 20,000
//   6-D: semi-axes 0.9, 0.9, 0.5 x4,       N = 50,000 (thinner slices need more points)
struct CavityFixture {
  int p;
  long n;
  double wide;
  double narrow;
};

inline constexpr CavityFixture kCavity4{4, 20000, 0.6, 0.35};
inline constexpr CavityFixture kCavity6{6, 50000, 0.9, 0.5};

inline secpur::CavitySample cavity(const CavityFixture& f, std::uint64_t seed = 11,
                                   secpur::CavitySpec::Kind kind = secpur::CavitySpec::Kind::hole,
                                   double density = 0.0) {
  return secpur::sample_with_cavities(f.n, f.p, 1.0, {secpur::centered_cavity(f.p, f.wide, f.narrow, kind, density)},
                                      seed);
}

inline secpur::IndexConfig defaults(double radius = 1.0) { return secpur::default_index_config(radius); }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Fresh scratch directory under the build tree's temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("secpur-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixture
