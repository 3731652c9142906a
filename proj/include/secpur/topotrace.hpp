#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "secpur/geometry.hpp"
#include "secpur/index.hpp"
#include "secpur/slicing.hpp"

namespace secpur {

struct TopotraceConfig {
  int m = 100;                              // number of random directions
  double alpha_max = std::numbers::pi / 2;  // half-length of each ray
  int steps = 20;                           // grid points per side
  std::uint64_t seed = 0;

  void validate() const;
};

struct TracePoint {
  double alpha;
  IndexValue index;
};

/// Index profiles along m geodesic rays through a start plane. Every trace holds
/// 2 * steps + 1 points on a symmetric alpha grid; the alpha = 0 point is shared.
struct TopotraceSet {
  Frame start;
  std::vector<std::vector<TracePoint>> traces;
  std::vector<std::string> warnings;

  int center() const noexcept { return traces.empty() ? 0 : static_cast<int>(traces.front().size() / 2); }
};

TopotraceSet topotrace(const Dataset& data, const Frame& start, const IndexConfig& index_config,
                       const TopotraceConfig& tconfig);

struct SquintSummary {
  std::vector<double> per_trace;
  double median = 0.0;
};

/// Per trace, the largest |alpha| whose index still reaches fraction * index(0).
/// Throws NumericError("no structure at start") when index(0) is zero.
SquintSummary squint_summary(const TopotraceSet& tset, double fraction = 0.75);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace secpur
