#include "secpur/binning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secpur/error.hpp"

namespace secpur {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// index of the half-open interval [edges[k], edges[k+1]) holding v, clamped to the last
int interval_of(const std::vector<double>& edges, double v) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  const int k = static_cast<int>(it - edges.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(edges.size()) - 2);
}
}  // namespace

PolarGrid::PolarGrid(int k_r, int k_theta, double radius)
    : k_r_(k_r), k_theta_(k_theta), radius_(radius) {
  if (k_r < 1 || k_theta < 1) throw ConfigError("polar grid needs at least one ring and sector");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("polar grid radius must be positive");
  radial_edges_.resize(static_cast<std::size_t>(k_r) + 1);
  for (int i = 0; i <= k_r; ++i) radial_edges_[static_cast<std::size_t>(i)] = radius * i / k_r;
  radial_edges_.back() = radius;
  angular_edges_.resize(static_cast<std::size_t>(k_theta) + 1);
  for (int j = 0; j <= k_theta; ++j) angular_edges_[static_cast<std::size_t>(j)] = kTwoPi * j / k_theta;
  angular_edges_.back() = kTwoPi;
}

int PolarGrid::locate(double x, double y) const {
  const double r = std::hypot(x, y);
  if (r > radius_) return -1;
  double theta = std::atan2(y, x);  // atan2(0, 0) == 0 puts the origin in sector 0
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  return bin(interval_of(radial_edges_, r), interval_of(angular_edges_, theta));
}

double radial_cdf(double r, int p, double radius) {
  if (p < 2) throw ConfigError("radial_cdf needs p >= 2");
  if (!(r >= 0.0 && r <= radius)) throw ConfigError("radial_cdf argument outside [0, R]");
  const double u = r / radius;
  return 1.0 - std::pow(1.0 - u * u, 0.5 * p);
}

double bin_fraction(double r1, double r2, int p, double radius) {
  if (!(r1 >= 0.0 && r1 < r2 && r2 <= radius)) throw ConfigError("bin_fraction needs 0 <= r1 < r2 <= R");
  return radial_cdf(r2, p, radius) - radial_cdf(r1, p, radius);
}

std::vector<double> bin_weights(int p, const PolarGrid& grid) {
  const auto& edges = grid.radial_edges();
  std::vector<double> w(static_cast<std::size_t>(grid.k_r()));
  for (int i = 0; i < grid.k_r(); ++i) {
    const double f = bin_fraction(edges[static_cast<std::size_t>(i)],
                                  edges[static_cast<std::size_t>(i) + 1], p, grid.radius());
    w[static_cast<std::size_t>(i)] = 1.0 / (grid.k_r() * f);
  }
  return w;
}

BinnedCounts polar_bin(const Points2& projected, std::span<const unsigned char> selector,
                       const PolarGrid& grid) {
  if (static_cast<Eigen::Index>(selector.size()) != projected.rows()) {
    throw ConfigError("selector length does not match point count");
  }
  BinnedCounts out;
  out.counts.assign(static_cast<std::size_t>(grid.size()), 0);
  for (Eigen::Index i = 0; i < projected.rows(); ++i) {
    if (!selector[static_cast<std::size_t>(i)]) continue;
    const int k = grid.locate(projected(i, 0), projected(i, 1));
    if (k < 0) {
      ++out.overflow;
    } else {
      ++out.counts[static_cast<std::size_t>(k)];
      ++out.total;
    }
  }
  return out;
}

RelativeCounts relative_counts(const BinnedCounts& counts) {
  if (counts.total <= 0) throw NumericError("empty distribution");
  RelativeCounts out;
  out.values.resize(counts.counts.size());
  const double total = static_cast<double>(counts.total);
  for (std::size_t k = 0; k < counts.counts.size(); ++k) out.values[k] = counts.counts[k] / total;
  return out;
}

RelativeCounts relative_reweighted(const BinnedCounts& counts, int p_effective,
                                   const PolarGrid& grid) {
  if (static_cast<int>(counts.counts.size()) != grid.size()) {
    throw ConfigError("bin counts do not match the grid");
  }
  RelativeCounts out = relative_counts(counts);
  const std::vector<double> w = bin_weights(p_effective, grid);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] *= w[static_cast<std::size_t>(grid.ring_of(static_cast<int>(k)))];
  }
  out.weighted = true;
  return out;
}

}  // namespace secpur
