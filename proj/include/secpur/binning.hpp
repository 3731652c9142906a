#pragma once

#include <span>
#include <vector>

#include "secpur/slicing.hpp"

namespace secpur {

/// Equidistant polar bins: k_r rings up to radius R, k_theta sectors from angle 0.
/// Bin k = ring * k_theta + sector. Shared by every plane of a run.
class PolarGrid {
 public:
  PolarGrid(int k_r, int k_theta, double radius);

  int k_r() const noexcept { return k_r_; }
  int k_theta() const noexcept { return k_theta_; }
  int size() const noexcept { return k_r_ * k_theta_; }
  double radius() const noexcept { return radius_; }
  const std::vector<double>& radial_edges() const noexcept { return radial_edges_; }
  const std::vector<double>& angular_edges() const noexcept { return angular_edges_; }

  int bin(int ring, int sector) const noexcept { return ring * k_theta_ + sector; }
  int ring_of(int bin) const noexcept { return bin / k_theta_; }

  /// Bin of a point, or -1 when r > R.
  int locate(double x, double y) const;

  friend bool operator==(const PolarGrid&, const PolarGrid&) = default;

 private:
  int k_r_;
  int k_theta_;
  double radius_;
  std::vector<double> radial_edges_;
  std::vector<double> angular_edges_;
};

struct BinnedCounts {
  std::vector<long> counts;
  long total = 0;     // points inside radius R (sum of counts)
  long overflow = 0;  // selected points with r > R, excluded
};

/// Normalized (and possibly reweighted) bin frequencies.
struct RelativeCounts {
  std::vector<double> values;
  bool weighted = false;
};

/// Radial CDF of the uniform p-ball projected onto a plane.
double radial_cdf(double r, int p, double radius);

/// Expected fraction of projected points in the ring [r1, r2).
double bin_fraction(double r1, double r2, int p, double radius);

/// Per-ring weights 1 / (k_r * f_i) that flatten a uniform p-ball's projection.
std::vector<double> bin_weights(int p, const PolarGrid& grid);

/// Counts selected points per bin; selector[i] != 0 marks a selected point.
BinnedCounts polar_bin(const Points2& projected, std::span<const unsigned char> selector,
                       const PolarGrid& grid);

/// Plain relative frequencies, no reweighting.
RelativeCounts relative_counts(const BinnedCounts& counts);

/// Relative frequencies times the ring weights for dimension p_effective.
/// Throws NumericError("empty distribution") when no point was binned.
RelativeCounts relative_reweighted(const BinnedCounts& counts, int p_effective,
                                   const PolarGrid& grid);

}  // namespace secpur
