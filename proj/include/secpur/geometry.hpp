#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace secpur {

/// A 2-D projection plane in p dimensions, stored as a p x 2 orthonormal basis.
///
/// Frames are immutable. Two frames describe the same plane when their principal
/// angles vanish; the raw bases may differ by a within-plane rotation.
class Frame {
 public:
  static constexpr double kOrthonormalTolerance = 1e-10;

  /// Wraps an already orthonormal p x 2 basis. Throws ConfigError if the columns are
  /// not orthonormal within `tolerance` or p < 3.
  static Frame from_orthonormal(Eigen::MatrixXd basis, double tolerance = kOrthonormalTolerance);

  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  auto column(int j) const { return basis_.col(j); }

 private:
  explicit Frame(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}

  Eigen::MatrixXd basis_;
};

/// Gram-Schmidt on a p x 2 matrix. The first column keeps its direction.
/// Throws NumericError("degenerate basis") for rank-deficient input.
Frame orthonormalize(const Eigen::MatrixXd& m);

/// Rotation-invariant random plane (orthonormalized Gaussian matrix).
Frame random_frame(int p, std::uint64_t seed);

/// Plane spanned by coordinate axes i and j (zero-based).
Frame coordinate_frame(int p, int i, int j);

/// Principal angles between the spans of two frames, sorted descending, in [0, pi/2].
/// Small angles are computed from sines so they stay accurate near zero.
std::array<double, 2> principal_angles(const Frame& a, const Frame& b);

/// Largest principal angle; the distance used for "same plane" comparisons.
double plane_distance(const Frame& a, const Frame& b);

/// Shortest rotation between two planes, realized as two planar rotations between
/// paired principal vectors.
class GeodesicPath {
 public:
  const Frame& start() const noexcept { return start_; }
  /// End plane with its basis rotated to match the start as closely as possible.
  const Frame& end() const noexcept { return end_; }
  /// Principal angles, descending.
  const std::array<double, 2>& angles() const noexcept { return angles_; }
  /// Unit rotation directions paired with the start's principal vectors (zero column
  /// when the matching angle is zero).
  const Eigen::MatrixXd& directions() const noexcept { return directions_; }

  /// Frame at path parameter s without range checks; s outside [0,1] extends the geodesic.
  Frame evaluate(double s) const;

 private:
  friend GeodesicPath geodesic_between(const Frame& a, const Frame& b);
  GeodesicPath(Frame start, Frame end) : start_(std::move(start)), end_(std::move(end)) {}

  Frame start_;
  Frame end_;
  std::array<double, 2> angles_{0.0, 0.0};
  Eigen::MatrixXd principal_;   // start basis expressed in principal vectors
  Eigen::MatrixXd directions_;  // orthogonal complements towards the end plane
  Eigen::Matrix2d align_;       // maps principal coordinates back to the start basis
};

/// Throws ConfigError on dimension mismatch.
GeodesicPath geodesic_between(const Frame& a, const Frame& b);

/// Frame at fraction t in [0,1] of the path. Throws ConfigError otherwise.
Frame interpolate(const GeodesicPath& path, double t);

/// A geodesic ray through an origin plane, parametrized by its largest principal angle.
/// ray.at(alpha) and ray.at(-alpha) are symmetric about the origin.
class GeodesicRay {
 public:
  explicit GeodesicRay(GeodesicPath path);

  const Frame& origin() const noexcept { return path_.start(); }
  /// Frame whose largest principal angle to the origin is |alpha| (for |alpha| <= pi/2).
  Frame at(double alpha) const;

 private:
  GeodesicPath path_;
};

/// Direction through `origin` towards a seeded random target plane.
GeodesicRay random_ray(const Frame& origin, std::uint64_t direction_seed);

/// Moves `alpha` radians from origin along the seeded random direction.
Frame step_from(const Frame& origin, std::uint64_t direction_seed, double alpha);

}  // namespace secpur
