#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "secpur/geometry.hpp"
#include "secpur/slicing.hpp"

namespace secpur {

/// Uniform sample of the p-ball of radius R.
Dataset sample_ball(long n, int p, double radius, std::uint64_t seed);

/// Axis-aligned ellipsoidal region with a density multiplier relative to the background.
/// hole: density_factor in [0, 1) (0 empties the region); grain: density_factor > 1.
struct CavitySpec {
  enum class Kind { hole, grain };

  Kind kind = Kind::hole;
  Eigen::VectorXd center;
  Eigen::VectorXd semi_axes;
  double density_factor = 0.0;

  bool contains(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  /// Volume of the region relative to the ball of the given radius.
  double volume_fraction(double radius) const;
};

/// Centered ellipsoid with semi-axis `wide` along axes (0, 1) and `narrow` elsewhere.
CavitySpec centered_cavity(int p, double wide, double narrow, CavitySpec::Kind kind = CavitySpec::Kind::hole,
                           double density_factor = 0.0);

struct CavitySample {
  Dataset data;
  /// Plane of the first cavity's two widest semi-axes; its slice shows the widest
  /// cross-section while the projection averages it away.
  Frame informative_plane;
  /// Plane of the first cavity's two narrowest semi-axes.
  Frame uninformative_plane;
  long rejected = 0;
  long grain_points = 0;
};

/// Throws ConfigError when a region leaves the ball, and ConfigError("nothing to sample")
/// when the holes cover the whole ball.
CavitySample sample_with_cavities(long n, int p, double radius, const std::vector<CavitySpec>& cavities,
                                  std::uint64_t seed);

struct ThdmParams {
  std::array<double, 5> lambda{};
  double tan_beta = 1.0;
  double cos_beta_alpha = 0.0;
};

struct ThdmMasses {
  double m2_h = 0.0;
  double m2_H = 0.0;
  double m2_Hpm = 0.0;
  double m2_A = 0.0;

  bool physical() const noexcept { return m2_h > 0.0 && m2_H > 0.0 && m2_Hpm > 0.0 && m2_A > 0.0; }
};

/// Tree-level squared scalar masses of the two-Higgs-doublet model (GeV^2 for v in GeV).
/// Throws NumericError("singular angle configuration") when sin(b-a) or sin(2(b-a))
/// vanishes to 1e-9, ConfigError for |cos(b-a)| > 1 or tan(beta) <= 0.
ThdmMasses thdm_masses(const ThdmParams& params, double v = 246.0);

/// Affine map from the unit cube [-1, 1]^7 onto parameter ranges.
struct ThdmRanges {
  double lambda_min = -3.0;
  double lambda_max = 3.0;
  double tan_beta_min = 0.2;
  double tan_beta_max = 10.0;
  double cos_beta_alpha_min = -0.5;
  double cos_beta_alpha_max = 0.5;

  ThdmParams to_params(const Eigen::Ref<const Eigen::VectorXd>& unit) const;
};

struct ThdmPoint {
  Eigen::VectorXd standardized;  // coordinates in the 7-ball
  ThdmParams params;
  ThdmMasses masses;
  bool physical = false;
};

struct ThdmScan {
  std::vector<ThdmPoint> points;
  Dataset physical;  // standardized coordinates of the physical points
  long singular_rejected = 0;

  long physical_count() const noexcept { return physical.n(); }
};

inline const std::vector<std::string>& thdm_columns() {
  static const std::vector<std::string> names{"lambda1", "lambda2", "lambda3", "lambda4",
                                              "lambda5", "tan_beta", "cos_beta_alpha"};
  return names;
}

/// n retained samples uniform in the 7-ball of radius R, each mapped through `ranges`
/// (coordinate / R onto [-1, 1]) and flagged by mass positivity.
ThdmScan thdm_scan(long n, double radius, std::uint64_t seed, const ThdmRanges& ranges = {});

/// All scanned points (physical and not) as a dataset labelled "physical"/"nonphysical".
Dataset thdm_all_points(const ThdmScan& scan, double radius);

}  // namespace secpur
