#pragma once

#include <optional>
#include <vector>

#include "secpur/binning.hpp"
#include "secpur/slicing.hpp"

namespace secpur {

/// low: the slice is emptier than its surroundings (holes).
/// up: the slice is denser than its surroundings (grains).
enum class Direction { low, up };

/// Where the noise cutoff is compared.
///   contribution: per-bin term (c^(1/q) - s^(1/q))^q must exceed epsilon.
///   difference:   the root-space difference c^(1/q) - s^(1/q) must exceed epsilon.
/// Both coincide at q = 1.
enum class ThresholdScale { contribution, difference };

struct IndexConfig {
  IndexConfig(PolarGrid grid_, double h_) : grid(std::move(grid_)), h(h_) {}

  PolarGrid grid;
  double h;
  Direction direction = Direction::low;
  double q = 1.0;
  std::optional<double> epsilon;  // empty means estimate from sample size
  std::vector<double> weights;    // per-bin weights; empty means all ones
  int rotation_average = 1;
  ThresholdScale threshold_scale = ThresholdScale::contribution;

  /// Throws ConfigError on q <= 0, negative epsilon or weights, wrong weight count,
  /// rotation_average < 1 or h <= 0.
  void validate() const;
  double weight(int bin) const { return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(bin)]; }
};

/// q = 1, 5 rings x 10 sectors, h = R/4, epsilon estimated.
IndexConfig default_index_config(double radius);

struct IndexValue {
  double value = 0.0;  // raw * rescale_factor(q), clamped to [0, 1]
  double raw = 0.0;
  double epsilon_used = 0.0;
  long inside_count = 0;
  long outside_count = 0;
};

/// a - b when it exceeds epsilon, otherwise 0.
double threshold_diff(double a, double b, double epsilon);

/// Generalized section index between inside (s) and outside (c) relative counts.
/// config.epsilon must be set. Throws ConfigError on grid mismatch.
IndexValue index_eval(const RelativeCounts& s, const RelativeCounts& c, const IndexConfig& config);

/// Up-index of the analytic model where the inside distribution fills a fraction gamma
/// of the bins the uniform outside distribution fills.
double parametrized_index_up(double q, double gamma);

/// 1 / parametrized_index_up(q, 0.1).
double rescale_factor(double q);

/// Relative Poisson error of the expected inside count in each ring.
std::vector<double> ring_relative_errors(long n, int p, const PolarGrid& grid, double h);

/// Noise cutoff from the innermost ring's relative error divided by the bin count.
/// Throws NumericError when the innermost ring expects fewer than one point.
double epsilon_auto(long n, int p, const PolarGrid& grid, double h);

/// Explicit epsilon, or epsilon_auto for the given sample.
double resolve_epsilon(const IndexConfig& config, long n, int p);

/// Expected q = 1 index for two pure-noise samples with cutoff n_sigma * delta.
double noise_expectation_q1(double n_sigma, long k, long n, double gamma);

/// Index of a (centered) slice assignment, averaged over config.rotation_average
/// within-plane rotations spread across one angular bin.
/// Throws DegenerateSlice when either side has no binned point.
IndexValue rotation_averaged_index(const SliceAssignment& assignment, const IndexConfig& config);

}  // namespace secpur
