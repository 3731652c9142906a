#include "secpur/index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secpur/error.hpp"

namespace secpur {

void IndexConfig::validate() const {
  if (!(q > 0.0) || !std::isfinite(q)) throw ConfigError("q must be positive");
  if (!(h > 0.0)) throw ConfigError("slice height must be positive");
  if (epsilon && !(*epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
  if (rotation_average < 1) throw ConfigError("rotation_average must be at least 1");
  if (!weights.empty()) {
    if (static_cast<int>(weights.size()) != grid.size()) {
      throw ConfigError("bin weight count does not match the grid");
    }
    for (double w : weights) {
      if (!(w >= 0.0)) throw ConfigError("bin weights must be non-negative");
    }
  }
}

IndexConfig default_index_config(double radius) {
  return IndexConfig(PolarGrid(5, 10, radius), 0.25 * radius);
}

double threshold_diff(double a, double b, double epsilon) {
  const double d = a - b;
  return d > epsilon ? d : 0.0;
}

namespace {

double root(double x, double q) { return q == 1.0 ? x : std::pow(x, 1.0 / q); }
double power(double x, double q) { return q == 1.0 ? x : std::pow(x, q); }

double bin_term(double a, double b, double q, double epsilon, ThresholdScale scale) {
  if (scale == ThresholdScale::difference) return power(threshold_diff(root(a, q), root(b, q), epsilon), q);
  const double d = root(a, q) - root(b, q);
  if (!(d > 0.0)) return 0.0;
  const double t = power(d, q);
  return t > epsilon ? t : 0.0;
}

}  // namespace

IndexValue index_eval(const RelativeCounts& s, const RelativeCounts& c, const IndexConfig& config) {
  config.validate();
  if (!config.epsilon) throw ConfigError("index_eval needs a resolved epsilon");
  const auto k = static_cast<std::size_t>(config.grid.size());
  if (s.values.size() != k || c.values.size() != k) {
    throw ConfigError("relative counts do not match the grid");
  }
  const double eps = *config.epsilon;
  double raw = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double term = config.direction == Direction::low
                            ? bin_term(c.values[i], s.values[i], config.q, eps, config.threshold_scale)
                            : bin_term(s.values[i], c.values[i], config.q, eps, config.threshold_scale);
    if (term != 0.0) raw += config.weight(static_cast<int>(i)) * term;
  }
  IndexValue out;
  out.raw = raw;
  out.value = std::clamp(raw * rescale_factor(config.q), 0.0, 1.0);
  out.epsilon_used = eps;
  return out;
}

double parametrized_index_up(double q, double gamma) {
  if (!(q > 0.0)) throw ConfigError("q must be positive");
  return std::pow(std::max(1.0 - std::pow(gamma, 1.0 / q), 0.0), q);
}

double rescale_factor(double q) { return 1.0 / parametrized_index_up(q, 0.1); }

std::vector<double> ring_relative_errors(long n, int p, const PolarGrid& grid, double h) {
  if (n <= 0) throw ConfigError("sample size must be positive");
  const double radius = grid.radius();
  const double n_slice = expected_slice_count(n, p, h, radius);
  const auto& edges = grid.radial_edges();
  std::vector<double> out(static_cast<std::size_t>(grid.k_r()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double expected = n_slice / grid.k_theta() * bin_fraction(edges[i], edges[i + 1], 2, radius);
    out[i] = expected > 0.0 ? 1.0 / std::sqrt(expected) : INFINITY;
  }
  return out;
}

double epsilon_auto(long n, int p, const PolarGrid& grid, double h) {
  const std::vector<double> errors = ring_relative_errors(n, p, grid, h);
  // innermost ring: smallest expected count among equal-width rings
  const double innermost = errors.front();
  if (!(innermost <= 1.0)) throw NumericError("sample too small for resolution");
  return innermost / grid.size();
}

double resolve_epsilon(const IndexConfig& config, long n, int p) {
  if (config.epsilon) return *config.epsilon;
  return epsilon_auto(n, p, config.grid, config.h);
}

double noise_expectation_q1(double n_sigma, long k, long n, double gamma) {
  return std::exp(-n_sigma * n_sigma / 4.0) *
         std::sqrt(static_cast<double>(k) / (gamma * static_cast<double>(n)));
}

IndexValue rotation_averaged_index(const SliceAssignment& assignment, const IndexConfig& config) {
  config.validate();
  IndexConfig resolved = config;
  resolved.epsilon = resolve_epsilon(config, static_cast<long>(assignment.inside.size()),
                                     assignment.frame.dim());

  std::vector<unsigned char> outside(assignment.inside.size());
  std::transform(assignment.inside.begin(), assignment.inside.end(), outside.begin(),
                 [](unsigned char f) { return static_cast<unsigned char>(f ? 0 : 1); });

  const int p = assignment.frame.dim();
  const int m = config.rotation_average;
  const double window = 2.0 * std::numbers::pi / config.grid.k_theta();
  IndexValue total;
  Points2 rotated(assignment.projected.rows(), 2);
  for (int j = 0; j < m; ++j) {
    const Points2* pts = &assignment.projected;
    if (j > 0) {
      const double phi = j * window / m;
      Eigen::Matrix2d rot;
      // right-multiplication rotates row vectors counter-clockwise by phi
      rot << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
      rotated.noalias() = assignment.projected * rot;
      pts = &rotated;
    }
    const BinnedCounts in = polar_bin(*pts, assignment.inside, config.grid);
    const BinnedCounts out = polar_bin(*pts, outside, config.grid);
    if (in.total == 0 || out.total == 0) throw DegenerateSlice(in.total, out.total);
    const IndexValue v = index_eval(relative_reweighted(in, 2, config.grid),
                                    relative_reweighted(out, p, config.grid), resolved);
    total.raw += v.raw;
    if (j == 0) {
      total.inside_count = in.total;
      total.outside_count = out.total;
    }
  }
  total.raw /= m;
  total.value = std::clamp(total.raw * rescale_factor(config.q), 0.0, 1.0);
  total.epsilon_used = *resolved.epsilon;
  return total;
}

}  // namespace secpur
