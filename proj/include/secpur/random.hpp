#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace secpur {

using Rng = std::mt19937_64;

/// Derives an independent sub-seed for stream `stream` of a base seed (splitmix64 mixing).
/// Used wherever a run fans out into numbered sub-streams (candidates, traces, shards).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

Rng make_rng(std::uint64_t seed);

/// Standard-normal matrix of the given shape.
Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Uniform point in the p-ball of radius R: Gaussian direction times R * U^(1/p).
Eigen::VectorXd uniform_in_ball(Rng& rng, int p, double radius);

}  // namespace secpur
