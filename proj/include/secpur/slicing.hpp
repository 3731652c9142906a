#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "secpur/geometry.hpp"

namespace secpur {

using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Data matrix (n x p) contained in a ball of radius `radius` around the origin.
struct Dataset {
  Eigen::MatrixXd points;
  double radius = 1.0;
  std::vector<std::string> columns;  // optional variable names, size p when present
  std::vector<std::string> labels;   // optional per-point class tags, size n when present

  int n() const noexcept { return static_cast<int>(points.rows()); }
  int p() const noexcept { return static_cast<int>(points.cols()); }
};

/// Validates the Dataset invariants (n >= 1, p >= 3, norms within radius, label and
/// column sizes) and returns the dataset. Throws InputError.
Dataset make_dataset(Eigen::MatrixXd points, double radius, std::vector<std::string> labels = {},
                     std::vector<std::string> columns = {});

/// Points split by a slab of half-width h around a plane through the origin.
struct SliceAssignment {
  Points2 projected;                  // Y = X A
  Eigen::VectorXd distances;          // orthogonal distance to the plane
  std::vector<unsigned char> inside;  // distances[i] < h
  double h = 0.0;
  Frame frame;

  long inside_count() const;
  long outside_count() const { return static_cast<long>(inside.size()) - inside_count(); }
};

Points2 project(const Dataset& data, const Frame& frame);

/// Throws ConfigError for h <= 0 or a dimension mismatch.
SliceAssignment slice(const Dataset& data, const Frame& frame, double h);

/// Expected number of points of an N-sample from the uniform p-ball that fall inside a
/// central slice of half-width h.
double expected_slice_count(long n, int p, double h, double radius);

/// Shifts the projected coordinates to zero mean. Distances and flags are untouched.
SliceAssignment center_projection(SliceAssignment assignment);

}  // namespace secpur
