#include "secpur/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "secpur/error.hpp"

namespace secpur {

Dataset make_dataset(Eigen::MatrixXd points, double radius, std::vector<std::string> labels,
                     std::vector<std::string> columns) {
  if (points.rows() < 1) throw InputError("dataset has no points");
  if (points.cols() < 3) throw InputError("dataset dimension must be at least 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("radius bound must be positive");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != points.rows()) {
    throw InputError("label count does not match point count");
  }
  if (!columns.empty() && static_cast<Eigen::Index>(columns.size()) != points.cols()) {
    throw InputError("column name count does not match dimension");
  }
  const double limit = radius * (1.0 + 1e-12);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double norm = points.row(i).norm();
    if (!std::isfinite(norm)) throw InputError("non-finite point at row " + std::to_string(i));
    if (norm > limit) {
      throw InputError("point " + std::to_string(i) + " lies outside the radius bound");
    }
  }
  return Dataset{std::move(points), radius, std::move(columns), std::move(labels)};
}

long SliceAssignment::inside_count() const {
  return static_cast<long>(std::count(inside.begin(), inside.end(), 1));
}

Points2 project(const Dataset& data, const Frame& frame) {
  if (data.p() != frame.dim()) {
    throw ConfigError("dataset dimension " + std::to_string(data.p()) +
                      " does not match frame dimension " + std::to_string(frame.dim()));
  }
  return data.points * frame.basis();
}

SliceAssignment slice(const Dataset& data, const Frame& frame, double h) {
  if (!(h > 0.0)) throw ConfigError("slice height must be positive");
  Points2 y = project(data, frame);
  const Eigen::Index n = y.rows();
  Eigen::VectorXd dist(n);
  std::vector<unsigned char> inside(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d2 = data.points.row(i).squaredNorm() - y.row(i).squaredNorm();
    dist(i) = d2 > 0.0 ? std::sqrt(d2) : 0.0;
    inside[static_cast<std::size_t>(i)] = dist(i) < h ? 1 : 0;
  }
  return SliceAssignment{std::move(y), std::move(dist), std::move(inside), h, frame};
}

double expected_slice_count(long n, int p, double h, double radius) {
  if (!(h > 0.0 && h <= radius)) throw ConfigError("expected_slice_count needs 0 < h <= R");
  if (p < 2) throw ConfigError("expected_slice_count needs p >= 2");
  const double x = h / radius;
  return 0.5 * static_cast<double>(n) * std::pow(x, p - 2) * (p - (p - 2) * x * x);
}

SliceAssignment center_projection(SliceAssignment assignment) {
  if (assignment.projected.rows() == 0) throw ConfigError("cannot center an empty projection");
  // pairwise summation keeps the mean independent of any internal sharding
  const auto pairwise = [&](int col) {
    const auto& y = assignment.projected;
    auto rec = [&](auto&& self, Eigen::Index lo, Eigen::Index hi) -> double {
      if (hi - lo <= 64) {
        double s = 0.0;
        for (Eigen::Index i = lo; i < hi; ++i) s += y(i, col);
        return s;
      }
      const Eigen::Index mid = lo + (hi - lo) / 2;
      return self(self, lo, mid) + self(self, mid, hi);
    };
    return rec(rec, 0, y.rows()) / static_cast<double>(y.rows());
  };
  const double m0 = pairwise(0);
  const double m1 = pairwise(1);
  assignment.projected.col(0).array() -= m0;
  assignment.projected.col(1).array() -= m1;
  return assignment;
}

}  // namespace secpur
