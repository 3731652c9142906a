#include <cmath>

#include "doctest.h"
#include "secpur/datagen.hpp"
#include "secpur/error.hpp"
#include "secpur/random.hpp"
#include "secpur/slicing.hpp"

using namespace secpur;

TEST_CASE("make_dataset enforces the ball and dimension invariants") {
  CHECK_THROWS_AS(make_dataset(Eigen::MatrixXd::Zero(3, 2), 1.0), InputError);
  CHECK_THROWS_AS(make_dataset(Eigen::MatrixXd::Zero(0, 3), 1.0), InputError);
  Eigen::MatrixXd far = Eigen::MatrixXd::Zero(2, 3);
  far(1, 0) = 1.5;
  CHECK_THROWS_AS(make_dataset(far, 1.0), InputError);
  CHECK_THROWS_AS(make_dataset(Eigen::MatrixXd::Zero(2, 3), 1.0, {"a"}), InputError);
  CHECK(make_dataset(far, 1.5).n() == 2);
}

TEST_CASE("project onto coordinate axes returns columns") {
  const Dataset d = sample_ball(50, 4, 1.0, 1);
  const Points2 y = project(d, coordinate_frame(4, 0, 1));
  CHECK((y.col(0) - d.points.col(0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((y.col(1) - d.points.col(1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("project matches explicit dot products and contracts norms") {
  const Dataset d = sample_ball(40, 5, 2.0, 2);
  const Frame f = random_frame(5, 3);
  const Points2 y = project(d, f);
  for (int i = 0; i < d.n(); ++i) {
    for (int j = 0; j < 2; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 5; ++k) dot += d.points(i, k) * f.basis()(k, j);
      CHECK(y(i, j) == doctest::Approx(dot).epsilon(1e-14));
    }
    CHECK(y.row(i).norm() <= d.points.row(i).norm() + 1e-14);
  }
  CHECK_THROWS_AS(project(d, random_frame(4, 1)), ConfigError);
}

TEST_CASE("slice invariants") {
  const Dataset d = sample_ball(500, 6, 1.0, 4);
  const Frame f = random_frame(6, 5);
  const SliceAssignment sa = slice(d, f, 0.4);
  for (int i = 0; i < d.n(); ++i) {
    CHECK(static_cast<bool>(sa.inside[static_cast<std::size_t>(i)]) == (sa.distances(i) < 0.4));
    CHECK(sa.distances(i) >= 0.0);
    const double lhs = sa.distances(i) * sa.distances(i) + sa.projected.row(i).squaredNorm();
    CHECK(lhs == doctest::Approx(d.points.row(i).squaredNorm()).epsilon(1e-8));
  }
  CHECK(sa.inside_count() + sa.outside_count() == d.n());
  CHECK_THROWS_AS(slice(d, f, 0.0), ConfigError);
  CHECK_THROWS_AS(slice(d, f, -1.0), ConfigError);
}

TEST_CASE("slice: whole-ball slab and in-plane point") {
  const Dataset d = sample_ball(300, 4, 1.0, 6);
  CHECK(slice(d, random_frame(4, 1), 1.0 + 1e-9).inside_count() == 300);

  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(2, 4);
  pts.row(0) << 0.3, -0.2, 0.0, 0.0;
  pts.row(1) << 0.0, 0.0, 0.5, 0.0;
  const SliceAssignment sa = slice(make_dataset(pts, 1.0), coordinate_frame(4, 0, 1), 0.1);
  CHECK(sa.distances(0) == 0.0);
  CHECK(sa.inside[0]);
  CHECK(sa.distances(1) == doctest::Approx(0.5));
  CHECK_FALSE(sa.inside[1]);
}

TEST_CASE("in-plane rotation of the frame leaves the split unchanged") {
  const Dataset d = sample_ball(400, 5, 1.0, 7);
  const Frame f = random_frame(5, 8);
  Eigen::Matrix2d rot;
  const double t = 0.83;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const Frame g = Frame::from_orthonormal(f.basis() * rot);
  const SliceAssignment a = slice(d, f, 0.3), b = slice(d, g, 0.3);
  CHECK(a.inside == b.inside);
  CHECK((a.distances - b.distances).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((a.projected * rot - b.projected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("expected_slice_count closed form") {
  CHECK(expected_slice_count(1000, 5, 1.0, 1.0) == doctest::Approx(1000.0));
  CHECK(expected_slice_count(1000, 2, 0.3, 1.0) == doctest::Approx(1000.0));
  CHECK(expected_slice_count(10000, 4, 0.25, 1.0) == doctest::Approx(1210.9375).epsilon(1e-14));
  CHECK(expected_slice_count(10000, 4, 0.5, 2.0) == doctest::Approx(1210.9375).epsilon(1e-14));
  CHECK_THROWS_AS(expected_slice_count(100, 4, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(expected_slice_count(100, 4, 1.5, 1.0), ConfigError);
}

TEST_CASE("inside counts agree with the slice-count formula") {
  const long n = 100000;
  const Dataset d = sample_ball(n, 4, 1.0, 9);
  const SliceAssignment sa = slice(d, random_frame(4, 10), 0.1);
  const double e = expected_slice_count(n, 4, 0.1, 1.0);
  const double sigma = std::sqrt(e * (1.0 - e / n));
  CHECK(std::abs(sa.inside_count() - e) < 3.0 * sigma);
}

TEST_CASE("center_projection") {
  const Dataset d = sample_ball(200, 4, 1.0, 11);
  SliceAssignment sa = slice(d, random_frame(4, 12), 0.5);
  const SliceAssignment c = center_projection(sa);
  CHECK(std::abs(c.projected.col(0).mean()) < 1e-10);
  CHECK(std::abs(c.projected.col(1).mean()) < 1e-10);
  CHECK(c.inside == sa.inside);
  CHECK(c.distances == sa.distances);

  // centering twice is a no-op
  CHECK((center_projection(c).projected - c.projected).cwiseAbs().maxCoeff() < 1e-12);

  // a translation is undone
  SliceAssignment shifted = c;
  shifted.projected.col(0).array() += 3.0;
  shifted.projected.col(1).array() -= 1.0;
  CHECK((center_projection(shifted).projected - c.projected).cwiseAbs().maxCoeff() < 1e-12);
}
