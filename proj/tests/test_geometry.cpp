#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "secpur/error.hpp"
#include "secpur/geometry.hpp"
#include "secpur/random.hpp"

using namespace secpur;

namespace {

double ortho_error(const Frame& f) {
  return (f.basis().transpose() * f.basis() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
}

// principal angles straight from the singular values of A^T B
std::array<double, 2> svd_angles(const Frame& a, const Frame& b) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(a.basis().transpose() * b.basis());
  const auto s = svd.singularValues();
  std::array<double, 2> out{std::acos(std::clamp(s(1), -1.0, 1.0)), std::acos(std::clamp(s(0), -1.0, 1.0))};
  return out;  // descending: smallest singular value gives the largest angle
}

double octant_p_value(const std::array<long, 8>& counts, long n) {
  double chi2 = 0.0;
  const double e = n / 8.0;
  for (long c : counts) chi2 += (c - e) * (c - e) / e;
  boost::math::chi_squared dist(7);
  return 1.0 - boost::math::cdf(dist, chi2);
}

int octant(const Eigen::Vector3d& v) { return (v(0) > 0) | ((v(1) > 0) << 1) | ((v(2) > 0) << 2); }

}  // namespace

TEST_CASE("orthonormalize keeps orthonormal input and removes scaling") {
  Eigen::MatrixXd m(3, 2);
  m << 1, 0, 0, 1, 0, 0;
  CHECK((orthonormalize(m).basis() - m).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::MatrixXd scaled(3, 2);
  scaled << 2, 0, 0, 3, 0, 0;
  CHECK((orthonormalize(scaled).basis() - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("orthonormalize gives an identity Gram matrix and preserves span") {
  Eigen::MatrixXd m(3, 2);
  m << 1, 0, 1, 1, 0, 1;
  const Frame f = orthonormalize(m);
  CHECK(ortho_error(f) < 1e-12);
  // first column keeps its direction
  CHECK((f.column(0) - m.col(0).normalized()).norm() < 1e-14);
  // the second input column lies in the span
  const Eigen::VectorXd resid = m.col(1) - f.basis() * (f.basis().transpose() * m.col(1));
  CHECK(resid.norm() < 1e-14);
}

TEST_CASE("orthonormalize rejects rank-deficient input") {
  Eigen::MatrixXd m(4, 2);
  m << 1, 2, 1, 2, 0, 0, 0, 0;
  CHECK_THROWS_AS(orthonormalize(m), NumericError);
  CHECK_THROWS_WITH(orthonormalize(Eigen::MatrixXd::Zero(4, 2)), "degenerate basis");
}

TEST_CASE("frames need p >= 3 and orthonormal columns") {
  CHECK_THROWS_AS(Frame::from_orthonormal(Eigen::MatrixXd::Identity(2, 2)), ConfigError);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 + 1e-8;
  CHECK_THROWS_AS(Frame::from_orthonormal(m), ConfigError);
  CHECK_THROWS_AS(random_frame(2, 1), ConfigError);
}

TEST_CASE("random_frame is deterministic and orthonormal") {
  const Frame a = random_frame(4, 7), b = random_frame(4, 7);
  CHECK(a.basis() == b.basis());
  for (std::uint64_t s = 0; s < 50; ++s) CHECK(ortho_error(random_frame(4 + static_cast<int>(s % 5), s)) < 1e-10);
  CHECK(plane_distance(random_frame(5, 1), random_frame(5, 2)) > 1e-3);
}

TEST_CASE("random_frame first column is uniform on the sphere") {
  const long n = 10000;
  std::array<long, 8> counts{}, rotated{};
  // a fixed rotation; the rotated outputs must be just as uniform
  const Eigen::Matrix3d q = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  for (long i = 0; i < n; ++i) {
    const Eigen::Vector3d v = random_frame(3, static_cast<std::uint64_t>(i)).column(0);
    ++counts[static_cast<std::size_t>(octant(v))];
    ++rotated[static_cast<std::size_t>(octant(q * v))];
  }
  CHECK(octant_p_value(counts, n) > 0.001);
  CHECK(octant_p_value(rotated, n) > 0.001);
}

TEST_CASE("principal angles: identical, shared direction, random pair") {
  const Frame a = random_frame(5, 3);
  const auto same = principal_angles(a, a);
  CHECK(same[0] < 1e-8);
  CHECK(same[1] < 1e-8);

  // share e1, second directions e2 vs (e2 + e3)/sqrt(2)
  Eigen::MatrixXd mb = Eigen::MatrixXd::Zero(4, 2);
  mb(0, 0) = 1;
  mb(1, 1) = mb(2, 1) = std::sqrt(0.5);
  const auto one = principal_angles(coordinate_frame(4, 0, 1), Frame::from_orthonormal(mb));
  CHECK(one[0] == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
  CHECK(one[1] < 1e-8);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const Frame x = random_frame(6, 100 + s), y = random_frame(6, 200 + s);
    const auto got = principal_angles(x, y);
    const auto want = svd_angles(x, y);
    CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-9));
    CHECK(got[1] == doctest::Approx(want[1]).epsilon(1e-9));
    CHECK(got[0] >= got[1]);
  }
}

TEST_CASE("geodesic_between is symmetric in its angles and checks dimensions") {
  const Frame a = random_frame(6, 1), b = random_frame(6, 2);
  const auto ab = geodesic_between(a, b).angles();
  const auto ba = geodesic_between(b, a).angles();
  CHECK(ab[0] == doctest::Approx(ba[0]).epsilon(1e-12));
  CHECK(ab[1] == doctest::Approx(ba[1]).epsilon(1e-12));
  CHECK_THROWS_AS(geodesic_between(a, random_frame(5, 2)), ConfigError);
}

TEST_CASE("interpolate: endpoints, midpoint, additivity, continuity") {
  const Frame a = random_frame(6, 11), b = random_frame(6, 12);
  const GeodesicPath path = geodesic_between(a, b);
  CHECK(plane_distance(interpolate(path, 0.0), a) < 1e-8);
  CHECK(plane_distance(interpolate(path, 1.0), b) < 1e-8);

  const Frame mid = interpolate(path, 0.5);
  const auto da = principal_angles(mid, a), db = principal_angles(mid, b);
  CHECK(std::abs(da[0] - db[0]) < 1e-8);
  CHECK(std::abs(da[1] - db[1]) < 1e-8);

  const double total = path.angles()[0] + path.angles()[1];
  for (double t : {0.25, 0.75}) {
    const auto d = principal_angles(a, interpolate(path, t));
    CHECK(d[0] + d[1] == doctest::Approx(t * total).epsilon(1e-9));
  }

  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    const Frame f = interpolate(path, t);
    CHECK(ortho_error(f) < 1e-10);
    const double d = plane_distance(a, f);
    CHECK(d >= prev - 1e-12);
    prev = d;
    if (i < 100) CHECK(plane_distance(f, interpolate(path, t + 1e-4)) < 1e-3);
  }
  CHECK_THROWS_AS(interpolate(path, -0.01), ConfigError);
  CHECK_THROWS_AS(interpolate(path, 1.01), ConfigError);
}

TEST_CASE("identity path stays in the start plane") {
  const Frame a = random_frame(4, 5);
  const GeodesicPath path = geodesic_between(a, a);
  for (double t : {0.0, 0.3, 1.0}) CHECK(plane_distance(interpolate(path, t), a) < 1e-8);
}

TEST_CASE("step_from: zero, symmetry, distance, determinism") {
  const Frame o = random_frame(5, 21);
  CHECK(plane_distance(step_from(o, 4, 0.0), o) < 1e-8);

  const double alpha = 0.3;
  const Frame plus = step_from(o, 4, alpha), minus = step_from(o, 4, -alpha);
  CHECK(plane_distance(o, plus) == doctest::Approx(alpha).epsilon(1e-8));
  CHECK(plane_distance(o, minus) == doctest::Approx(alpha).epsilon(1e-8));
  // the origin sits at the midpoint of the geodesic between the two
  CHECK(plane_distance(interpolate(geodesic_between(minus, plus), 0.5), o) < 1e-8);

  CHECK(step_from(o, 4, alpha).basis() == plus.basis());
  CHECK(plane_distance(step_from(o, 5, alpha), plus) > 1e-6);
  CHECK_THROWS_AS(step_from(o, 4, 2.0), ConfigError);
}

TEST_CASE("coordinate_frame spans the requested axes") {
  const Frame f = coordinate_frame(5, 1, 3);
  CHECK(f.basis()(1, 0) == 1.0);
  CHECK(f.basis()(3, 1) == 1.0);
  CHECK(f.basis().cwiseAbs().sum() == 2.0);
  CHECK_THROWS_AS(coordinate_frame(5, 2, 2), ConfigError);
  CHECK_THROWS_AS(coordinate_frame(5, 0, 5), ConfigError);
}
