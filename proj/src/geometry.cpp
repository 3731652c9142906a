#include "secpur/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "secpur/error.hpp"
#include "secpur/random.hpp"

namespace secpur {

namespace {

// Principal decomposition of two frames: a_principal = A U, b_principal = B V with
// A^T B = U diag(cos) V^T; columns reordered so the largest angle comes first.
struct PrincipalPair {
  Eigen::Matrix2d u;
  Eigen::Matrix2d v;
  std::array<double, 2> cosines{};
  std::array<double, 2> angles{};
  Eigen::MatrixXd residual;  // B v_i - cos_i A u_i, norm sin_i
};

PrincipalPair decompose(const Frame& a, const Frame& b) {
  if (a.dim() != b.dim()) {
    throw ConfigError("frame dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
  const Eigen::Matrix2d cross = a.basis().transpose() * b.basis();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);

  PrincipalPair out;
  // JacobiSVD sorts singular values descending, i.e. angles ascending; flip the order.
  out.u.col(0) = svd.matrixU().col(1);
  out.u.col(1) = svd.matrixU().col(0);
  out.v.col(0) = svd.matrixV().col(1);
  out.v.col(1) = svd.matrixV().col(0);
  out.cosines = {std::clamp(svd.singularValues()(1), 0.0, 1.0),
                 std::clamp(svd.singularValues()(0), 0.0, 1.0)};

  const Eigen::MatrixXd a_principal = a.basis() * out.u;
  const Eigen::MatrixXd b_principal = b.basis() * out.v;
  out.residual = b_principal;
  for (int i = 0; i < 2; ++i) {
    out.residual.col(i) -= out.cosines[i] * a_principal.col(i);
    out.angles[i] = std::atan2(out.residual.col(i).norm(), out.cosines[i]);
  }
  if (out.angles[0] < out.angles[1]) {
    // degenerate singular values can leave the pair out of order after clamping
    std::swap(out.angles[0], out.angles[1]);
    std::swap(out.cosines[0], out.cosines[1]);
    out.u.col(0).swap(out.u.col(1));
    out.v.col(0).swap(out.v.col(1));
    out.residual.col(0).swap(out.residual.col(1));
  }
  return out;
}

}  // namespace

Frame Frame::from_orthonormal(Eigen::MatrixXd basis, double tolerance) {
  if (basis.cols() != 2) throw ConfigError("frame basis must have exactly 2 columns");
  if (basis.rows() < 3) throw ConfigError("frame dimension must be at least 3");
  const Eigen::Matrix2d gram = basis.transpose() * basis;
  const double err = (gram - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= tolerance)) {
    throw ConfigError("frame basis is not orthonormal (deviation " + std::to_string(err) + ")");
  }
  return Frame(std::move(basis));
}

Frame orthonormalize(const Eigen::MatrixXd& m) {
  if (m.cols() != 2) throw ConfigError("orthonormalize expects a p x 2 matrix");
  if (m.rows() < 3) throw ConfigError("frame dimension must be at least 3");
  Eigen::VectorXd e0 = m.col(0);
  const double n0 = e0.norm();
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw NumericError("degenerate basis");
  e0 /= n0;

  Eigen::VectorXd e1 = m.col(1);
  const double n1 = e1.norm();
  if (!(n1 > 0.0) || !std::isfinite(n1)) throw NumericError("degenerate basis");
  // two passes of modified Gram-Schmidt
  for (int pass = 0; pass < 2; ++pass) e1 -= e0.dot(e1) * e0;
  const double r1 = e1.norm();
  if (r1 <= 1e-10 * n1) throw NumericError("degenerate basis");
  e1 /= r1;

  Eigen::MatrixXd basis(m.rows(), 2);
  basis.col(0) = e0;
  basis.col(1) = e1;
  return Frame::from_orthonormal(std::move(basis));
}

Frame random_frame(int p, std::uint64_t seed) {
  if (p < 3) throw ConfigError("random_frame requires p >= 3");
  Rng rng = make_rng(seed);
  for (;;) {
    const Eigen::MatrixXd g = gaussian_matrix(rng, p, 2);
    try {
      return orthonormalize(g);
    } catch (const NumericError&) {
      // probability zero; draw again from the same stream
    }
  }
}

Frame coordinate_frame(int p, int i, int j) {
  if (i < 0 || j < 0 || i >= p || j >= p || i == j) {
    throw ConfigError("invalid coordinate axes for frame");
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(p, 2);
  basis(i, 0) = 1.0;
  basis(j, 1) = 1.0;
  return Frame::from_orthonormal(std::move(basis));
}

std::array<double, 2> principal_angles(const Frame& a, const Frame& b) {
  return decompose(a, b).angles;
}

double plane_distance(const Frame& a, const Frame& b) { return principal_angles(a, b)[0]; }

GeodesicPath geodesic_between(const Frame& a, const Frame& b) {
  PrincipalPair pp = decompose(a, b);
  GeodesicPath path(a, b);
  path.angles_ = pp.angles;
  path.principal_ = a.basis() * pp.u;
  path.directions_ = Eigen::MatrixXd::Zero(a.dim(), 2);
  for (int i = 0; i < 2; ++i) {
    Eigen::VectorXd z = pp.residual.col(i);
    if (z.norm() <= 1e-14) continue;
    // re-orthogonalize against everything already fixed to keep frames exact
    for (int pass = 0; pass < 2; ++pass) {
      z -= path.principal_ * (path.principal_.transpose() * z);
      if (i == 1) z -= path.directions_.col(0).dot(z) * path.directions_.col(0);
    }
    const double nz = z.norm();
    if (nz <= 1e-14) continue;
    path.directions_.col(i) = z / nz;
  }
  path.align_ = pp.u.transpose();
  path.end_ = path.evaluate(1.0);
  return path;
}

Frame GeodesicPath::evaluate(double s) const {
  Eigen::MatrixXd g(principal_.rows(), 2);
  for (int i = 0; i < 2; ++i) {
    const double phi = s * angles_[i];
    g.col(i) = std::cos(phi) * principal_.col(i) + std::sin(phi) * directions_.col(i);
  }
  return Frame::from_orthonormal(g * align_);
}

Frame interpolate(const GeodesicPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("interpolation parameter outside [0,1]");
  if (t == 0.0) return path.start();
  return path.evaluate(t);
}

GeodesicRay::GeodesicRay(GeodesicPath path) : path_(std::move(path)) {
  if (!(path_.angles()[0] > 0.0)) throw NumericError("geodesic ray needs a nonzero direction");
}

Frame GeodesicRay::at(double alpha) const {
  if (alpha == 0.0) return path_.start();
  return path_.evaluate(alpha / path_.angles()[0]);
}

GeodesicRay random_ray(const Frame& origin, std::uint64_t direction_seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Frame target = random_frame(origin.dim(), derive_seed(direction_seed, attempt));
    GeodesicPath path = geodesic_between(origin, target);
    if (path.angles()[0] > 1e-6) return GeodesicRay(std::move(path));
  }
}

Frame step_from(const Frame& origin, std::uint64_t direction_seed, double alpha) {
  if (!(std::abs(alpha) <= std::numbers::pi / 2 + 1e-12)) {
    throw ConfigError("step angle must lie in [-pi/2, pi/2]");
  }
  return random_ray(origin, direction_seed).at(alpha);
}

}  // namespace secpur
