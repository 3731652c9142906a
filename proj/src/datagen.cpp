#include "secpur/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "secpur/error.hpp"
#include "secpur/random.hpp"

namespace secpur {

namespace {

std::vector<std::string> default_columns(int p) {
  std::vector<std::string> names;
  for (int j = 1; j <= p; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

void validate_cavity(const CavitySpec& c, int p, double radius) {
  if (c.center.size() != p || c.semi_axes.size() != p) {
    throw ConfigError("cavity dimension does not match p = " + std::to_string(p));
  }
  if (!(c.semi_axes.minCoeff() > 0.0)) throw ConfigError("cavity semi-axes must be positive");
  if (c.center.norm() + c.semi_axes.maxCoeff() > radius * (1.0 + 1e-12)) {
    throw ConfigError("cavity region is not contained in the ball");
  }
  if (c.kind == CavitySpec::Kind::hole && !(c.density_factor >= 0.0 && c.density_factor < 1.0)) {
    throw ConfigError("hole density factor must lie in [0, 1)");
  }
  if (c.kind == CavitySpec::Kind::grain && !(c.density_factor > 1.0)) {
    throw ConfigError("grain density factor must exceed 1");
  }
}

}  // namespace

bool CavitySpec::contains(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double u = (x(j) - center(j)) / semi_axes(j);
    s += u * u;
  }
  return s <= 1.0;
}

double CavitySpec::volume_fraction(double radius) const {
  double f = 1.0;
  for (Eigen::Index j = 0; j < semi_axes.size(); ++j) f *= semi_axes(j) / radius;
  return f;
}

CavitySpec centered_cavity(int p, double wide, double narrow, CavitySpec::Kind kind, double density_factor) {
  CavitySpec c;
  c.kind = kind;
  c.center = Eigen::VectorXd::Zero(p);
  c.semi_axes = Eigen::VectorXd::Constant(p, narrow);
  c.semi_axes(0) = wide;
  c.semi_axes(1) = wide;
  c.density_factor = density_factor;
  return c;
}

Dataset sample_ball(long n, int p, double radius, std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample size must be at least 1");
  if (p < 3) throw ConfigError("dimension must be at least 3");
  Rng rng = make_rng(seed);
  Eigen::MatrixXd pts(n, p);
  for (long i = 0; i < n; ++i) pts.row(i) = uniform_in_ball(rng, p, radius).transpose();
  return make_dataset(std::move(pts), radius, {}, default_columns(p));
}

CavitySample sample_with_cavities(long n, int p, double radius, const std::vector<CavitySpec>& cavities,
                                  std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample size must be at least 1");
  if (p < 3) throw ConfigError("dimension must be at least 3");
  double removed = 0.0;
  for (const auto& c : cavities) {
    validate_cavity(c, p, radius);
    if (c.kind == CavitySpec::Kind::hole) removed += (1.0 - c.density_factor) * c.volume_fraction(radius);
  }
  if (removed >= 1.0) throw ConfigError("nothing to sample");

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Eigen::RowVectorXd> rows;
  rows.reserve(static_cast<std::size_t>(n));
  long rejected = 0;
  while (static_cast<long>(rows.size()) < n) {
    const Eigen::RowVectorXd x = uniform_in_ball(rng, p, radius).transpose();
    bool keep = true;
    for (const auto& c : cavities) {
      if (c.kind != CavitySpec::Kind::hole || !c.contains(x)) continue;
      if (c.density_factor == 0.0 || uniform(rng) >= c.density_factor) {
        keep = false;
        break;
      }
    }
    if (keep) {
      rows.push_back(x);
    } else {
      ++rejected;
    }
  }

  long grain_points = 0;
  for (const auto& c : cavities) {
    if (c.kind != CavitySpec::Kind::grain) continue;
    const long extra = std::lround((c.density_factor - 1.0) * static_cast<double>(n) * c.volume_fraction(radius));
    for (long i = 0; i < extra; ++i) {
      const Eigen::VectorXd u = uniform_in_ball(rng, p, 1.0);
      rows.push_back((c.center + c.semi_axes.cwiseProduct(u)).transpose());
    }
    grain_points += extra;
  }

  Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), p);
  for (std::size_t i = 0; i < rows.size(); ++i) pts.row(static_cast<Eigen::Index>(i)) = rows[i];

  // axes ordered by semi-axis length, widest first; ties keep the lower axis first
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  if (!cavities.empty()) {
    const auto& axes = cavities.front().semi_axes;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return axes(a) > axes(b); });
  }
  const auto plane = [p](int a, int b) { return coordinate_frame(p, std::min(a, b), std::max(a, b)); };
  const auto last = static_cast<std::size_t>(p);
  return CavitySample{make_dataset(std::move(pts), radius, {}, default_columns(p)),
                      plane(order[0], order[1]), plane(order[last - 2], order[last - 1]), rejected,
                      grain_points};
}

ThdmMasses thdm_masses(const ThdmParams& params, double v) {
  if (!(std::abs(params.cos_beta_alpha) <= 1.0)) throw ConfigError("|cos(beta - alpha)| must not exceed 1");
  if (!(params.tan_beta > 0.0) || !std::isfinite(params.tan_beta)) throw ConfigError("tan(beta) must be positive");
  const auto& l = params.lambda;
  const double beta = std::atan(params.tan_beta);
  const double alpha = beta - std::acos(params.cos_beta_alpha);
  const double sin_ba = std::sin(beta - alpha);
  const double cos_ba = std::cos(beta - alpha);
  const double sin_2ba = std::sin(2.0 * (beta - alpha));
  if (std::abs(sin_ba) < 1e-9 || std::abs(sin_2ba) < 1e-9) throw NumericError("singular angle configuration");

  const double cb = std::cos(beta), sb = std::sin(beta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double s2b = std::sin(2.0 * beta);
  const double s2a = std::sin(2.0 * alpha);
  const double c2a = std::cos(2.0 * alpha);
  const double l345 = l[2] + l[3] + l[4];
  const double l45 = l[3] + l[4];
  const double v2 = v * v;

  ThdmMasses m;
  m.m2_h = v2 / sin_ba *
           (-l[0] * cb * cb * cb * sa + l[1] * sb * sb * sb * ca + 0.5 * l345 * std::cos(beta + alpha) * s2b);
  m.m2_H = v2 / cos_ba *
           (l[0] * cb * cb * cb * ca + l[1] * sb * sb * sb * sa + 0.5 * l345 * std::sin(beta + alpha) * s2b);
  m.m2_Hpm = v2 / sin_2ba *
             (-s2a * (l[0] * cb * cb - l[1] * sb * sb) + l345 * s2b * c2a - 0.5 * l45 * sin_2ba);
  m.m2_A = v2 / sin_2ba * (s2a * (-l[0] * cb * cb + l[1] * sb * sb) + l345 * s2b * c2a - l[4] * sin_2ba);
  return m;
}

ThdmParams ThdmRanges::to_params(const Eigen::Ref<const Eigen::VectorXd>& unit) const {
  if (unit.size() != 7) throw ConfigError("THDM parameter vector must have 7 entries");
  const auto map = [](double u, double lo, double hi) { return lo + 0.5 * (u + 1.0) * (hi - lo); };
  ThdmParams out;
  for (int i = 0; i < 5; ++i) out.lambda[static_cast<std::size_t>(i)] = map(unit(i), lambda_min, lambda_max);
  out.tan_beta = map(unit(5), tan_beta_min, tan_beta_max);
  out.cos_beta_alpha = map(unit(6), cos_beta_alpha_min, cos_beta_alpha_max);
  return out;
}

ThdmScan thdm_scan(long n, double radius, std::uint64_t seed, const ThdmRanges& ranges) {
  if (n < 1) throw ConfigError("sample size must be at least 1");
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  Rng rng = make_rng(seed);
  ThdmScan scan{{}, {}, 0};
  scan.points.reserve(static_cast<std::size_t>(n));
  while (static_cast<long>(scan.points.size()) < n) {
    ThdmPoint pt;
    pt.standardized = uniform_in_ball(rng, 7, radius);
    pt.params = ranges.to_params(pt.standardized / radius);
    try {
      pt.masses = thdm_masses(pt.params);
    } catch (const NumericError&) {
      ++scan.singular_rejected;
      continue;
    }
    pt.physical = pt.masses.physical();
    scan.points.push_back(std::move(pt));
  }
  const auto n_phys = std::count_if(scan.points.begin(), scan.points.end(), [](const ThdmPoint& p) { return p.physical; });
  if (n_phys == 0) throw NumericError("THDM scan produced no physical points");
  Eigen::MatrixXd pts(n_phys, 7);
  Eigen::Index row = 0;
  for (const auto& pt : scan.points) {
    if (pt.physical) pts.row(row++) = pt.standardized.transpose();
  }
  scan.physical = make_dataset(std::move(pts), radius, {}, thdm_columns());
  return scan;
}

Dataset thdm_all_points(const ThdmScan& scan, double radius) {
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(scan.points.size()), 7);
  std::vector<std::string> labels;
  labels.reserve(scan.points.size());
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    pts.row(static_cast<Eigen::Index>(i)) = scan.points[i].standardized.transpose();
    labels.emplace_back(scan.points[i].physical ? "physical" : "nonphysical");
  }
  return make_dataset(std::move(pts), radius, std::move(labels), thdm_columns());
}

}  // namespace secpur
