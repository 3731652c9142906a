#include "secpur/topotrace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "secpur/error.hpp"
#include "secpur/pursuit.hpp"
#include "secpur/random.hpp"

namespace secpur {

void TopotraceConfig::validate() const {
  if (m < 1) throw ConfigError("topotrace needs at least one direction");
  if (!(alpha_max > 0.0 && alpha_max <= std::numbers::pi / 2 + 1e-12)) {
    throw ConfigError("alpha_max must lie in (0, pi/2]");
  }
  if (steps < 1) throw ConfigError("topotrace needs at least one step per side");
}

TopotraceSet topotrace(const Dataset& data, const Frame& start, const IndexConfig& index_config,
                       const TopotraceConfig& tconfig) {
  tconfig.validate();
  index_config.validate();
  if (data.p() != start.dim()) throw ConfigError("start frame dimension does not match the data");

  IndexConfig config = index_config;
  config.epsilon = resolve_epsilon(index_config, data.n(), data.p());

  TopotraceSet out{start, {}, {}};
  auto score = [&](const Frame& f, int trace_id, double alpha) {
    try {
      return evaluate_frame(data, f, config);
    } catch (const DegenerateSlice& e) {
      out.warnings.push_back("trace " + std::to_string(trace_id) + " alpha " + std::to_string(alpha) +
                             ": " + e.what() + ", scored as 0");
      IndexValue v;
      v.epsilon_used = *config.epsilon;
      v.inside_count = e.inside();
      v.outside_count = e.outside();
      return v;
    }
  };

  const IndexValue at_start = score(start, -1, 0.0);
  out.traces.reserve(static_cast<std::size_t>(tconfig.m));
  for (int i = 0; i < tconfig.m; ++i) {
    const GeodesicRay ray = random_ray(start, derive_seed(tconfig.seed, static_cast<std::uint64_t>(i)));
    std::vector<TracePoint> trace;
    trace.reserve(static_cast<std::size_t>(2 * tconfig.steps + 1));
    for (int j = -tconfig.steps; j <= tconfig.steps; ++j) {
      const double alpha = tconfig.alpha_max * j / tconfig.steps;
      if (j == 0) {
        trace.push_back({0.0, at_start});
      } else {
        trace.push_back({alpha, score(ray.at(alpha), i, alpha)});
      }
    }
    out.traces.push_back(std::move(trace));
  }
  return out;
}

SquintSummary squint_summary(const TopotraceSet& tset, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("squint fraction must lie in (0, 1)");
  if (tset.traces.empty()) throw ConfigError("empty topotrace set");
  const std::size_t mid = static_cast<std::size_t>(tset.center());
  const double peak = tset.traces.front()[mid].index.value;
  if (!(peak > 0.0)) throw NumericError("no structure at start");

  SquintSummary out;
  for (const auto& trace : tset.traces) {
    double squint = 0.0;
    for (const TracePoint& pt : trace) {
      if (pt.index.value >= fraction * peak) squint = std::max(squint, std::abs(pt.alpha));
    }
    out.per_trace.push_back(squint);
  }
  std::vector<double> sorted = out.per_trace;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return out;
}

namespace {
std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}
}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("spearman needs two equal-length samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace secpur
