#include "secpur/pursuit.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "secpur/error.hpp"
#include "secpur/random.hpp"

namespace secpur {

void OptimizerParams::validate() const {
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (candidates_per_iter < 1) throw ConfigError("candidates_per_iter must be at least 1");
  if (!(alpha0 > 0.0 && alpha0 <= std::numbers::pi / 2)) throw ConfigError("alpha0 must lie in (0, pi/2]");
  if (!(cooling > 0.0 && cooling <= 1.0)) throw ConfigError("cooling must lie in (0, 1]");
  if (!(min_improvement >= 0.0)) throw ConfigError("min_improvement must be non-negative");
}

const char* to_string(Method m) {
  return m == Method::search_better ? "search_better" : "geodesic_search";
}

Method method_from_string(const std::string& s) {
  if (s == "search_better") return Method::search_better;
  if (s == "geodesic_search" || s == "geodesic") return Method::geodesic_search;
  throw ConfigError("unknown optimizer '" + s + "'");
}

const char* to_string(RecordKind k) {
  switch (k) {
    case RecordKind::start: return "start";
    case RecordKind::candidate: return "candidate";
    case RecordKind::accepted: return "accepted";
    case RecordKind::interpolation: return "interpolation";
    case RecordKind::final: return "final";
  }
  return "unknown";
}

IndexValue evaluate_frame(const Dataset& data, const Frame& frame, const IndexConfig& config) {
  return rotation_averaged_index(center_projection(slice(data, frame, config.h)), config);
}

namespace {

constexpr double kMinAlpha = 1e-3;

// Scores frames for an optimizer run; degenerate slices score zero and leave a warning.
class Scorer {
 public:
  Scorer(const Dataset& data, const IndexConfig& config, std::vector<std::string>& warnings)
      : data_(data), config_(config), warnings_(warnings), factor_(rescale_factor(config.q)) {
    config_.epsilon = resolve_epsilon(config, data.n(), data.p());
  }

  IndexValue operator()(const Frame& frame, int step) {
    try {
      return evaluate_frame(data_, frame, config_);
    } catch (const DegenerateSlice& e) {
      warnings_.push_back("step " + std::to_string(step) + ": " + e.what() + ", scored as 0");
      IndexValue v;
      v.epsilon_used = *config_.epsilon;
      v.inside_count = e.inside();
      v.outside_count = e.outside();
      return v;
    }
  }

  // unclamped rescaled value, used for all comparisons
  double score(const IndexValue& v) const { return v.raw * factor_; }

 private:
  const Dataset& data_;
  IndexConfig config_;
  std::vector<std::string>& warnings_;
  double factor_;
};

PursuitTrace begin_trace(const Dataset& data, const Frame& start, const IndexConfig& config,
                         const OptimizerParams& params) {
  params.validate();
  config.validate();
  if (data.p() != start.dim()) throw ConfigError("start frame dimension does not match the data");
  return PursuitTrace{config, params, {}, {}};
}

}  // namespace

PursuitTrace search_better(const Dataset& data, const Frame& start, const IndexConfig& config,
                           const OptimizerParams& params) {
  PursuitTrace trace = begin_trace(data, start, config, params);
  Scorer scorer(data, config, trace.warnings);

  Frame incumbent = start;
  IndexValue best = scorer(start, 0);
  trace.records.push_back({0, RecordKind::start, start, best});

  double alpha = params.alpha0;
  int iter = 0;
  for (; iter < params.max_iter && alpha >= kMinAlpha; ++iter) {
    const int step = iter + 1;
    bool accepted = false;
    for (int c = 0; c < params.candidates_per_iter; ++c) {
      const std::uint64_t dir_seed = derive_seed(params.seed, static_cast<std::uint64_t>(iter),
                                                 static_cast<std::uint64_t>(c));
      Frame candidate = step_from(incumbent, dir_seed, alpha);
      const IndexValue value = scorer(candidate, step);
      if (params.record_candidates) trace.records.push_back({step, RecordKind::candidate, candidate, value});
      if (scorer.score(value) > scorer.score(best) + params.min_improvement) {
        incumbent = std::move(candidate);
        best = value;
        trace.records.push_back({step, RecordKind::accepted, incumbent, best});
        accepted = true;
        break;
      }
    }
    if (!accepted) alpha *= params.cooling;
  }
  trace.records.push_back({iter, RecordKind::final, incumbent, best});
  return trace;
}

PursuitTrace search_geodesic(const Dataset& data, const Frame& start, const IndexConfig& config,
                             const OptimizerParams& params) {
  PursuitTrace trace = begin_trace(data, start, config, params);
  Scorer scorer(data, config, trace.warnings);

  Frame incumbent = start;
  IndexValue best = scorer(start, 0);
  trace.records.push_back({0, RecordKind::start, start, best});

  double alpha = params.alpha0;
  int iter = 0;
  for (; iter < params.max_iter && alpha >= kMinAlpha; ++iter) {
    const int step = iter + 1;
    auto evaluate = [&](const Frame& f) {
      IndexValue v = scorer(f, step);
      if (params.record_candidates) trace.records.push_back({step, RecordKind::candidate, f, v});
      return v;
    };

    // probe every direction at +-alpha; strict comparison keeps the lowest ordinal on ties
    int best_dir = -1;
    double best_probe = -std::numeric_limits<double>::infinity();
    std::vector<GeodesicRay> rays;
    rays.reserve(static_cast<std::size_t>(params.candidates_per_iter));
    Frame line_best = incumbent;
    IndexValue line_best_value = best;
    double line_best_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < params.candidates_per_iter; ++c) {
      rays.push_back(random_ray(incumbent, derive_seed(params.seed, static_cast<std::uint64_t>(iter),
                                                       static_cast<std::uint64_t>(c))));
      for (double a : {alpha, -alpha}) {
        Frame f = rays.back().at(a);
        const IndexValue v = evaluate(f);
        const double s = scorer.score(v);
        if (s > best_probe) {
          best_probe = s;
          best_dir = c;
        }
        if (s > line_best_score) {
          line_best_score = s;
          line_best = std::move(f);
          line_best_value = v;
        }
      }
    }

    // golden-section maximization along the chosen direction, 10 evaluations
    const GeodesicRay& ray = rays[static_cast<std::size_t>(best_dir)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = -alpha;
    double hi = alpha;
    auto probe = [&](double a) {
      Frame f = ray.at(a);
      const IndexValue v = evaluate(f);
      const double s = scorer.score(v);
      if (s > line_best_score) {
        line_best_score = s;
        line_best = std::move(f);
        line_best_value = v;
      }
      return s;
    };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = probe(x1);
    double f2 = probe(x2);
    for (int e = 2; e < 10; ++e) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = probe(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = probe(x2);
      }
    }

    if (line_best_score > scorer.score(best) + params.min_improvement) {
      incumbent = std::move(line_best);
      best = line_best_value;
      trace.records.push_back({step, RecordKind::accepted, incumbent, best});
    } else {
      alpha *= params.cooling;
    }
  }
  trace.records.push_back({iter, RecordKind::final, incumbent, best});
  return trace;
}

PursuitTrace pursue(const Dataset& data, const Frame& start, const IndexConfig& config,
                    const OptimizerParams& params) {
  return params.method == Method::search_better ? search_better(data, start, config, params)
                                                 : search_geodesic(data, start, config, params);
}

PursuitTrace interpolated_trace(const Dataset& data, const PursuitTrace& trace, int steps_per_segment) {
  if (steps_per_segment < 1) throw ConfigError("steps_per_segment must be at least 1");
  if (trace.records.empty()) throw ConfigError("cannot interpolate an empty trace");
  PursuitTrace out{trace.config, trace.optimizer, {}, trace.warnings};
  Scorer scorer(data, trace.config, out.warnings);

  const TraceRecord* previous = nullptr;
  for (const TraceRecord& rec : trace.records) {
    if (rec.kind != RecordKind::start && rec.kind != RecordKind::accepted) continue;
    if (previous != nullptr) {
      const GeodesicPath path = geodesic_between(previous->frame, rec.frame);
      for (int j = 1; j < steps_per_segment; ++j) {
        Frame f = interpolate(path, static_cast<double>(j) / steps_per_segment);
        const IndexValue v = scorer(f, rec.step);
        out.records.push_back({rec.step, RecordKind::interpolation, std::move(f), v});
      }
    }
    out.records.push_back(rec);
    previous = &rec;
  }
  out.records.push_back(trace.records.back());
  return out;
}

}  // namespace secpur
