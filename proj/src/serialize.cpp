#include "secpur/serialize.hpp"

#include <charconv>
#include <ostream>

#include "secpur/error.hpp"

namespace secpur {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* to_string(Direction d) { return d == Direction::low ? "low" : "up"; }

Direction direction_from_string(const std::string& s) {
  if (s == "low") return Direction::low;
  if (s == "up") return Direction::up;
  throw ConfigError("direction must be 'low' or 'up', got '" + s + "'");
}

const char* to_string(ThresholdScale s) {
  return s == ThresholdScale::contribution ? "contribution" : "difference";
}

ThresholdScale threshold_scale_from_string(const std::string& s) {
  if (s == "contribution") return ThresholdScale::contribution;
  if (s == "difference") return ThresholdScale::difference;
  throw ConfigError("threshold scale must be 'contribution' or 'difference', got '" + s + "'");
}

json to_json(const Frame& frame) {
  json basis = json::array();
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < frame.dim(); ++i) basis.push_back(frame.basis()(i, j));
  }
  return json{{"p", frame.dim()}, {"basis", std::move(basis)}};
}

Frame frame_from_json(const json& j) {
  try {
    const int p = j.at("p").get<int>();
    const auto& basis = j.at("basis");
    if (p < 3 || !basis.is_array() || basis.size() != static_cast<std::size_t>(2 * p)) {
      throw InputError("frame JSON needs p >= 3 and a basis of length 2p");
    }
    Eigen::MatrixXd m(p, 2);
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < p; ++i) m(i, c) = basis.at(static_cast<std::size_t>(c * p + i)).get<double>();
    }
    try {
      return Frame::from_orthonormal(m);
    } catch (const ConfigError&) {
      return orthonormalize(m);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed frame JSON: ") + e.what());
  }
}

json to_json(const PolarGrid& grid) {
  return json{{"k_r", grid.k_r()}, {"k_theta", grid.k_theta()}, {"R", grid.radius()}};
}

PolarGrid grid_from_json(const json& j) {
  return PolarGrid(j.at("k_r").get<int>(), j.at("k_theta").get<int>(), j.at("R").get<double>());
}

json to_json(const IndexConfig& config) {
  json j{{"direction", to_string(config.direction)},
         {"q", config.q},
         {"h", config.h},
         {"grid", to_json(config.grid)},
         {"rotation_average", config.rotation_average},
         {"threshold_scale", to_string(config.threshold_scale)}};
  j["epsilon"] = config.epsilon ? json(*config.epsilon) : json("auto");
  j["weights"] = config.weights.empty() ? json(nullptr) : json(config.weights);
  return j;
}

IndexConfig index_config_from_json(const json& j) {
  IndexConfig config(grid_from_json(j.at("grid")), j.at("h").get<double>());
  config.direction = direction_from_string(j.value("direction", "low"));
  config.q = j.value("q", 1.0);
  config.rotation_average = j.value("rotation_average", 1);
  config.threshold_scale = threshold_scale_from_string(j.value("threshold_scale", "contribution"));
  if (j.contains("epsilon") && j["epsilon"].is_number()) config.epsilon = j["epsilon"].get<double>();
  if (j.contains("weights") && j["weights"].is_array()) config.weights = j["weights"].get<std::vector<double>>();
  config.validate();
  return config;
}

json to_json(const IndexValue& value) {
  return json{{"value", value.value},
              {"raw", value.raw},
              {"epsilon_used", value.epsilon_used},
              {"inside_count", value.inside_count},
              {"outside_count", value.outside_count}};
}

json to_json(const OptimizerParams& params) {
  return json{{"method", to_string(params.method)},
              {"max_iter", params.max_iter},
              {"candidates_per_iter", params.candidates_per_iter},
              {"alpha0", params.alpha0},
              {"cooling", params.cooling},
              {"min_improvement", params.min_improvement},
              {"seed", params.seed},
              {"record_candidates", params.record_candidates}};
}

OptimizerParams optimizer_from_json(const json& j) {
  OptimizerParams p;
  p.method = method_from_string(j.value("method", "search_better"));
  p.max_iter = j.value("max_iter", p.max_iter);
  p.candidates_per_iter = j.value("candidates_per_iter", p.candidates_per_iter);
  p.alpha0 = j.value("alpha0", p.alpha0);
  p.cooling = j.value("cooling", p.cooling);
  p.min_improvement = j.value("min_improvement", p.min_improvement);
  p.seed = j.value("seed", p.seed);
  p.record_candidates = j.value("record_candidates", p.record_candidates);
  p.validate();
  return p;
}

json to_json(const PursuitTrace& trace) {
  json records = json::array();
  for (const auto& rec : trace.records) {
    records.push_back(json{{"step", rec.step},
                           {"kind", to_string(rec.kind)},
                           {"index", rec.index.value},
                           {"raw", rec.index.raw},
                           {"basis", to_json(rec.frame)["basis"]}});
  }
  return json{{"optimizer", to_json(trace.optimizer)},
              {"config", to_json(trace.config)},
              {"records", std::move(records)},
              {"warnings", trace.warnings}};
}

json to_json(const TopotraceSet& tset) {
  json traces = json::array();
  for (std::size_t i = 0; i < tset.traces.size(); ++i) {
    json alphas = json::array(), values = json::array(), raws = json::array();
    for (const auto& pt : tset.traces[i]) {
      alphas.push_back(pt.alpha);
      values.push_back(pt.index.value);
      raws.push_back(pt.index.raw);
    }
    traces.push_back(json{{"trace_id", i}, {"alpha", alphas}, {"index", values}, {"raw", raws}});
  }
  return json{{"start", to_json(tset.start)}, {"traces", std::move(traces)}, {"warnings", tset.warnings}};
}

void write_topotrace_csv(std::ostream& os, const TopotraceSet& tset) {
  os << "trace_id,alpha,index,raw\n";
  for (std::size_t i = 0; i < tset.traces.size(); ++i) {
    for (const auto& pt : tset.traces[i]) {
      os << i << ',' << format_number(pt.alpha) << ',' << format_number(pt.index.value) << ','
         << format_number(pt.index.raw) << '\n';
    }
  }
}

void write_dataset_csv(std::ostream& os, const Dataset& data, const std::string& label_column) {
  for (int j = 0; j < data.p(); ++j) {
    if (j > 0) os << ',';
    os << (data.columns.empty() ? "x" + std::to_string(j + 1) : data.columns[static_cast<std::size_t>(j)]);
  }
  if (!data.labels.empty()) os << ',' << label_column;
  os << '\n';
  for (int i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.p(); ++j) {
      if (j > 0) os << ',';
      os << format_number(data.points(i, j));
    }
    if (!data.labels.empty()) os << ',' << data.labels[static_cast<std::size_t>(i)];
    os << '\n';
  }
}

void write_thdm_csv(std::ostream& os, const ThdmScan& scan) {
  const auto& names = thdm_columns();
  for (const auto& n : names) os << n << ',';
  os << "p_lambda1,p_lambda2,p_lambda3,p_lambda4,p_lambda5,p_tan_beta,p_cos_beta_alpha,"
        "m2_h,m2_H,m2_Hpm,m2_A,physical\n";
  for (const auto& pt : scan.points) {
    for (Eigen::Index j = 0; j < pt.standardized.size(); ++j) os << format_number(pt.standardized(j)) << ',';
    for (double l : pt.params.lambda) os << format_number(l) << ',';
    os << format_number(pt.params.tan_beta) << ',' << format_number(pt.params.cos_beta_alpha) << ','
       << format_number(pt.masses.m2_h) << ',' << format_number(pt.masses.m2_H) << ','
       << format_number(pt.masses.m2_Hpm) << ',' << format_number(pt.masses.m2_A) << ','
       << (pt.physical ? 1 : 0) << '\n';
  }
}

}  // namespace secpur
