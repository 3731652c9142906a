#include "secpur/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "secpur/datagen.hpp"
#include "secpur/error.hpp"
#include "secpur/pursuit.hpp"
#include "secpur/random.hpp"
#include "secpur/svg.hpp"
#include "secpur/topotrace.hpp"

#ifndef SECPUR_VERSION
#define SECPUR_VERSION "dev"
#endif

namespace secpur::cli {

namespace fs = std::filesystem;

const char* version() { return SECPUR_VERSION; }

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json ingest_report_json(const IngestionReport& r) {
  return json{{"rows_read", r.rows_read},
              {"rows_kept", r.rows_kept},
              {"rows_trimmed", r.rows_trimmed},
              {"rows_dropped_by_class", r.rows_dropped_by_class},
              {"columns", r.columns},
              {"column_means", r.column_means},
              {"column_sds", r.column_sds},
              {"r_max", r.r_max}};
}

IndexConfig index_config_for(const json& j, double radius) {
  IndexConfig config(PolarGrid(j.at("radial_bins").get<int>(), j.at("angular_bins").get<int>(), radius),
                     j.at("slice_height_ratio").get<double>() * radius);
  config.q = j.at("q").get<double>();
  config.direction = direction_from_string(j.at("direction").get<std::string>());
  config.rotation_average = j.at("rotation_average").get<int>();
  config.threshold_scale = threshold_scale_from_string(j.at("threshold_scale").get<std::string>());
  const auto& eps = j.at("epsilon");
  if (eps.is_number()) config.epsilon = eps.get<double>();
  config.validate();
  return config;
}

Frame frame_for(const json& spec, int p) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "random") return random_frame(p, spec.at("seed").get<std::uint64_t>());
  if (type == "axes") {
    const auto axes = spec.at("axes").get<std::vector<int>>();
    if (axes.size() != 2) throw ConfigError("axes need exactly two (1-based) indices");
    return coordinate_frame(p, axes[0] - 1, axes[1] - 1);
  }
  if (type == "frame") {
    Frame f = frame_from_json(spec.at("frame"));
    if (f.dim() != p) throw ConfigError("frame dimension does not match the data");
    return f;
  }
  throw ConfigError("unknown frame type '" + type + "'");
}

Ingested load(const json& config) { return ingest(config.at("ingest").at("input").get<std::string>(), ingest_options_from_json(config.at("ingest"))); }

void run_pursue(const json& config, const fs::path& dir, std::ostream& out) {
  const Ingested in = load(config);
  const IndexConfig ic = index_config_for(config.at("index"), in.data.radius);
  const OptimizerParams params = optimizer_from_json(config.at("optimizer"));
  const Frame start = frame_for(config.at("start"), in.data.p());
  const PursuitTrace trace = pursue(in.data, start, ic, params);

  write_file(dir / "ingestion.json", dump(ingest_report_json(in.report)));
  write_file(dir / "trace.json", dump(to_json(trace)));
  const int steps = config.at("interpolate_steps").get<int>();
  if (steps > 0) write_file(dir / "tour.json", dump(to_json(interpolated_trace(in.data, trace, steps))));
  const TraceRecord& fin = trace.final_record();
  std::ostringstream title;
  title << "final slice, index " << std::fixed << std::setprecision(4) << fin.index.value;
  write_file(dir / "best_slice.svg", render_slice_svg(in.data, fin.frame, ic.h, ic.grid, title.str()));
  out << "start index " << trace.records.front().index.value << ", final index " << fin.index.value << " after "
      << fin.step << " iterations\n";
}

void run_topotrace(const json& config, const fs::path& dir, std::ostream& out) {
  const Ingested in = load(config);
  const IndexConfig ic = index_config_for(config.at("index"), in.data.radius);
  const Frame start = frame_for(config.at("start"), in.data.p());
  const auto& t = config.at("topotrace");
  TopotraceConfig tc;
  tc.m = t.at("m").get<int>();
  tc.alpha_max = t.at("alpha_max").get<double>();
  tc.steps = t.at("steps").get<int>();
  tc.seed = t.at("seed").get<std::uint64_t>();
  const TopotraceSet tset = topotrace(in.data, start, ic, tc);

  json j = to_json(tset);
  try {
    const SquintSummary sq = squint_summary(tset, t.at("squint_fraction").get<double>());
    j["squint"] = json{{"fraction", t.at("squint_fraction")}, {"per_trace", sq.per_trace}, {"median", sq.median}};
  } catch (const NumericError& e) {
    j["squint"] = json{{"error", e.what()}};
  }
  std::ostringstream csv;
  write_topotrace_csv(csv, tset);
  write_file(dir / "ingestion.json", dump(ingest_report_json(in.report)));
  write_file(dir / "topotrace.csv", csv.str());
  write_file(dir / "topotrace.json", dump(j));
  write_file(dir / "topotrace.svg", render_topotrace_svg(tset, "topotrace"));
  out << tset.traces.size() << " traces of " << tset.traces.front().size() << " points\n";
}

void run_index_eval(const json& config, const fs::path& dir, std::ostream& out) {
  const Ingested in = load(config);
  const IndexConfig ic = index_config_for(config.at("index"), in.data.radius);
  const Frame frame = frame_for(config.at("frame"), in.data.p());
  const IndexValue v = evaluate_frame(in.data, frame, ic);
  const std::string text = dump(to_json(v));
  out << text;
  if (!dir.empty()) write_file(dir / "index.json", text);
}

void run_datagen(const json& config, const fs::path& dir, std::ostream& out) {
  const std::string kind = config.at("kind").get<std::string>();
  const long n = config.at("n").get<long>();
  const double radius = config.at("radius").get<double>();
  const auto seed = config.at("seed").get<std::uint64_t>();
  std::ostringstream csv;
  if (kind == "ball") {
    write_dataset_csv(csv, sample_ball(n, config.at("p").get<int>(), radius, seed));
  } else if (kind == "cavity") {
    const int p = config.at("p").get<int>();
    const auto& c = config.at("cavity");
    const auto cav_kind = c.at("kind").get<std::string>() == "grain" ? CavitySpec::Kind::grain : CavitySpec::Kind::hole;
    const CavitySpec spec = centered_cavity(p, c.at("wide").get<double>() * radius, c.at("narrow").get<double>() * radius,
                                            cav_kind, c.at("density_factor").get<double>());
    const CavitySample s = sample_with_cavities(n, p, radius, {spec}, seed);
    write_dataset_csv(csv, s.data);
    write_file(dir / "planes.json", dump(json{{"informative", to_json(s.informative_plane)},
                                              {"uninformative", to_json(s.uninformative_plane)}}));
  } else if (kind == "thdm") {
    ThdmRanges ranges;
    const auto& r = config.at("ranges");
    ranges.lambda_min = r.at("lambda_min").get<double>();
    ranges.lambda_max = r.at("lambda_max").get<double>();
    ranges.tan_beta_min = r.at("tan_beta_min").get<double>();
    ranges.tan_beta_max = r.at("tan_beta_max").get<double>();
    ranges.cos_beta_alpha_min = r.at("cos_beta_alpha_min").get<double>();
    ranges.cos_beta_alpha_max = r.at("cos_beta_alpha_max").get<double>();
    const ThdmScan scan = thdm_scan(n, radius, seed, ranges);
    write_thdm_csv(csv, scan);
    std::ostringstream labelled;
    write_dataset_csv(labelled, thdm_all_points(scan, radius), "status");
    write_file(dir / "thdm_standardized.csv", labelled.str());
  } else {
    throw ConfigError("unknown datagen kind '" + kind + "'");
  }
  write_file(dir / "data.csv", csv.str());
  out << "wrote " << (dir / "data.csv").string() << "\n";
}

json ingest_block(const std::string& input, const std::string& class_column, const std::string& drop_class,
                  bool no_scale, const std::optional<double>& r_max) {
  return json{{"input", input},
              {"class_column", class_column},
              {"drop_class", drop_class},
              {"scale", !no_scale},
              {"r_max", r_max ? json(*r_max) : json(nullptr)},
              {"r_max_quantile", 0.999}};
}

// Shared flag groups. Values live here until the subcommand callback assembles a config.
struct IngestFlags {
  std::string input;
  std::string class_column;
  std::string drop_class;
  bool no_scale = false;
  std::optional<double> r_max;

  void add(CLI::App* app) {
    app->add_option("--input", input, "CSV file with a header row")->required();
    app->add_option("--class-column", class_column, "non-numeric class column");
    app->add_option("--drop-class", drop_class, "class whose rows are removed before the search");
    app->add_flag("--no-scale", no_scale, "center only, do not divide by the column sd");
    app->add_option("--r-max", r_max, "hypersphere radius (default: 0.999 quantile of row norms)")
        ->check(CLI::PositiveNumber);
  }
  json to_json() const { return ingest_block(input, class_column, drop_class, no_scale, r_max); }
};

struct IndexFlags {
  double slice_height_ratio = 0.25;
  int radial_bins = 5;
  int angular_bins = 10;
  double q = 1.0;
  std::string epsilon = "auto";
  std::string direction = "low";
  int rotation_average = 1;
  std::string threshold_scale = "contribution";

  void add(CLI::App* app) {
    app->add_option("--slice-height-ratio", slice_height_ratio, "h / r_max")->check(CLI::Range(1e-9, 1.0));
    app->add_option("--radial-bins", radial_bins)->check(CLI::Range(1, 1000));
    app->add_option("--angular-bins", angular_bins)->check(CLI::Range(1, 1000));
    app->add_option("--q", q, "index exponent")->check(CLI::PositiveNumber);
    app->add_option("--epsilon", epsilon, "noise cutoff: 'auto' or a non-negative number")
        ->check([](const std::string& s) -> std::string {
          if (s == "auto") return {};
          try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos == s.size() && v >= 0.0) return {};
          } catch (const std::exception&) {
          }
          return "epsilon must be 'auto' or a non-negative number";
        });
    app->add_option("--direction", direction)->check(CLI::IsMember({"low", "up"}));
    app->add_option("--rotation-average", rotation_average, "within-bin rotations to average")
        ->check(CLI::Range(1, 1000));
    app->add_option("--threshold-scale", threshold_scale)->check(CLI::IsMember({"contribution", "difference"}));
  }
  json to_json() const {
    json eps = epsilon == "auto" ? json("auto") : json(std::stod(epsilon));
    return json{{"slice_height_ratio", slice_height_ratio},
                {"radial_bins", radial_bins},
                {"angular_bins", angular_bins},
                {"q", q},
                {"epsilon", eps},
                {"direction", direction},
                {"rotation_average", rotation_average},
                {"threshold_scale", threshold_scale}};
  }
};

struct FrameFlags {
  std::vector<int> axes;
  std::string frame_file;
  std::uint64_t seed = 0;

  void add(CLI::App* app, const std::string& prefix) {
    app->add_option("--" + prefix + "axes", axes, "two 1-based coordinate axes spanning the plane")->expected(2);
    app->add_option("--" + prefix + "frame", frame_file, "frame JSON {\"p\":..,\"basis\":[..]}");
  }
  json to_json(std::uint64_t fallback_seed) const {
    if (!axes.empty()) return json{{"type", "axes"}, {"axes", axes}};
    if (!frame_file.empty()) {
      std::ifstream in(frame_file);
      if (!in) throw InputError("cannot open frame file '" + frame_file + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw InputError("cannot parse frame file: " + std::string(e.what()));
      }
      frame_from_json(j);
      return json{{"type", "frame"}, {"frame", j}};
    }
    return json{{"type", "random"}, {"seed", fallback_seed}};
  }
};

}  // namespace

IngestOptions ingest_options_from_json(const json& j) {
  IngestOptions o;
  o.class_column = j.value("class_column", "");
  o.drop_class = j.value("drop_class", "");
  o.scale = j.value("scale", true);
  if (j.contains("r_max") && j["r_max"].is_number()) o.r_max = j["r_max"].get<double>();
  o.r_max_quantile = j.value("r_max_quantile", 0.999);
  return o;
}

json make_manifest(const std::string& subcommand, const json& config) {
  json input = nullptr;
  if (config.contains("ingest")) {
    const std::string path = config["ingest"]["input"].get<std::string>();
    input = json{{"path", path}, {"digest", file_digest(path)}};
  }
  json seed = nullptr;
  if (config.contains("optimizer")) seed = config["optimizer"]["seed"];
  else if (config.contains("topotrace")) seed = config["topotrace"]["seed"];
  else if (config.contains("seed")) seed = config["seed"];
  return json{{"tool", "secpur"},
              {"version", version()},
              {"subcommand", subcommand},
              {"seed", seed},
              {"input", input},
              {"config", config}};
}

void execute(const std::string& subcommand, const json& config, const fs::path& out_dir, std::ostream& out) {
  if (subcommand == "pursue") {
    run_pursue(config, out_dir, out);
  } else if (subcommand == "topotrace") {
    run_topotrace(config, out_dir, out);
  } else if (subcommand == "index-eval") {
    run_index_eval(config, out_dir, out);
  } else if (subcommand == "datagen") {
    run_datagen(config, out_dir, out);
  } else {
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  }
  if (!out_dir.empty()) write_file(out_dir / "manifest.json", dump(make_manifest(subcommand, config)));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"section pursuit: find slices whose interior differs most from the projection"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::string subcommand;
  json config;
  std::string out_dir;  // set by the selected subcommand

  // pursue
  IngestFlags p_ingest;
  IndexFlags p_index;
  FrameFlags p_start;
  OptimizerParams p_opt;
  std::string p_method = "search_better";
  int p_interp = 0;
  auto* pursue_cmd = app.add_subcommand("pursue", "optimize the section index");
  p_ingest.add(pursue_cmd);
  p_index.add(pursue_cmd);
  p_start.add(pursue_cmd, "start-");
  pursue_cmd->add_option("--optimizer", p_method)->check(CLI::IsMember({"search_better", "geodesic_search"}));
  pursue_cmd->add_option("--max-iter", p_opt.max_iter)->check(CLI::Range(1, 1000000));
  pursue_cmd->add_option("--candidates", p_opt.candidates_per_iter)->check(CLI::Range(1, 1000000));
  pursue_cmd->add_option("--alpha0", p_opt.alpha0)->check(CLI::Range(1e-6, 1.5707963267948966));
  pursue_cmd->add_option("--cooling", p_opt.cooling)->check(CLI::Range(1e-6, 1.0));
  pursue_cmd->add_option("--min-improvement", p_opt.min_improvement)->check(CLI::NonNegativeNumber);
  pursue_cmd->add_option("--seed", p_opt.seed);
  pursue_cmd->add_flag("--record-candidates", p_opt.record_candidates);
  pursue_cmd->add_option("--interpolate-steps", p_interp, "also write tour.json with this many steps per segment")
      ->check(CLI::Range(0, 10000));
  std::string p_out = "secpur-out";
  pursue_cmd->add_option("--out-dir", p_out)->capture_default_str();
  pursue_cmd->callback([&] {
    out_dir = p_out;
    subcommand = "pursue";
    p_opt.method = method_from_string(p_method);
    config = json{{"ingest", p_ingest.to_json()},
                  {"index", p_index.to_json()},
                  {"optimizer", to_json(p_opt)},
                  {"start", p_start.to_json(derive_seed(p_opt.seed, 0xf7a3e))},
                  {"interpolate_steps", p_interp}};
  });

  // topotrace
  IngestFlags t_ingest;
  IndexFlags t_index;
  FrameFlags t_start;
  TopotraceConfig t_conf;
  double t_fraction = 0.75;
  auto* topo_cmd = app.add_subcommand("topotrace", "index profiles along random geodesic rays");
  t_ingest.add(topo_cmd);
  t_index.add(topo_cmd);
  t_start.add(topo_cmd, "start-");
  topo_cmd->add_option("--directions,-m", t_conf.m)->check(CLI::Range(1, 100000));
  topo_cmd->add_option("--alpha-max,--alpha", t_conf.alpha_max)->check(CLI::Range(1e-9, 1.5707963267949));
  topo_cmd->add_option("--steps", t_conf.steps, "grid points per side")->check(CLI::Range(1, 100000));
  topo_cmd->add_option("--seed", t_conf.seed);
  topo_cmd->add_option("--squint-fraction", t_fraction)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  std::string t_out = "secpur-out";
  topo_cmd->add_option("--out-dir", t_out)->capture_default_str();
  topo_cmd->callback([&] {
    out_dir = t_out;
    subcommand = "topotrace";
    config = json{{"ingest", t_ingest.to_json()},
                  {"index", t_index.to_json()},
                  {"start", t_start.to_json(derive_seed(t_conf.seed, 0xf7a3e))},
                  {"topotrace",
                   {{"m", t_conf.m},
                    {"alpha_max", std::min(t_conf.alpha_max, std::numbers::pi / 2)},
                    {"steps", t_conf.steps},
                    {"seed", t_conf.seed},
                    {"squint_fraction", t_fraction}}}};
  });

  // index-eval
  IngestFlags e_ingest;
  IndexFlags e_index;
  FrameFlags e_frame;
  auto* eval_cmd = app.add_subcommand("index-eval", "evaluate the index for one plane");
  e_ingest.add(eval_cmd);
  e_index.add(eval_cmd);
  e_frame.add(eval_cmd, "");
  std::string e_out;
  eval_cmd->add_option("--out-dir", e_out, "also write index.json and manifest.json here");
  eval_cmd->callback([&] {
    out_dir = e_out;
    subcommand = "index-eval";
    if (e_frame.axes.empty() && e_frame.frame_file.empty()) throw ConfigError("index-eval needs --axes or --frame");
    config = json{{"ingest", e_ingest.to_json()}, {"index", e_index.to_json()}, {"frame", e_frame.to_json(0)}};
  });

  // datagen
  std::string g_kind;
  long g_n = 20000;
  int g_p = 4;
  double g_radius = 1.0;
  std::uint64_t g_seed = 0;
  std::string g_cavity = "hole";
  double g_wide = 0.6, g_narrow = 0.35, g_density = 0.0;
  ThdmRanges g_ranges;
  auto* gen_cmd = app.add_subcommand("datagen", "generate benchmark data");
  gen_cmd->add_option("kind", g_kind, "ball | cavity | thdm")->required()->check(CLI::IsMember({"ball", "cavity", "thdm"}));
  gen_cmd->add_option("--n", g_n, "number of points")->check(CLI::Range(1L, 100000000L));
  gen_cmd->add_option("--p", g_p, "dimension (ignored for thdm)")->check(CLI::Range(3, 1000));
  gen_cmd->add_option("--radius", g_radius)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", g_seed);
  gen_cmd->add_option("--cavity", g_cavity)->check(CLI::IsMember({"hole", "grain"}));
  gen_cmd->add_option("--wide", g_wide, "cavity semi-axis along axes 1, 2 (fraction of radius)");
  gen_cmd->add_option("--narrow", g_narrow, "cavity semi-axis along the other axes (fraction of radius)");
  gen_cmd->add_option("--density", g_density, "density factor inside the cavity");
  gen_cmd->add_option("--lambda-min", g_ranges.lambda_min);
  gen_cmd->add_option("--lambda-max", g_ranges.lambda_max);
  gen_cmd->add_option("--tan-beta-min", g_ranges.tan_beta_min);
  gen_cmd->add_option("--tan-beta-max", g_ranges.tan_beta_max);
  gen_cmd->add_option("--cos-beta-alpha-min", g_ranges.cos_beta_alpha_min);
  gen_cmd->add_option("--cos-beta-alpha-max", g_ranges.cos_beta_alpha_max);
  std::string g_out = "secpur-out";
  gen_cmd->add_option("--out-dir", g_out)->capture_default_str();
  gen_cmd->callback([&] {
    out_dir = g_out;
    subcommand = "datagen";
    config = json{{"kind", g_kind}, {"n", g_n}, {"radius", g_radius}, {"seed", g_seed}};
    if (g_kind != "thdm") config["p"] = g_p;
    if (g_kind == "cavity") {
      if (g_cavity == "grain" && g_density <= 1.0) g_density = 4.0;
      config["cavity"] = json{{"kind", g_cavity}, {"wide", g_wide}, {"narrow", g_narrow}, {"density_factor", g_density}};
    }
    if (g_kind == "thdm") {
      config["ranges"] = json{{"lambda_min", g_ranges.lambda_min},
                              {"lambda_max", g_ranges.lambda_max},
                              {"tan_beta_min", g_ranges.tan_beta_min},
                              {"tan_beta_max", g_ranges.tan_beta_max},
                              {"cos_beta_alpha_min", g_ranges.cos_beta_alpha_min},
                              {"cos_beta_alpha_max", g_ranges.cos_beta_alpha_max}};
    }
  });

  // replay
  std::string manifest_path;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest.json");
  replay_cmd->add_option("--manifest", manifest_path)->required();
  std::string r_out = "secpur-out";
  replay_cmd->add_option("--out-dir", r_out)->capture_default_str();
  replay_cmd->callback([&] {
    out_dir = r_out;
    std::ifstream in(manifest_path);
    if (!in) throw InputError("cannot open manifest '" + manifest_path + "'");
    json m;
    try {
      in >> m;
    } catch (const json::exception& e) {
      throw InputError("cannot parse manifest: " + std::string(e.what()));
    }
    subcommand = m.at("subcommand").get<std::string>();
    config = m.at("config");
    if (m.contains("input") && m["input"].is_object()) {
      const std::string path = m["input"]["path"].get<std::string>();
      if (file_digest(path) != m["input"]["digest"].get<std::string>()) {
        throw InputError("input '" + path + "' changed since the manifest was written");
      }
    }
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::CallForVersion&) {
      out << version() << "\n";
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(Error::Category::config);
    }
    execute(subcommand, config, out_dir, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    err << "error: malformed configuration: " << e.what() << "\n";
    return static_cast<int>(Error::Category::config);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(Error::Category::input);
  }
}

}  // namespace secpur::cli
