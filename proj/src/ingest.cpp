#include "secpur/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "secpur/error.hpp"

namespace secpur {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw ConfigError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = prob * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Ingested ingest(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return ingest_csv(in, options);
}

Ingested ingest_csv(std::istream& in, const IngestOptions& options) {
  if (!options.drop_class.empty() && options.class_column.empty()) {
    throw InputError("--drop-class requires a class column");
  }
  std::string line;
  if (!std::getline(in, line)) throw InputError("input is empty");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split(line);

  int class_idx = -1;
  std::vector<std::string> names;
  std::vector<int> numeric_idx;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (!options.class_column.empty() && header[j] == options.class_column) {
      class_idx = static_cast<int>(j);
    } else {
      names.emplace_back(header[j]);
      numeric_idx.push_back(static_cast<int>(j));
    }
  }
  if (!options.class_column.empty() && class_idx < 0) {
    throw InputError("class column '" + options.class_column + "' not found in header");
  }
  const auto p = static_cast<Eigen::Index>(names.size());

  std::vector<std::vector<double>> rows;
  std::vector<std::string> classes;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields, found " + std::to_string(cells.size()));
    }
    std::vector<double> row(static_cast<std::size_t>(p));
    for (std::size_t k = 0; k < numeric_idx.size(); ++k) {
      if (!parse_double(cells[static_cast<std::size_t>(numeric_idx[k])], row[k])) {
        throw InputError("line " + std::to_string(line_no) + ", column '" + names[k] + "': non-numeric value '" +
                         std::string(cells[static_cast<std::size_t>(numeric_idx[k])]) + "'");
      }
    }
    rows.push_back(std::move(row));
    if (class_idx >= 0) classes.emplace_back(cells[static_cast<std::size_t>(class_idx)]);
  }
  if (rows.empty()) throw InputError("input has no data rows");

  IngestionReport report;
  report.rows_read = static_cast<long>(rows.size());
  report.columns = names;
  report.column_means.assign(static_cast<std::size_t>(p), 0.0);
  report.column_sds.assign(static_cast<std::size_t>(p), 1.0);
  const double n = static_cast<double>(rows.size());
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    double mean = 0.0;
    for (const auto& r : rows) mean += r[jj];
    mean /= n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[jj] - mean) * (r[jj] - mean);
    const double sd = rows.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    report.column_means[jj] = mean;
    if (options.scale) {
      if (!(sd > 0.0)) throw InputError("column '" + names[jj] + "' has zero variance and cannot be scaled");
      report.column_sds[jj] = sd;
    }
  }

  // standardize, then drop the class, then measure norms
  std::vector<std::size_t> kept;
  std::vector<double> norms;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    double sq = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      r[j] = (r[j] - report.column_means[j]) / report.column_sds[j];
      sq += r[j] * r[j];
    }
    if (!options.drop_class.empty() && classes[i] == options.drop_class) {
      ++report.rows_dropped_by_class;
      continue;
    }
    kept.push_back(i);
    norms.push_back(std::sqrt(sq));
  }
  if (kept.empty()) throw InputError("no rows left after dropping class '" + options.drop_class + "'");

  report.r_max = options.r_max ? *options.r_max : quantile(norms, options.r_max_quantile);
  if (!(report.r_max > 0.0)) throw InputError("r_max must be positive");

  std::vector<std::size_t> inside;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (norms[k] > report.r_max) {
      ++report.rows_trimmed;
    } else {
      inside.push_back(kept[k]);
    }
  }
  if (inside.empty()) throw InputError("no rows left inside r_max");
  report.rows_kept = static_cast<long>(inside.size());

  Eigen::MatrixXd pts(static_cast<Eigen::Index>(inside.size()), p);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < inside.size(); ++k) {
    for (Eigen::Index j = 0; j < p; ++j) pts(static_cast<Eigen::Index>(k), j) = rows[inside[k]][static_cast<std::size_t>(j)];
    if (class_idx >= 0) labels.push_back(classes[inside[k]]);
  }
  return Ingested{make_dataset(std::move(pts), report.r_max, std::move(labels), names), std::move(report)};
}

}  // namespace secpur
