#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "secpur/slicing.hpp"

namespace secpur {

struct IngestOptions {
  std::string class_column;  // empty: no class column
  std::string drop_class;    // empty: keep every class
  bool scale = true;         // divide by the column sd after centering
  std::optional<double> r_max;
  double r_max_quantile = 0.999;  // used when r_max is unset
};

/// rows_read == rows_kept + rows_trimmed + rows_dropped_by_class
struct IngestionReport {
  long rows_read = 0;
  long rows_kept = 0;
  long rows_trimmed = 0;
  long rows_dropped_by_class = 0;
  std::vector<std::string> columns;
  std::vector<double> column_means;
  std::vector<double> column_sds;
  double r_max = 0.0;
};

struct Ingested {
  Dataset data;
  IngestionReport report;
};

/// Reads a comma-separated file with a header row. Numeric columns are centered (and
/// scaled) over all rows, rows of drop_class are removed, then rows with norm > r_max are
/// trimmed. The dataset radius is r_max.
Ingested ingest(const std::string& path, const IngestOptions& options);
Ingested ingest_csv(std::istream& in, const IngestOptions& options);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> values, double prob);

}  // namespace secpur
