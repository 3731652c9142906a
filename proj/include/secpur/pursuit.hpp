#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secpur/geometry.hpp"
#include "secpur/index.hpp"
#include "secpur/slicing.hpp"

namespace secpur {

enum class Method { geodesic_search, search_better };

struct OptimizerParams {
  Method method = Method::search_better;
  int max_iter = 60;
  int candidates_per_iter = 25;
  double alpha0 = 0.5;  // initial neighbourhood angle, radians
  double cooling = 0.9;
  double min_improvement = 1e-4;  // in rescaled index units
  std::uint64_t seed = 0;
  bool record_candidates = false;

  void validate() const;
};

enum class RecordKind { start, candidate, accepted, interpolation, final };

struct TraceRecord {
  int step;
  RecordKind kind;
  Frame frame;
  IndexValue index;
};

/// Ordered frames visited by an optimizer. The first record is the start, the last the
/// final incumbent; accepted records strictly increase in index.
struct PursuitTrace {
  IndexConfig config;
  OptimizerParams optimizer;
  std::vector<TraceRecord> records;
  std::vector<std::string> warnings;

  const TraceRecord& final_record() const { return records.back(); }
};

/// Full pipeline: slice, center, polar-bin both sides, reweight, index.
/// Throws DegenerateSlice when either side of the slice is empty.
IndexValue evaluate_frame(const Dataset& data, const Frame& frame, const IndexConfig& config);

/// Random neighbourhood search with a shrinking angle.
PursuitTrace search_better(const Dataset& data, const Frame& start, const IndexConfig& config,
                           const OptimizerParams& params);

/// Best-of-random-directions probe followed by a golden-section line search.
PursuitTrace search_geodesic(const Dataset& data, const Frame& start, const IndexConfig& config,
                             const OptimizerParams& params);

/// Dispatches on params.method.
PursuitTrace pursue(const Dataset& data, const Frame& start, const IndexConfig& config,
                    const OptimizerParams& params);

/// Inserts steps_per_segment - 1 geodesic frames between consecutive key frames (start,
/// accepted, final) and evaluates them. Key records are copied unchanged.
PursuitTrace interpolated_trace(const Dataset& data, const PursuitTrace& trace, int steps_per_segment);

const char* to_string(Method m);
const char* to_string(RecordKind k);
Method method_from_string(const std::string& s);

}  // namespace secpur
