#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "secpur/datagen.hpp"
#include "secpur/geometry.hpp"
#include "secpur/index.hpp"
#include "secpur/pursuit.hpp"
#include "secpur/topotrace.hpp"

namespace secpur {

using json = nlohmann::json;

/// {"p": p, "basis": [column-major, 2p reals]}
json to_json(const Frame& frame);
/// Accepts the layout above; a basis that is only approximately orthonormal is
/// re-orthonormalized. Throws InputError on malformed input.
Frame frame_from_json(const json& j);

/// {"k_r": int, "k_theta": int, "R": real}
json to_json(const PolarGrid& grid);
PolarGrid grid_from_json(const json& j);

json to_json(const IndexConfig& config);
IndexConfig index_config_from_json(const json& j);

json to_json(const IndexValue& value);
json to_json(const OptimizerParams& params);
OptimizerParams optimizer_from_json(const json& j);

/// {"optimizer":{...},"config":{...},"records":[{"step","kind","index","raw","basis"}],"warnings":[...]}
json to_json(const PursuitTrace& trace);

json to_json(const TopotraceSet& tset);
/// Long format: trace_id,alpha,index,raw
void write_topotrace_csv(std::ostream& os, const TopotraceSet& tset);

/// Header row of column names, then one row per point (plus a label column when present).
void write_dataset_csv(std::ostream& os, const Dataset& data, const std::string& label_column = "class");

/// Standardized parameters, physical parameters, squared masses and the physical flag.
void write_thdm_csv(std::ostream& os, const ThdmScan& scan);

/// Shortest round-trip decimal representation.
std::string format_number(double v);

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);
const char* to_string(ThresholdScale s);
ThresholdScale threshold_scale_from_string(const std::string& s);

}  // namespace secpur
