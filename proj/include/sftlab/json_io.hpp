#pragma once

#include <json.hpp>

#include "sftlab/cocycle.hpp"
#include "sftlab/experiments.hpp"
#include "sftlab/markov.hpp"

namespace sftlab {

using nlohmann::json;

// {"n": int, "rows": [[0|1,...],...]}
json matrix_to_json(const TransitionMatrix& A);
TransitionMatrix matrix_from_json(const json& j);

// {"P": [["1/2","1/2"],["1","0"]], "initial": [...], "tag": "stationary" |
//  "one-sided-uniform" | "general"}. Entries may be "p/q" strings (exact) or
// numbers (float); one float entry puts the whole spec in float mode. The
// transition matrix is derived from the positivity pattern of P.
MarkovSpec markov_from_json(const json& j);
json markov_to_json(const MarkovSpec& spec);

// {"range": r, "table": {"block": value-or-"p/q", ...}}
Potential potential_from_json(const TransitionMatrix& A, const json& j);

// {"kind": "symbol_count" | "transition_count" | "transposition" | "table",
//  "n": int, "l": int?, "table": {...}?}
CocycleSpec cocycle_from_json(const json& j);

// {"prefix": "...", "tail_preperiod": "...", "tail_period": "..."}
SequencePoint point_from_json(const json& j);
json point_to_json(const SequencePoint& p);

json report_to_json(const ExperimentReport& r);
// CSV: "# key=value" header lines, then "n,value" rows
std::string report_to_csv(const ExperimentReport& r, const json& config);

json load_json_file(const std::string& path);

}  // namespace sftlab
