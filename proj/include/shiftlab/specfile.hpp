#pragma once

#include "shiftlab/weights.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace shiftlab {

// Weight-spec file format (JSON):
//   {"kind": "blocks", "runs": [["2", 5], ["1", "inf"]]}
//   {"kind": "builtin", "name": "menet"}
//   {"kind": "builtin", "name": "block4-geometric", "params": {"base": 3}}
// Values are decimal strings parsed as exact rationals ("0.5", "4", "3/2");
// plain JSON integers are accepted too. Unknown fields are rejected; run
// diagnostics name the offending run index.
WeightSpec weight_spec_from_json(const nlohmann::json& j);
WeightSpec load_weight_spec(const std::string& path);

}  // namespace shiftlab
