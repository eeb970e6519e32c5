// JSON encodings shared by the library and the CLI.
//
//   state:      {"dim": n, "vec": [[re, im], ...]}   (gauge-fixed on write and read)
//   matrix:     row-major flat list of n*n [re, im] pairs
//   circle map: {"form": "rotation"|"conj_rotation"|"constant", "c": [re, im]}
//               {"form": "fold"} | {"form": "power", "k": k}
//               [[theta_in, theta_out], ...]            (sampled)
//   map:        {"family": ..., "params": {...}}

#pragma once

#include <json.hpp>

#include "wignerlab/circle_maps.hpp"
#include "wignerlab/projective.hpp"
#include "wignerlab/state_maps.hpp"

namespace wignerlab {

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const PureState& s);
PureState state_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMatrix& m);
/// Accepts the flat row-major form or a list of rows.
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json circle_map_to_json(const CircleMap& g);
/// Throws std::invalid_argument for opaque maps.
CircleMap circle_map_from_json(const nlohmann::json& j);

nlohmann::json map_to_json(const PureStateMap& m);
/// Rebuilds a map from its descriptor. Throws std::invalid_argument on an
/// unknown family or malformed parameters.
PureStateMap map_from_json(const nlohmann::json& j);

}  // namespace wignerlab
