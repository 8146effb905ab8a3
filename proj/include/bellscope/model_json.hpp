#pragma once

#include "bellscope/models.hpp"

#include <json.hpp>

namespace bellscope {

/// {labels, outcomes: {X, X', Y, Y'}, densities: {XY, XY', X'Y, X'Y'}}
nlohmann::json to_json(const DiscreteModel& model);

/// Throws std::invalid_argument on a missing key, wrong type, or invalid table.
DiscreteModel discrete_model_from_json(const nlohmann::json& j);

} // namespace bellscope
