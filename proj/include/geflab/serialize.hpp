#pragma once

#include "json.hpp"

#include "geflab/gef.hpp"
#include "geflab/zeros.hpp"

namespace geflab {

/// {degree, certified_radius, tail_bound, tail_failure_log_prob,
///  coefficients: [[re, im], ...]}
nlohmann::ordered_json gef_to_json(const TruncatedGef& gef);
TruncatedGef gef_from_json(const nlohmann::json& j);

nlohmann::ordered_json zeros_to_json(const DiscZeroSet& set);

}  // namespace geflab
