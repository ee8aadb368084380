#include "geflab/serialize.hpp"

#include <stdexcept>

namespace geflab {

nlohmann::ordered_json gef_to_json(const TruncatedGef& gef) {
  nlohmann::ordered_json j;
  j["degree"] = gef.degree;
  j["certified_radius"] = gef.certified_radius;
  j["tail_bound"] = gef.tail_bound;
  j["tail_failure_log_prob"] = gef.tail_failure_log_prob;
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : gef.coefficients)
    coeffs.push_back(nlohmann::ordered_json::array({c.real(), c.imag()}));
  j["coefficients"] = std::move(coeffs);
  return j;
}

TruncatedGef gef_from_json(const nlohmann::json& j) {
  TruncatedGef gef;
  gef.degree = j.at("degree").get<int>();
  gef.certified_radius = j.at("certified_radius").get<double>();
  gef.tail_bound = j.at("tail_bound").get<double>();
  gef.tail_failure_log_prob = j.at("tail_failure_log_prob").get<double>();
  for (const auto& c : j.at("coefficients"))
    gef.coefficients.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  if (int(gef.coefficients.size()) != gef.degree + 1)
    throw std::invalid_argument("gef_from_json: coefficient count does not match degree");
  return gef;
}

nlohmann::ordered_json zeros_to_json(const DiscZeroSet& set) {
  nlohmann::ordered_json j;
  j["radius"] = set.radius;
  j["center"] = nlohmann::ordered_json::array({set.center.real(), set.center.imag()});
  j["max_poly_residual"] = set.max_poly_residual;
  auto zeros = nlohmann::ordered_json::array();
  for (const auto& z : set.zeros)
    zeros.push_back(nlohmann::ordered_json::array({z.real(), z.imag()}));
  j["zeros"] = std::move(zeros);
  return j;
}

}  // namespace geflab
