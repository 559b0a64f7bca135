// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "epsobol/testing.hpp"

namespace epsobol {

inline TestMethod test_method_from_string(const std::string& s) {
  if (s == "mc-weighted-chi2") return TestMethod::McWeightedChi2;
  if (s == "tsvd-chi2") return TestMethod::TsvdChi2;
  if (s == "pf-gaussian") return TestMethod::PfGaussian;
  throw std::invalid_argument("unknown test method '" + s + "'");
}

inline void to_json(nlohmann::json& j, const TestReport& r) {
  j = nlohmann::json{{"method", to_string(r.method)},
                     {"statistic", r.statistic},
                     {"p_value", r.p_value},
                     {"dof", r.dof},
                     {"weights", r.weights},
                     {"mc_draws", r.mc_draws},
                     {"seed", r.seed},
                     {"design_digest", r.design_digest},
                     {"k_points", r.k_points},
                     {"tau", r.tau},
                     {"threshold", r.threshold}};
}

inline void from_json(const nlohmann::json& j, TestReport& r) {
  r.method = test_method_from_string(j.at("method").get<std::string>());
  j.at("statistic").get_to(r.statistic);
  j.at("p_value").get_to(r.p_value);
  j.at("dof").get_to(r.dof);
  j.at("weights").get_to(r.weights);
  j.at("mc_draws").get_to(r.mc_draws);
  j.at("seed").get_to(r.seed);
  j.at("design_digest").get_to(r.design_digest);
  j.at("k_points").get_to(r.k_points);
  j.at("tau").get_to(r.tau);
  j.at("threshold").get_to(r.threshold);
}

}  // namespace epsobol
