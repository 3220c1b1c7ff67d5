/*
 * Copyright (C) 2026 The discplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

// JSON encodings of reports; needs nlohmann/json on the include path.

#ifndef DISCPLAN__JSON_IO_HPP
#define DISCPLAN__JSON_IO_HPP

#include "bench.hpp"
#include "validate.hpp"

#include <json.hpp>

namespace discplan {

inline nlohmann::json finite_or_null(double v)
{
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const ValidationReport& r)
{
  nlohmann::json j;
  j["ok"] = r.ok();
  j["robots"] = r.robot_count;
  j["samples"] = r.samples;
  j["violation_count"] = r.violation_count;
  j["min_robot_robot_clearance"] = finite_or_null(r.min_robot_distance);
  j["min_obstacle_clearance"] = finite_or_null(r.min_obstacle_clearance);
  j["total_length"] = r.total_length;
  j["baseline_length"] = r.baseline_length;
  j["dist_ratio"] = finite_or_null(r.dist_ratio);
  auto& v = j["violations"] = nlohmann::json::array();
  for (const auto& x : r.violations)
  {
    nlohmann::json e{{"time", x.time}, {"kind", to_string(x.kind)}, {"robot", x.robot},
      {"value", x.value}};
    if (x.kind == ViolationKind::RobotRobot)
      e["other"] = x.other;
    v.push_back(e);
  }
  return j;
}

inline nlohmann::json to_json(const LengthAccounting& a)
{
  return {{"initial", a.initial}, {"final", a.final_total}, {"detours", a.detours},
    {"intervals", a.intervals}, {"retraction_sum", a.retraction_sum}, {"bound", a.bound()},
    {"total_ok", a.total_ok()}, {"intervals_ok", a.intervals_ok()}};
}

inline nlohmann::json to_json(const BenchRun& r)
{
  return {{"seconds", r.seconds}, {"dist_ratio", finite_or_null(r.dist_ratio)},
    {"violations", r.violations}, {"min_robot_robot_clearance", finite_or_null(r.min_robot_distance)},
    {"interferences_b", r.count_b}, {"accounting", to_json(r.accounting)}};
}

inline nlohmann::json to_json(const std::vector<BenchRow>& rows)
{
  auto out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"suite", r.suite}, {"m", r.m}, {"n", r.n}, {"seed", r.seed},
      {"heuristic", to_json(r.heuristic)}, {"given", to_json(r.given)}});
  return out;
}

} // namespace discplan

#endif // DISCPLAN__JSON_IO_HPP
