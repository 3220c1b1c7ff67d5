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

#ifndef DISCPLAN__PLANNER_HPP
#define DISCPLAN__PLANNER_HPP

#include "order.hpp"
#include "spp.hpp"
#include "validate.hpp"

#include <chrono>

namespace discplan {

enum class OrderMode
{
  Given,
  Heuristic,
  BruteForce,
};

inline OrderMode parse_order_mode(const std::string& s)
{
  if (s == "given")
    return OrderMode::Given;
  if (s == "heuristic")
    return OrderMode::Heuristic;
  if (s == "bruteforce")
    return OrderMode::BruteForce;
  throw std::invalid_argument("unknown order mode '" + s + "'");
}

inline const char* to_string(OrderMode m)
{
  switch (m)
  {
    case OrderMode::Given: return "given";
    case OrderMode::Heuristic: return "heuristic";
    case OrderMode::BruteForce: return "bruteforce";
  }
  return "unknown";
}

struct PlanConfig
{
  OrderMode order = OrderMode::Heuristic;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double eps_val = kValidationEps;
};

/// Totals behind the length bound: final length is at most the initial
/// length plus pi per detour, 2 per retraction interval and the summed
/// retraction lengths.
struct LengthAccounting
{
  double initial = 0.0;
  double final_total = 0.0;
  std::size_t detours = 0;
  std::size_t intervals = 0;
  double retraction_sum = 0.0;
  /// Largest retraction length minus host sub-path length over intervals.
  double worst_interval_excess = -std::numeric_limits<double>::infinity();

  double bound() const
  {
    return initial + kPi * static_cast<double>(detours)
      + 2.0 * static_cast<double>(intervals) + retraction_sum;
  }
  bool total_ok(double tol = 1e-9) const { return final_total <= bound() + tol; }
  bool intervals_ok(double tol = 1e-9) const { return worst_interval_excess <= tol; }
};

struct PlanResult
{
  std::vector<RevolvingArea> areas;
  std::vector<Polycurve> paths;
  InterferenceGraphs graphs;
  ExecutionOrder order;
  std::size_t given_count_b = 0;
  std::size_t chosen_count_b = 0;
  std::size_t chosen_count_c = 0;
  Assembly assembly;
  double seconds = 0.0;

  double initial_length() const
  {
    double total = 0.0;
    for (const auto& p : paths)
      total += p.length();
    return total;
  }

  LengthAccounting accounting() const
  {
    LengthAccounting a;
    a.initial = initial_length();
    for (const auto& t : assembly.trajectories)
      a.final_total += t.length();
    for (const auto& mv : assembly.movers)
    {
      a.detours += mv.detours;
      a.intervals += mv.intervals.size();
      for (const auto& iv : mv.intervals)
      {
        a.retraction_sum += iv.retraction_length;
        a.worst_interval_excess = std::max(a.worst_interval_excess,
          iv.retraction_length - iv.host_subpath_length);
      }
    }
    return a;
  }
};

/// Shortest paths for every robot, sharing one visibility structure.
inline std::vector<Polycurve> shortest_paths(const Scenario& scenario, std::size_t workers = 1)
{
  const ShortestPathPlanner planner(scenario.obstacles);
  std::vector<Polycurve> paths(scenario.robot_count());
  parallel_for(paths.size(), workers, [&](std::size_t i)
    {
      paths[i] = planner.plan(scenario.starts[i], scenario.targets[i]);
    });
  return paths;
}

/// Runs the whole pipeline: revolving areas, shortest paths, ordering,
/// path modification and retraction scheduling. Throws AssumptionViolated
/// or NoPath when the instance is outside the method's scope.
inline PlanResult plan(const Scenario& scenario, const PlanConfig& config = {})
{
  const auto clock_start = std::chrono::steady_clock::now();
  PlanResult r;
  r.areas = find_all_revolving_areas(scenario, config.workers);
  r.paths = shortest_paths(scenario, config.workers);
  r.graphs = build_interference_graphs(scenario, r.areas, r.paths, config.workers);

  const std::size_t m = scenario.robot_count();
  ExecutionOrder given(m);
  std::iota(given.begin(), given.end(), 0);
  switch (config.order)
  {
    case OrderMode::Given:
      r.order = given;
      break;
    case OrderMode::Heuristic:
      r.order = heuristic_order(r.graphs.b, r.graphs.c, config.seed);
      break;
    case OrderMode::BruteForce:
      r.order = optimal_order_bruteforce(r.graphs.b, config.workers).first;
      break;
  }
  r.given_count_b = count_interferences(given, r.graphs.b);
  r.chosen_count_b = count_interferences(r.order, r.graphs.b);
  r.chosen_count_c = count_interferences(r.order, r.graphs.c);
  r.assembly = assemble(scenario, r.areas, r.order, r.paths);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return r;
}

} // namespace discplan

#endif // DISCPLAN__PLANNER_HPP
