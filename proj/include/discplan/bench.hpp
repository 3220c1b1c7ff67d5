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

#ifndef DISCPLAN__BENCH_HPP
#define DISCPLAN__BENCH_HPP

#include "generators.hpp"
#include "planner.hpp"

#include <cstdio>

namespace discplan {

struct BenchCase
{
  std::string suite;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  Scenario scenario;
};

/// Outcome of planning and validating one case under one ordering mode.
struct BenchRun
{
  double seconds = 0.0;
  double dist_ratio = 0.0;
  std::size_t violations = 0;
  double min_robot_distance = 0.0;
  std::size_t count_b = 0;
  LengthAccounting accounting;
};

struct BenchRow
{
  std::string suite;
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  BenchRun heuristic;
  BenchRun given;
};

inline std::vector<std::string> bench_suites()
{
  return {"grid", "triangles", "tunnel1", "tunnel2"};
}

inline std::vector<std::size_t> default_sizes(const std::string& suite)
{
  if (suite == "grid")
    return {4, 10, 20, 50};
  if (suite == "triangles")
    return {20};
  return {4, 10, 20};
}

/// Cases of a suite. Grid uses seed 1, triangles seeds 1..3 per size;
/// tunnels are deterministic and report seed 0.
inline std::vector<BenchCase> bench_cases(const std::string& suite, std::vector<std::size_t> sizes = {})
{
  if (sizes.empty())
    sizes = default_sizes(suite);
  std::vector<BenchCase> out;
  for (auto m : sizes)
  {
    if (suite == "grid")
      out.push_back({suite, m, 1, generate_grid({.m = m, .seed = 1})});
    else if (suite == "triangles")
      for (std::uint64_t seed = 1; seed <= 3; ++seed)
        out.push_back({suite, m, seed, generate_triangles({.m = m, .triangles = 10, .seed = seed})});
    else if (suite == "tunnel1")
      out.push_back({suite, m, 0, generate_tunnel({.m = m, .version = TunnelVersion::I})});
    else if (suite == "tunnel2")
      out.push_back({suite, m, 0, generate_tunnel({.m = m, .version = TunnelVersion::II})});
    else
      throw std::invalid_argument("unknown bench suite '" + suite + "'");
  }
  return out;
}

inline BenchRun run_case(const Scenario& s, OrderMode mode, std::size_t workers)
{
  PlanConfig cfg;
  cfg.order = mode;
  cfg.workers = workers;
  const auto r = plan(s, cfg);
  const auto v = validate_trajectories(s, r.assembly.trajectories, cfg.eps_val,
    r.initial_length(), workers);
  BenchRun out;
  out.seconds = r.seconds;
  out.dist_ratio = v.dist_ratio;
  out.violations = v.violation_count;
  out.min_robot_distance = v.min_robot_distance;
  out.count_b = r.chosen_count_b;
  out.accounting = r.accounting();
  return out;
}

inline std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, std::size_t workers = 1)
{
  std::vector<BenchRow> rows;
  for (const auto& c : cases)
  {
    BenchRow row;
    row.suite = c.suite;
    row.m = c.m;
    row.n = c.scenario.vertex_count();
    row.seed = c.seed;
    row.heuristic = run_case(c.scenario, OrderMode::Heuristic, workers);
    row.given = run_case(c.scenario, OrderMode::Given, workers);
    rows.push_back(row);
  }
  return rows;
}

/// Fixed-width table for terminals.
inline std::string format_bench_table(const std::vector<BenchRow>& rows)
{
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %5s %6s %5s | %9s %10s %5s | %9s %10s %5s\n",
    "suite", "m", "n", "seed", "time(s)", "dist-ratio", "viol", "time(s)", "dist-ratio", "viol");
  out << std::string(30, ' ') << "with heuristic" << std::string(15, ' ') << "given order\n" << line;
  for (const auto& r : rows)
  {
    std::snprintf(line, sizeof line, "%-10s %5zu %6zu %5llu | %9.3f %10.4f %5zu | %9.3f %10.4f %5zu\n",
      r.suite.c_str(), r.m, r.n, static_cast<unsigned long long>(r.seed), r.heuristic.seconds,
      r.heuristic.dist_ratio, r.heuristic.violations, r.given.seconds, r.given.dist_ratio,
      r.given.violations);
    out << line;
  }
  return out.str();
}

} // namespace discplan

#endif // DISCPLAN__BENCH_HPP
