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

// Acceptance runner: evaluates each acceptance criterion on the generated
// scenario families and prints one PASS/FAIL line per criterion.

#include <discplan/bench.hpp>

#include "properties.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

namespace {

using namespace discplan;

struct Instance
{
  std::string label;
  Scenario scenario;
};

struct Outcome
{
  PlanResult plan;
  ValidationReport report;
};

Outcome run(const Scenario& s, OrderMode mode, std::size_t workers)
{
  PlanConfig cfg;
  cfg.order = mode;
  cfg.workers = workers;
  Outcome o{plan(s, cfg), {}};
  o.report = validate_trajectories(s, o.plan.assembly.trajectories, cfg.eps_val,
    o.plan.initial_length(), workers);
  return o;
}

std::string fmt(double v, int digits = 6)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int failures = 0;

void verdict(int k, bool pass, const std::string& what, const std::string& detail)
{
  std::printf("CRITERION %d %s: %s\n", k, pass ? "PASS" : "FAIL", what.c_str());
  if (!detail.empty())
    std::printf("    %s\n", detail.c_str());
  std::fflush(stdout);
  if (!pass)
    ++failures;
}

} // namespace

int main()
{
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

  // Instances of criterion 1 (also the bench instances of criterion 9).
  std::vector<Instance> instances;
  for (std::size_t m : {4, 10, 20, 50})
    instances.push_back({"grid m=" + std::to_string(m), generate_grid({.m = m, .seed = 1})});
  for (std::uint64_t seed : {1, 2, 3})
    instances.push_back({"triangles m=20 seed=" + std::to_string(seed),
      generate_triangles({.m = 20, .triangles = 10, .seed = seed})});
  for (std::size_t m : {4, 10, 20})
  {
    instances.push_back({"tunnel I m=" + std::to_string(m), generate_tunnel({.m = m, .version = TunnelVersion::I})});
    instances.push_back({"tunnel II m=" + std::to_string(m), generate_tunnel({.m = m, .version = TunnelVersion::II})});
  }
  for (std::size_t n : {8, 16})
    instances.push_back({"bad-input n=" + std::to_string(n), generate_bad_input(n)});

  std::map<std::string, Outcome> heuristic, given;
  for (const auto& inst : instances)
  {
    heuristic.emplace(inst.label, run(inst.scenario, OrderMode::Heuristic, workers));
    given.emplace(inst.label, run(inst.scenario, OrderMode::Given, workers));
  }

  //----------------------------------------------------------------------------
  {
    bool pass = true;
    std::string worst_label;
    double worst = 1e300;
    std::size_t violations = 0;
    for (const auto* runs : {&heuristic, &given})
      for (const auto& [label, o] : *runs)
      {
        violations += o.report.violation_count;
        if (o.report.min_robot_distance < worst)
        {
          worst = o.report.min_robot_distance;
          worst_label = label;
        }
        pass = pass && o.report.ok() && o.report.min_robot_distance >= 2.0 - 1e-6;
      }
    verdict(1, pass, "end-to-end safety on grid, triangles, tunnel I/II and bad-input instances",
      std::to_string(instances.size()) + " instances x {heuristic, given}: " + std::to_string(violations)
        + " violations, min centre distance " + fmt(worst, 12) + " (" + worst_label + ")");
  }

  //----------------------------------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    for (std::size_t m : {4, 10, 20})
    {
      const auto label = "tunnel II m=" + std::to_string(m);
      const double h = heuristic.at(label).report.dist_ratio;
      const double g = given.at(label).report.dist_ratio;
      pass = pass && std::abs(h - 1.0) <= 1e-9 && g >= 1.05;
      detail += "m=" + std::to_string(m) + ": heuristic " + fmt(h, 15) + ", given " + fmt(g) + "; ";
    }
    verdict(2, pass, "tunnel II: heuristic dist ratio 1, given order above 1.05", detail);
  }

  //----------------------------------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    for (std::size_t m : {4, 8})
    {
      const auto s = generate_tunnel({.m = m, .version = TunnelVersion::I});
      const auto areas = find_all_revolving_areas(s);
      const auto paths = shortest_paths(s);
      const auto graphs = build_interference_graphs(s, areas, paths);
      ExecutionOrder id(m);
      std::iota(id.begin(), id.end(), 0);
      ExecutionOrder rev(id.rbegin(), id.rend());
      const auto h = heuristic_order(graphs.b, graphs.c, 0);
      const std::size_t need = m * (m - 1) / 2;
      const auto cg = count_interferences(id, graphs.b);
      const auto ch = count_interferences(h, graphs.b);
      const auto cr = count_interferences(rev, graphs.b);
      pass = pass && cg >= need && ch >= need && cr >= need;
      detail += "m=" + std::to_string(m) + " need " + std::to_string(need) + ": given "
        + std::to_string(cg) + ", heuristic " + std::to_string(ch) + ", reversed "
        + std::to_string(cr) + "; ";
    }
    verdict(3, pass, "tunnel I: interference count at least m(m-1)/2 under every tested order", detail);
  }

  //----------------------------------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    for (std::size_t m : {4, 10, 20, 50})
    {
      const double r = heuristic.at("grid m=" + std::to_string(m)).report.dist_ratio;
      pass = pass && r < 3.0;
      detail += "m=" + std::to_string(m) + ": " + fmt(r) + "; ";
    }
    verdict(4, pass, "grid dist ratio below 3", detail);
  }

  //----------------------------------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed : {1, 2, 3})
    {
      const double r = heuristic.at("triangles m=20 seed=" + std::to_string(seed)).report.dist_ratio;
      pass = pass && r < 1.1;
      detail += "seed " + std::to_string(seed) + ": " + fmt(r) + "; ";
    }
    verdict(5, pass, "triangles (m=20, 10 triangles) dist ratio below 1.1", detail);
  }

  //----------------------------------------------------------------------------
  {
    std::vector<props::Result> results{props::center_spacing(), props::retraction_offset(), props::retraction_separation()};
    for (auto c : {props::PropCase::Disjoint, props::PropCase::OnAxis, props::PropCase::Behind,
           props::PropCase::Between, props::PropCase::BeyondLeft, props::PropCase::BeyondRight})
      results.push_back(props::retracted_host_clearance(c));
    results.push_back(props::detour_clearance());
    const char* names[] = {"centre spacing", "retraction offset", "retraction separation",
      "host clearance (disjoint)", "host clearance (on axis)", "host clearance (behind)",
      "host clearance (between)", "host clearance (beyond left)", "host clearance (beyond right)",
      "detour clearance"};
    bool pass = true;
    std::string detail;
    for (std::size_t k = 0; k < results.size(); ++k)
    {
      pass = pass && results[k].ok(10000);
      detail += std::string(k ? "\n    " : "") + names[k] + ": " + std::to_string(results[k].cases)
        + " cases, " + std::to_string(results[k].failures) + " failures (" + results[k].note + ")";
    }
    verdict(6, pass, "randomized property suites, at least 1e4 cases each", detail);
  }

  //----------------------------------------------------------------------------
  {
    std::vector<std::size_t> counts;
    bool pass = true;
    std::string detail;
    for (std::size_t n : {8, 16, 32})
    {
      const auto c = props::bad_input_crossings(n);
      pass = pass && static_cast<double>(c) >= n / 4.0 && (counts.empty() || c > counts.back());
      counts.push_back(c);
      detail += "n=" + std::to_string(n) + ": " + std::to_string(c) + " crossings; ";
    }
    std::size_t far = 0;
    for (const auto& [label, o] : heuristic)
    {
      const auto& inst = *std::find_if(instances.begin(), instances.end(),
        [&](const Instance& i) { return i.label == label; });
      far = std::max(far, props::max_far_segments(inst.scenario, o.plan.areas, o.plan.paths));
    }
    {
      const auto s = generate_bad_input(32);
      far = std::max(far, props::max_far_segments(s, find_all_revolving_areas(s), shortest_paths(s)));
    }
    pass = pass && far <= 18;
    detail += "max far segments per circle " + std::to_string(far);
    verdict(7, pass, "bad-input crossing growth and far-segment bound", detail);
  }

  //----------------------------------------------------------------------------
  {
    const auto a = props::spp_vs_grid(50, workers);
    const auto b = props::bruteforce_vs_dp(100);
    const auto c = props::revolve_vs_sampling(1000, workers);
    const bool pass = a.ok(50) && b.ok(100) && c.ok(1000);
    verdict(8, pass, "oracle equivalences (spp, ordering, revolving areas)",
      "spp vs grid Dijkstra: " + std::to_string(a.cases) + " scenes, " + std::to_string(a.failures)
        + " beyond 1% (" + a.note + ")\n    brute force vs subset DP: " + std::to_string(b.cases)
        + " graphs, " + std::to_string(b.failures) + " mismatches\n    revolve vs sampling: "
        + std::to_string(c.cases) + " positions, " + std::to_string(c.failures) + " mismatches ("
        + c.note + ")");
  }

  //----------------------------------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    std::size_t instances_checked = 0;
    for (const auto* runs : {&heuristic, &given})
      for (const auto& [label, o] : *runs)
      {
        if (label.rfind("bad-input", 0) == 0)
          continue;
        ++instances_checked;
        const auto acc = o.plan.accounting();
        if (!acc.total_ok() || !acc.intervals_ok())
        {
          pass = false;
          // Same bound with each lead segment charged |c_z - z| + 1.
          double offset_bound = acc.initial + kPi * static_cast<double>(acc.detours) + acc.retraction_sum;
          for (const auto& mv : o.plan.assembly.movers)
            for (const auto& iv : mv.intervals)
              offset_bound += 2.0 * (dist(o.plan.areas[iv.owner].center, o.plan.areas[iv.owner].z) + 1.0);
          detail += label + (runs == &heuristic ? " (heuristic)" : " (given)") + ": final "
            + fmt(acc.final_total, 10) + " > bound " + fmt(acc.bound(), 10)
            + "; with offset-aware leads the bound is " + fmt(offset_bound, 10)
            + (acc.intervals_ok() ? "" : "; an interval's retraction exceeds its sub-path") + "\n    ";
        }
      }
    detail += std::to_string(instances_checked) + " bench runs checked";
    verdict(9, pass, "length accounting bound on every bench instance", detail);
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("total acceptance time %.1f s; %d criteria failed\n", secs, failures);
  return failures == 0 ? 0 : 1;
}
