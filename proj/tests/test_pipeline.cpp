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

#include <catch_amalgamated.hpp>

#include <discplan/bench.hpp>
#include <discplan/generators.hpp>
#include <discplan/planner.hpp>
#include <discplan/svg.hpp>
#include <discplan/validate.hpp>

#include <sstream>

using namespace discplan;

namespace {

Trajectory straight(const Point& a, const Point& b, double horizon)
{
  Trajectory t;
  t.timeline.push_back({0.0, horizon, Move{Segment{a, b}}});
  return t;
}

std::string dump(const std::vector<Trajectory>& robots)
{
  std::ostringstream out;
  write_trajectories(out, robots);
  return out.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle)
{
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1))
    ++n;
  return n;
}

} // namespace

TEST_CASE("trajectory text format round trip", "[trajectory]")
{
  const auto s = generate_tunnel({.m = 2, .version = TunnelVersion::I});
  const auto r = plan(s, {.order = OrderMode::Given});
  const auto& robots = r.assembly.trajectories;
  bool has_retract = false;
  for (const auto& t : robots)
    for (const auto& m : t.timeline)
      has_retract = has_retract || std::holds_alternative<Retract>(m.motion);
  CHECK(has_retract);

  std::istringstream in(dump(robots));
  const auto back = read_trajectories(in);
  REQUIRE(back.size() == robots.size());
  for (std::size_t i = 0; i < robots.size(); ++i)
  {
    CHECK(back[i].timeline.size() == robots[i].timeline.size());
    CHECK(back[i].length() == Catch::Approx(robots[i].length()).epsilon(1e-12));
    for (int k = 0; k <= 200; ++k)
    {
      const double t = 2.0 * k / 200.0;
      CHECK(dist(back[i].at(t), robots[i].at(t)) < 1e-12);
    }
  }
  CHECK(dump(back) == dump(robots));

  std::istringstream bad("discplan-trajectories 1\nrobots 1\nrobot 0 entries 1\nwobble 0 1\nend\n");
  CHECK_THROWS(read_trajectories(bad));
}

TEST_CASE("validator negative controls", "[validate]")
{
  SECTION("robots swapping head-on collide")
  {
    Scenario s;
    s.starts = {{0, 0}, {10, 0}};
    s.targets = {{10, 0}, {0, 0}};
    const auto rep = validate_trajectories(s, {straight({0, 0}, {10, 0}, 2), straight({10, 0}, {0, 0}, 2)});
    CHECK_FALSE(rep.ok());
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations.front().kind == ViolationKind::RobotRobot);
    CHECK(rep.min_robot_distance < 0.05);
  }
  SECTION("crossing an obstacle")
  {
    Scenario s;
    s.obstacles = {Polygon{{{4, -1}, {6, -1}, {6, 1}, {4, 1}}}};
    s.starts = {{0, 0}};
    s.targets = {{10, 0}};
    const auto rep = validate_trajectories(s, {straight({0, 0}, {10, 0}, 1)});
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.front().kind == ViolationKind::RobotObstacle);
    CHECK(rep.min_obstacle_clearance == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("wrong target")
  {
    Scenario s;
    s.starts = {{0, 0}};
    s.targets = {{10, 0}};
    const auto rep = validate_trajectories(s, {straight({0, 0}, {9, 0}, 1)});
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.front().kind == ViolationKind::Endpoint);
  }
  SECTION("jump between motions")
  {
    Scenario s;
    s.starts = {{0, 0}};
    s.targets = {{10, 0}};
    Trajectory t;
    t.timeline.push_back({0.0, 0.5, Move{Segment{{0, 0}, {5, 0}}}});
    t.timeline.push_back({0.5, 1.0, Move{Segment{{5, 3}, {10, 0}}}});
    const auto rep = validate_trajectories(s, {t});
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.front().kind == ViolationKind::Continuity);
  }
  SECTION("wrong robot count")
  {
    Scenario s;
    s.starts = {{0, 0}};
    s.targets = {{10, 0}};
    CHECK_FALSE(validate_trajectories(s, {}).ok());
  }
}

TEST_CASE("single robot in free space", "[pipeline]")
{
  Scenario s;
  s.starts = {{0, 0}};
  s.targets = {{7, 3}};
  const auto r = plan(s);
  const auto rep = validate_trajectories(s, r.assembly.trajectories, kValidationEps, r.initial_length());
  CHECK(rep.ok());
  CHECK(rep.total_length == Catch::Approx(std::hypot(7.0, 3.0)).epsilon(1e-12));
  CHECK(rep.dist_ratio == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid end to end", "[pipeline]")
{
  const auto s = generate_grid({.m = 10, .seed = 4});
  const auto r = plan(s);
  const auto rep = validate_trajectories(s, r.assembly.trajectories, kValidationEps, r.initial_length());
  INFO(rep.violation_count);
  CHECK(rep.ok());
  CHECK(rep.min_robot_distance >= 2.0 - kValidationEps);
  CHECK(rep.min_obstacle_clearance >= 1.0 - kValidationEps);
  CHECK(rep.dist_ratio >= 1.0);
  for (std::size_t i = 0; i < s.robot_count(); ++i)
  {
    CHECK(dist(r.assembly.trajectories[i].start(), s.starts[i]) < 1e-9);
    CHECK(dist(r.assembly.trajectories[i].end(), s.targets[i]) < 1e-9);
    CHECK(r.assembly.trajectories[i].t_end() == Catch::Approx(10.0));
  }
  const auto acc = r.accounting();
  CHECK(acc.total_ok(1e-6));
}

TEST_CASE("tunnel I needs retractions", "[pipeline]")
{
  const auto s = generate_tunnel({.m = 2, .version = TunnelVersion::I});
  for (auto mode : {OrderMode::Given, OrderMode::Heuristic, OrderMode::BruteForce})
  {
    const auto r = plan(s, {.order = mode});
    std::size_t intervals = 0;
    for (const auto& mv : r.assembly.movers)
      intervals += mv.intervals.size();
    CHECK(intervals >= 1);
    CHECK(r.chosen_count_b >= 1);
    CHECK(validate_trajectories(s, r.assembly.trajectories).ok());
    CHECK(r.accounting().intervals_ok(1e-9));
  }
}

TEST_CASE("planning is deterministic", "[pipeline]")
{
  const auto s = generate_triangles({.m = 6, .triangles = 4, .seed = 2});
  const auto a = plan(s, {.seed = 5});
  const auto b = plan(s, {.seed = 5, .workers = 3});
  CHECK(a.order == b.order);
  CHECK(dump(a.assembly.trajectories) == dump(b.assembly.trajectories));
}

TEST_CASE("svg rendering", "[svg]")
{
  SECTION("empty scenario frame")
  {
    const auto svg = render_frame(Scenario{}, {}, 0.0);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(occurrences(svg, "<circle") == 0);
  }
  SECTION("static overview draws three circles per revolving area")
  {
    const auto s = generate_grid({.m = 4, .seed = 1});
    const auto r = plan(s);
    const auto svg = render_static(s, r.areas, r.paths, r.assembly.trajectories);
    CHECK(occurrences(svg, "<circle") == 3 * 8 + 2 * 4);
    CHECK(occurrences(svg, "<path") == 8);
    const auto frames = render_frames(s, r.assembly.trajectories, 3);
    REQUIRE(frames.size() == 3);
    CHECK(occurrences(frames[1], "<circle") == 4);
  }
}

TEST_CASE("bench harness", "[bench]")
{
  const auto cases = bench_cases("tunnel2", {3});
  REQUIRE(cases.size() == 1);
  const auto rows = run_bench(cases);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].heuristic.violations == 0);
  CHECK(rows[0].given.violations == 0);
  CHECK(rows[0].heuristic.dist_ratio == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(rows[0].given.dist_ratio > 1.0);
  const auto table = format_bench_table(rows);
  CHECK(table.find("tunnel2") != std::string::npos);
  CHECK_THROWS(bench_cases("nosuch"));
}
