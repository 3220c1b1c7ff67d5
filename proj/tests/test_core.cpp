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

#include <discplan/generators.hpp>
#include <discplan/intersect.hpp>
#include <discplan/offset.hpp>
#include <discplan/revolve.hpp>
#include <discplan/scenario.hpp>

#include "oracles.hpp"

#include <random>
#include <sstream>

using namespace discplan;
using Catch::Approx;

//==============================================================================
TEST_CASE("circle_circle_intersect basic configurations", "[geom]")
{
  auto tangent = circle_circle_intersect({0, 0}, 1, {2, 0}, 1);
  REQUIRE(tangent.tangent);
  REQUIRE(tangent.points.size() == 1);
  CHECK(tangent.points[0].x == Approx(1.0));
  CHECK(tangent.points[0].y == Approx(0.0).margin(1e-12));

  auto lens = circle_circle_intersect({0, 0}, 1, {1, 0}, 1);
  REQUIRE(lens.points.size() == 2);
  CHECK_FALSE(lens.tangent);
  for (const auto& p : lens.points)
  {
    CHECK(p.x == Approx(0.5));
    CHECK(std::abs(p.y) == Approx(std::sqrt(3.0) / 2.0));
  }

  CHECK(circle_circle_intersect({0, 0}, 1, {5, 0}, 1).points.empty());
}

TEST_CASE("circle_circle_intersect points lie on both circles", "[geom]")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0), r(0.1, 3.0);
  for (int k = 0; k < 10000; ++k)
  {
    const Point c1{u(rng), u(rng)}, c2{u(rng), u(rng)};
    const double r1 = r(rng), r2 = r(rng);
    for (const auto& q : circle_circle_intersect(c1, r1, c2, r2).points)
    {
      CHECK(std::abs(dist(q, c1) - r1) <= 1e-9);
      CHECK(std::abs(dist(q, c2) - r2) <= 1e-9);
    }
  }
}

TEST_CASE("piece_circle_intersect examples", "[geom]")
{
  const auto chord = piece_circle_intersect(Segment{{-5, 0}, {5, 0}}, {0, 0}, 1);
  REQUIRE(chord.size() == 2);
  CHECK(chord[0].point.x == Approx(-1.0));
  CHECK(chord[1].point.x == Approx(1.0));
  CHECK(chord[0].param < chord[1].param);

  CHECK(piece_circle_intersect(Segment{{-5, 1}, {5, 1}}, {0, 0}, 1).empty());

  const CircArc arc{{0, 0}, 1.0, 0.0, kPi, Orientation::CCW};
  CHECK(piece_circle_intersect(arc, {0, 2}, 1).empty());
}

TEST_CASE("piece_circle_intersect matches a parameter scan", "[geom][oracle]")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0), rr(0.3, 2.5), ang(0.0, kTwoPi);
  std::uniform_real_distribution<double> sweep(0.1, kTwoPi - 0.1);
  int compared = 0;
  for (int k = 0; k < 200; ++k)
  {
    Piece piece = k % 2 == 0
      ? Piece{Segment{{u(rng), u(rng)}, {u(rng), u(rng)}}}
      : Piece{CircArc{{u(rng), u(rng)}, rr(rng), ang(rng), sweep(rng),
          k % 4 == 1 ? Orientation::CCW : Orientation::CW}};
    const Point c{u(rng), u(rng)};
    const double r = rr(rng);
    const auto hits = piece_circle_intersect(piece, c, r);
    const auto scan = oracle::scan_crossings(piece, c, r, 100000);
    REQUIRE(hits.size() == scan.size());
    for (std::size_t i = 0; i < hits.size(); ++i)
      CHECK(std::abs(hits[i].param - scan[i]) <= 2e-5);
    ++compared;
  }
  CHECK(compared == 200);
}

//==============================================================================
TEST_CASE("inflate_polygon on a unit square", "[geom]")
{
  const Polygon square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const auto inflated = inflate_polygon(square, 1.0);
  std::size_t arcs = 0, segments = 0;
  for (const auto& p : inflated.boundary.pieces)
    (is_arc(p) ? arcs : segments)++;
  CHECK(arcs == 4);
  CHECK(segments == 4);
  CHECK(inflated.boundary.length() == Approx(4.0 + kTwoPi));
  CHECK(inflated.boundary.max_gap() <= kEpsGeom);
  CHECK(dist(inflated.boundary.start(), inflated.boundary.end()) <= kEpsGeom);
}

TEST_CASE("inflate_polygon turning of a triangle", "[geom]")
{
  const Polygon tri{{{0, 0}, {4, 0}, {1, 3}}};
  const auto inflated = inflate_polygon(tri, 2.0);
  double turning = 0.0;
  std::size_t arcs = 0;
  for (const auto& p : inflated.boundary.pieces)
    if (const auto* a = std::get_if<CircArc>(&p))
    {
      turning += a->sweep;
      CHECK(a->radius == 2.0);
      ++arcs;
    }
  CHECK(arcs == 3);
  CHECK(turning == Approx(kTwoPi));
}

TEST_CASE("inflate_polygon matches a point-sampled offset", "[geom][oracle]")
{
  const Polygon ell{{{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}}};
  REQUIRE(ell.is_ccw());
  const double r = 0.5;
  const auto inflated = inflate_polygon(ell, r);

  std::size_t arcs = 0;
  for (const auto& p : inflated.boundary.pieces)
    arcs += is_arc(p) ? 1 : 0;
  CHECK(arcs == 5);

  // Boundary samples sit at distance r from the polygon.
  const double L = inflated.boundary.param_end();
  for (int k = 0; k < 20000; ++k)
  {
    const Point p = inflated.boundary.at(L * k / 20000.0);
    CHECK(std::abs(dist_point_polygon(p, ell) - r) <= 1e-9);
  }
  // Convex vertices sit exactly r from the boundary; the reflex one farther.
  for (std::size_t i = 0; i < ell.size(); ++i)
  {
    const double d = dist_point_polycurve(ell[i], inflated.boundary);
    if (ell.is_convex_vertex(i))
      CHECK(std::abs(d - r) <= 1e-9);
    else
      CHECK(d >= r - 1e-9);
  }
  // Points at distance exactly r from the polygon lie on the boundary.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 5.0);
  int checked = 0;
  while (checked < 2000)
  {
    const Point p{u(rng), u(rng)};
    const double d = dist_point_polygon(p, ell);
    if (d <= 0.0)
      continue;
    // Push p along the gradient onto the offset level set.
    const Point foot = oracle::closest_point_polygon(p, ell);
    const Point q = foot + unit(p - foot) * r;
    if (std::abs(dist_point_polygon(q, ell) - r) > 1e-12)
      continue;
    CHECK(dist_point_polycurve(q, inflated.boundary) <= 1e-9);
    ++checked;
  }
}

TEST_CASE("inflate_polygon rejects degenerate input", "[geom]")
{
  const Polygon flat{{{0, 0}, {1, 0}, {2, 0}}};
  CHECK_THROWS_AS(inflate_polygon(flat, 1.0), DegenerateInput);
}

TEST_CASE("dist_point_polycurve examples", "[geom]")
{
  Polycurve seg;
  seg.append(Segment{{1, -1}, {1, 1}});
  CHECK(dist_point_polycurve({0, 0}, seg) == Approx(1.0));

  Polycurve circle;
  circle.append(CircArc{{0, 0}, 2.0, 0.0, kTwoPi, Orientation::CCW});
  CHECK(dist_point_polycurve({0, 0}, circle) == Approx(2.0));

  Polycurve tiny;
  tiny.append(Segment{{0, 0}, {0, 0.001}});
  CHECK(dist_point_polycurve({3, 4}, tiny) == Approx(dist({3, 4}, {0, 0.001})));
}

//==============================================================================
TEST_CASE("scenario file round trip", "[scenario]")
{
  const auto grid = generate_grid({.m = 20});
  std::stringstream ss;
  write_scenario(ss, grid);
  const auto back = read_scenario(ss);
  CHECK(back == grid);
}

TEST_CASE("scenario minimal file and errors", "[scenario]")
{
  std::istringstream ok(
    "discplan-scenario 1\nname tiny\nobstacles 0\nrobots 1\nrobot 0 0 0 10 0\nend\n");
  const auto s = read_scenario(ok);
  CHECK(s.robot_count() == 1);
  CHECK(s.targets[0] == Point{10, 0});

  std::istringstream inside(
    "discplan-scenario 1\nname bad\nobstacles 1\n"
    "polygon 4 -1 -1 1 -1 1 1 -1 1\nrobots 1\nrobot 0 0 0 10 0\nend\n");
  CHECK_THROWS_AS(read_scenario(inside), ValidationError);

  std::istringstream broken(
    "discplan-scenario 1\nname bad\nobstacles 1\npolygon 3 0 0 1\n");
  try
  {
    read_scenario(broken);
    FAIL("expected ParseError");
  }
  catch (const ParseError& e)
  {
    CHECK(e.line() == 4);
  }
}

//==============================================================================
TEST_CASE("grid generator layout", "[scenario]")
{
  const auto g = generate_grid({.m = 4, .seed = 1});
  REQUIRE(g.robot_count() == 4);
  double min_start = 1e9, min_target = 1e9;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
    {
      min_start = std::min(min_start, dist(g.starts[i], g.starts[j]));
      min_target = std::min(min_target, dist(g.targets[i], g.targets[j]));
    }
  CHECK(min_start == 3.0);
  CHECK(min_target == 3.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(g.starts[i].y > g.targets[j].y);
  REQUIRE_NOTHROW(validate_scenario(g));

  const auto one = generate_grid({.m = 1});
  CHECK(one.starts[0].y > one.targets[0].y);

  const auto a = generate_grid({.m = 20, .seed = 7});
  const auto b = generate_grid({.m = 20, .seed = 8});
  CHECK(a.targets != b.targets);
  auto sa = a.targets, sb = b.targets;
  auto less = [](const Point& p, const Point& q) { return std::tie(p.x, p.y) < std::tie(q.x, q.y); };
  std::sort(sa.begin(), sa.end(), less);
  std::sort(sb.begin(), sb.end(), less);
  CHECK(sa == sb);
  CHECK(a.starts == b.starts);

  CHECK_THROWS_AS(generate_grid({.m = 10, .cols = 2, .rows = 2}), CapacityError);
}

TEST_CASE("triangles generator", "[scenario]")
{
  const auto empty = generate_triangles({.m = 2, .triangles = 0, .seed = 1});
  CHECK(empty.obstacles.size() == 4);
  CHECK(empty.robot_count() == 2);

  const auto a = generate_triangles({.m = 20, .triangles = 10, .seed = 3});
  const auto b = generate_triangles({.m = 20, .triangles = 10, .seed = 3});
  CHECK(a == b);
  REQUIRE_NOTHROW(validate_scenario(a));
  CHECK(find_all_revolving_areas(a).size() == 40);

  CHECK_THROWS_AS(
    generate_triangles({.m = 20, .triangles = 10, .seed = 3, .side = 12.0,
      .min_radius = 1.0, .max_radius = 2.0, .retry_budget = 200}),
    SamplingExhausted);
}

TEST_CASE("tunnel generator", "[scenario]")
{
  for (std::size_t m : {2, 4, 10, 20})
    for (auto v : {TunnelVersion::I, TunnelVersion::II})
    {
      const auto t = generate_tunnel({.m = m, .version = v});
      CHECK(t.vertex_count() == 10 * m + 42);
      REQUIRE_NOTHROW(validate_scenario(t));
      const auto areas = find_all_revolving_areas(t);
      for (const auto& a : areas)
        CHECK(a.center == a.z);
    }
}

TEST_CASE("bad input generator", "[scenario]")
{
  const auto s = generate_bad_input(8);
  REQUIRE(s.robot_count() == 2);
  CHECK(s.obstacles.size() == 8);
  CHECK(s.starts[0] == Point{4, 0.5});
  CHECK(s.targets[0] == Point{12, 0.5});
  CHECK(s.starts[1] == Point{8, 0});
  CHECK(s.targets[1] == Point{0, 0});
  REQUIRE_NOTHROW(validate_scenario(s));

  for (std::size_t n : {8, 16, 32})
  {
    const auto b = generate_bad_input(n);
    const auto areas = find_all_revolving_areas(b);
    for (const auto& a : areas)
      CHECK(a.center == a.z);
    // Consecutive obstacles on each ring leave gaps narrower than a robot.
    for (std::size_t ring = 0; ring < 2; ++ring)
      for (std::size_t k = 0; k + 1 < n / 2; ++k)
      {
        const auto& p = b.obstacles[ring * n / 2 + k];
        const auto& q = b.obstacles[ring * n / 2 + k + 1];
        double gap = 1e9;
        for (std::size_t e = 0; e < 3; ++e)
          for (std::size_t f = 0; f < 3; ++f)
            gap = std::min(gap, dist_segment_segment(p[e], p.next(e), q[f], q.next(f)));
        CHECK(gap < 2.0);
      }
  }
  CHECK_NOTHROW(validate_scenario(generate_bad_input(4)));
}

//==============================================================================
TEST_CASE("neighbor index matches brute force", "[revolve][oracle]")
{
  const NeighborIndex far({{0, 0}, {5, 0}});
  CHECK(far.rb(0).empty());
  CHECK(far.rb(1).empty());
  const NeighborIndex edge({{0, 0}, {4, 0}});
  CHECK(edge.rb(0) == std::vector<std::size_t>{1});
  CHECK(edge.rb(1) == std::vector<std::size_t>{0});

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial)
  {
    std::vector<Point> pts;
    for (int k = 0; k < 50; ++k)
      pts.push_back({u(rng), u(rng)});
    const NeighborIndex index(pts);
    for (std::size_t k = 0; k < pts.size(); ++k)
    {
      std::vector<std::size_t> brute;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != k && dist(pts[j], pts[k]) <= 4.0)
          brute.push_back(j);
      CHECK(index.rb(k) == brute);
    }
  }
}

namespace {

Scenario make_scenario(std::vector<Polygon> obstacles, std::vector<Point> starts,
  std::vector<Point> targets)
{
  Scenario s;
  s.obstacles = std::move(obstacles);
  s.starts = std::move(starts);
  s.targets = std::move(targets);
  return s;
}

void check_area(const RevolvingArea& a, const Scenario& s)
{
  CHECK(dist(a.center, a.z) <= 1.0 + kEpsGeom);
  CHECK(dist_point_obstacles(a.center, s.obstacles) >= 2.0 - kEpsGeom);
  for (const auto& y : s.positions())
    if (!(y == a.z))
      CHECK(dist(a.center, y) >= 3.0 - kEpsGeom);
}

} // namespace

TEST_CASE("find_revolving_area examples", "[revolve]")
{
  SECTION("isolated position uses itself")
  {
    const auto s = make_scenario({}, {{0, 0}}, {{10, 0}});
    const auto areas = find_all_revolving_areas(s);
    CHECK(areas[0].center == areas[0].z);
    CHECK(areas[1].center == areas[1].z);
  }
  SECTION("position next to a wall shifts away")
  {
    const Polygon wall{{{-5, -3}, {5, -3}, {5, -1}, {-5, -1}}};
    const auto s = make_scenario({wall}, {{0, 0}}, {{0, 10}});
    const auto area = find_all_revolving_areas(s)[0];
    check_area(area, s);
    CHECK(area.center.y >= 1.0 - kEpsGeom);
    CHECK(oracle::revolve_feasible(area.z, s, 0));
  }
  SECTION("boxed position has none")
  {
    std::vector<Polygon> box{
      Polygon{{{-3, -3}, {3, -3}, {3, -1.25}, {-3, -1.25}}},
      Polygon{{{-3, 1.25}, {3, 1.25}, {3, 3}, {-3, 3}}},
      Polygon{{{-3, -1.25}, {-1.25, -1.25}, {-1.25, 1.25}, {-3, 1.25}}},
      Polygon{{{1.25, -1.25}, {3, -1.25}, {3, 1.25}, {1.25, 1.25}}}};
    const auto s = make_scenario(box, {{0, 0}}, {{20, 0}});
    const NeighborIndex index(s.positions());
    CHECK_FALSE(find_revolving_area(0, s, index).has_value());
    CHECK_FALSE(oracle::revolve_feasible({0, 0}, s, 0));
    try
    {
      find_all_revolving_areas(s);
      FAIL("expected AssumptionViolated");
    }
    catch (const AssumptionViolated& e)
    {
      CHECK(e.positions() == std::vector<std::size_t>{0});
    }
  }
  SECTION("neighbours 2.9 apart push centres apart")
  {
    const auto s = make_scenario({}, {{0, 0}}, {{2.9, 0}});
    const auto areas = find_all_revolving_areas(s);
    for (const auto& a : areas)
      check_area(a, s);
    CHECK(areas[0].center.x < 0.0);
    CHECK(areas[1].center.x > 2.9);
  }
  SECTION("osculating neighbours 2 apart")
  {
    const auto s = make_scenario({}, {{0, 0}}, {{2.0, 0}});
    const auto areas = find_all_revolving_areas(s);
    for (const auto& a : areas)
      check_area(a, s);
  }
  SECTION("grid uses the positions as centres")
  {
    const auto g = generate_grid({.m = 4});
    const auto areas = find_all_revolving_areas(g);
    REQUIRE(areas.size() == 8);
    for (const auto& a : areas)
      CHECK(a.center == a.z);
  }
}

TEST_CASE("revolving area centres are pairwise at least 2 apart", "[revolve]")
{
  for (std::uint64_t seed = 0; seed < 3; ++seed)
  {
    const auto s = generate_triangles({.m = 20, .triangles = 10, .seed = seed});
    const auto areas = find_all_revolving_areas(s, 2);
    for (std::size_t i = 0; i < areas.size(); ++i)
    {
      check_area(areas[i], s);
      for (std::size_t j = i + 1; j < areas.size(); ++j)
        CHECK(dist(areas[i].center, areas[j].center) >= 2.0 - kEpsGeom);
    }
  }
}
