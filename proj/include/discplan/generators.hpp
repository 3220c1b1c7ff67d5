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

#ifndef DISCPLAN__GENERATORS_HPP
#define DISCPLAN__GENERATORS_HPP

#include "revolve.hpp"
#include "scenario.hpp"

#include <array>
#include <numeric>
#include <random>

namespace discplan {

class CapacityError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class SamplingExhausted : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Polygon rectangle(double x0, double y0, double x1, double y1)
{
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

/// Four wall slabs of the given thickness enclosing [x0,x1] x [y0,y1].
inline void add_walls(
  std::vector<Polygon>& out, double x0, double y0, double x1, double y1,
  double thickness = 1.0)
{
  const double t = thickness;
  out.push_back(rectangle(x0 - t, y0 - t, x1 + t, y0));
  out.push_back(rectangle(x0 - t, y1, x1 + t, y1 + t));
  out.push_back(rectangle(x0 - t, y0, x0, y1));
  out.push_back(rectangle(x1, y0, x1 + t, y1));
}

} // namespace detail

//==============================================================================
struct GridParams
{
  std::size_t m = 4;
  std::uint64_t seed = 0;
  double spacing = 3.0;
  /// Columns of each block; 0 picks ceil(sqrt(m)).
  std::size_t cols = 0;
  /// Rows of each block; 0 picks the fewest rows that fit m.
  std::size_t rows = 0;
};

/// Starts fill an upper block and targets a lower block of the same shape,
/// both on a square lattice, inside a walled room whose walls keep distance
/// 2 from the outermost positions.
inline Scenario generate_grid(const GridParams& params)
{
  if (params.m == 0)
    throw CapacityError("grid needs at least one robot");
  if (params.spacing < kTriggerRadius)
    throw CapacityError("grid spacing below 3");

  const std::size_t cols = params.cols != 0 ? params.cols
    : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(params.m))));
  const std::size_t rows = params.rows != 0 ? params.rows : (params.m + cols - 1) / cols;
  if (params.m > rows * cols)
    throw CapacityError("grid of " + std::to_string(rows) + "x" + std::to_string(cols)
      + " cannot host " + std::to_string(params.m) + " robots");

  const double d = params.spacing;
  Scenario s;
  s.name = "grid-m" + std::to_string(params.m) + "-seed" + std::to_string(params.seed);

  std::vector<Point> target_cells;
  for (std::size_t k = 0; k < params.m; ++k)
  {
    const double x = d * static_cast<double>(k % cols);
    const double r = static_cast<double>(k / cols);
    s.starts.push_back({x, d * (2.0 * rows - 1.0 - r)});
    target_cells.push_back({x, d * (rows - 1.0 - r)});
  }

  std::vector<std::size_t> perm(params.m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(params.seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < params.m; ++i)
    s.targets.push_back(target_cells[perm[i]]);

  const double margin = kRevolveRadius;
  detail::add_walls(s.obstacles, -margin, -margin,
    d * static_cast<double>(cols - 1) + margin,
    d * (2.0 * rows - 1.0) + margin);
  return s;
}

//==============================================================================
struct TriangleParams
{
  std::size_t m = 20;
  std::size_t triangles = 10;
  std::uint64_t seed = 0;
  double side = 100.0;
  double min_radius = 2.0;
  double max_radius = 8.0;
  /// Attempts per position before giving up.
  std::size_t retry_budget = 20000;
};

/// Random triangles in a walled square; positions are rejection-sampled so
/// every position keeps a revolving area.
inline Scenario generate_triangles(const TriangleParams& params)
{
  if (params.m == 0)
    throw CapacityError("triangles scenario needs at least one robot");

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  auto uniform = [&](double a, double b) { return a + (b - a) * unit01(rng); };

  Scenario s;
  s.name = "triangles-m" + std::to_string(params.m) + "-n"
    + std::to_string(params.triangles) + "-seed" + std::to_string(params.seed);

  const double L = params.side;
  for (std::size_t k = 0; k < params.triangles; ++k)
  {
    for (std::size_t attempt = 0;; ++attempt)
    {
      if (attempt >= params.retry_budget)
        throw SamplingExhausted("could not place triangle " + std::to_string(k));
      const Point c{uniform(0.0, L), uniform(0.0, L)};
      std::array<double, 3> ang{uniform(0, kTwoPi), uniform(0, kTwoPi), uniform(0, kTwoPi)};
      std::sort(ang.begin(), ang.end());
      Polygon tri;
      for (double a : ang)
        tri.vertices.push_back(c + polar(a) * uniform(params.min_radius, params.max_radius));
      if (tri.signed_area() < 1.0)
        continue;
      bool inside = true;
      for (const auto& v : tri.vertices)
        inside = inside && v.x > 0.0 && v.x < L && v.y > 0.0 && v.y < L;
      if (!inside)
        continue;
      s.obstacles.push_back(std::move(tri));
      break;
    }
  }
  detail::add_walls(s.obstacles, 0.0, 0.0, L, L);

  // A candidate is kept when it and every accepted neighbour within reach
  // still have revolving areas.
  std::vector<Point> accepted;
  for (std::size_t k = 0; k < 2 * params.m; ++k)
  {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < params.retry_budget && !placed; ++attempt)
    {
      const Point p{uniform(1.0, L - 1.0), uniform(1.0, L - 1.0)};
      if (dist_point_obstacles(p, s.obstacles) < 1.0)
        continue;
      bool too_close = false;
      for (const auto& q : accepted)
        too_close = too_close || dist(p, q) < 2.0;
      if (too_close)
        continue;

      std::vector<Point> trial = accepted;
      trial.push_back(p);
      const NeighborIndex index(trial);
      const std::size_t self = trial.size() - 1;
      bool ok = find_revolving_area(self, s, index).has_value();
      for (auto j : index.rb(self))
        ok = ok && find_revolving_area(j, s, index).has_value();
      if (ok)
      {
        accepted.push_back(p);
        placed = true;
      }
    }
    if (!placed)
      throw SamplingExhausted("could not place position " + std::to_string(k)
        + " after " + std::to_string(params.retry_budget) + " attempts");
  }

  s.starts.assign(accepted.begin(), accepted.begin() + params.m);
  s.targets.assign(accepted.begin() + params.m, accepted.end());
  return s;
}

//==============================================================================
enum class TunnelVersion { I, II };

struct TunnelParams
{
  std::size_t m = 4;
  TunnelVersion version = TunnelVersion::I;
};

/// Shape constants of the serpentine tunnel.
struct TunnelGeometry
{
  static constexpr double corridor = 2.2;
  static constexpr double separator = 1.5;
  static constexpr double chamfer = 0.3;
  static constexpr double bevel = 0.5;
  static constexpr double pocket_spacing = 7.0;
  static constexpr double pocket_half_width = 2.1;
  static constexpr double pocket_depth = 3.1;
  static constexpr double end_margin = 6.0;
  static constexpr double wall = 5.0;

  static double width(std::size_t m)
  {
    return 2.0 * end_margin + pocket_spacing * static_cast<double>(m - 1) + corridor;
  }

  static double top() { return 4.0 * corridor + 3.0 * separator; }

  static double pocket_x(std::size_t k)
  {
    return end_margin + pocket_spacing * static_cast<double>(k);
  }
};

/// Four horizontal arms joined at alternating ends. Starts sit in pockets
/// above the top arm, targets in pockets below the bottom arm. The obstacle
/// vertex count is 10m + 42.
inline Scenario generate_tunnel(const TunnelParams& params)
{
  using G = TunnelGeometry;
  if (params.m < 2)
    throw CapacityError("tunnel needs at least two robots");

  const std::size_t m = params.m;
  const double h = G::corridor, sp = G::separator, c = G::chamfer, b = G::bevel;
  const double W = G::width(m), Y = G::top(), T = G::wall;
  const double pw = G::pocket_half_width, pd = G::pocket_depth;

  Scenario s;
  s.name = std::string("tunnel-") + (params.version == TunnelVersion::I ? "I" : "II")
    + "-m" + std::to_string(m);

  Polygon top;
  top.vertices.push_back({-T, Y});
  for (std::size_t k = 0; k < m; ++k)
  {
    const double x = G::pocket_x(k);
    top.vertices.insert(top.vertices.end(), {
      {x - pw, Y}, {x - pw, Y + pw}, {x, Y + pd}, {x + pw, Y + pw}, {x + pw, Y}});
  }
  top.vertices.insert(top.vertices.end(), {{W + T, Y}, {W + T, Y + T}, {-T, Y + T}});

  Polygon bottom;
  bottom.vertices.insert(bottom.vertices.end(), {{-T, -T}, {W + T, -T}, {W + T, 0.0}});
  for (std::size_t k = m; k-- > 0;)
  {
    const double x = G::pocket_x(k);
    bottom.vertices.insert(bottom.vertices.end(), {
      {x + pw, 0.0}, {x + pw, -pw}, {x, -pd}, {x - pw, -pw}, {x - pw, 0.0}});
  }
  bottom.vertices.push_back({-T, 0.0});

  // Left wall carrying the separators that stop short of the right wall.
  const Polygon left{{
    {-T, 0.0}, {0.0, 0.0}, {0.0, h - b}, {b, h},
    {W - h - c, h}, {W - h, h + c}, {W - h, h + sp - c}, {W - h - c, h + sp},
    {b, h + sp}, {0.0, h + sp + b},
    {0.0, 3 * h + 2 * sp - b}, {b, 3 * h + 2 * sp},
    {W - h - c, 3 * h + 2 * sp}, {W - h, 3 * h + 2 * sp + c},
    {W - h, 3 * h + 3 * sp - c}, {W - h - c, 3 * h + 3 * sp},
    {b, 3 * h + 3 * sp}, {0.0, 3 * h + 3 * sp + b},
    {0.0, Y}, {-T, Y}}};

  // Right wall carrying the separator that stops short of the left wall.
  const Polygon right{{
    {W + T, 0.0}, {W + T, Y}, {W - b, Y}, {W, Y - b},
    {W, 2 * h + 2 * sp + b}, {W - b, 2 * h + 2 * sp},
    {h + c, 2 * h + 2 * sp}, {h, 2 * h + 2 * sp - c},
    {h, 2 * h + sp + c}, {h + c, 2 * h + sp},
    {W - b, 2 * h + sp}, {W, 2 * h + sp - b},
    {W, b}, {W - b, 0.0}}};

  s.obstacles = {top, bottom, left, right};

  for (std::size_t i = 0; i < m; ++i)
  {
    s.starts.push_back({G::pocket_x(i), Y});
    const std::size_t slot = params.version == TunnelVersion::I ? i : m - 1 - i;
    s.targets.push_back({G::pocket_x(slot), 0.0});
  }
  return s;
}

//==============================================================================
/// Side of the tiny triangles standing in for point obstacles.
inline constexpr double kBadInputObstacleSide = 1e-3;
/// Extra ring radius beyond 2 for the obstacle centroids.
inline constexpr double kBadInputRingSlack = 6e-4;

namespace detail {

/// Equilateral triangle centred at g with one side facing `toward`.
inline Polygon tiny_triangle(const Point& g, const Point& toward, double side)
{
  const Point u = unit(g - toward);
  const Point w = left_of(u);
  const double inr = side / (2.0 * std::sqrt(3.0));
  const double circ = side / std::sqrt(3.0);
  Polygon tri{{g - u * inr - w * (side / 2.0), g - u * inr + w * (side / 2.0), g + u * circ}};
  if (!tri.is_ccw())
    std::reverse(tri.vertices.begin(), tri.vertices.end());
  return tri;
}

} // namespace detail

/// Two robots whose shortest paths must weave through rings of tiny
/// obstacles. Robot 0 plays i, robot 1 plays j.
inline Scenario generate_bad_input(std::size_t n)
{
  if (n < 4 || n % 2 != 0)
    throw CapacityError("bad input needs an even obstacle count of at least 4");

  Scenario s;
  s.name = "bad-input-n" + std::to_string(n);
  s.starts = {{4.0, 0.5}, {8.0, 0.0}};
  s.targets = {{12.0, 0.5}, {0.0, 0.0}};

  const std::size_t half = n / 2;
  const double radius = kRevolveRadius + kBadInputRingSlack;
  const double step = kPi / static_cast<double>(half - 1);
  for (std::size_t k = 0; k < half; ++k)
  {
    const Point g = s.starts[0] + polar(step * static_cast<double>(k)) * radius;
    s.obstacles.push_back(detail::tiny_triangle(g, s.starts[0], kBadInputObstacleSide));
  }
  for (std::size_t k = 0; k < half; ++k)
  {
    const Point g = s.starts[1] + polar(kPi + step * static_cast<double>(k)) * radius;
    s.obstacles.push_back(detail::tiny_triangle(g, s.starts[1], kBadInputObstacleSide));
  }
  return s;
}

} // namespace discplan

#endif // DISCPLAN__GENERATORS_HPP
