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

#ifndef DISCPLAN__REVOLVE_HPP
#define DISCPLAN__REVOLVE_HPP

#include "intersect.hpp"
#include "parallel.hpp"
#include "scenario.hpp"

#include <optional>
#include <unordered_map>

namespace discplan {

/// Radius of the revolving disc A_z.
inline constexpr double kRevolveRadius = 2.0;
/// Radius of the forbidden core C_z.
inline constexpr double kCoreRadius = 1.0;
/// Radius of the retraction trigger disc B_z.
inline constexpr double kTriggerRadius = 3.0;
/// Neighbours farther than this cannot constrain a revolving area.
inline constexpr double kNeighborRadius = 4.0;

struct RevolvingArea
{
  /// Index of the owning position (starts first, then targets).
  std::size_t position = 0;
  Point z;
  Point center;
};

/// Every position lacking a revolving area.
class AssumptionViolated : public std::runtime_error
{
public:
  explicit AssumptionViolated(std::vector<std::size_t> positions)
  : std::runtime_error(make_message(positions)),
    _positions(std::move(positions))
  {
  }

  const std::vector<std::size_t>& positions() const { return _positions; }

private:
  static std::string make_message(const std::vector<std::size_t>& positions)
  {
    std::string msg = "no revolving area for position(s):";
    for (auto p : positions)
      msg += " " + std::to_string(p);
    return msg;
  }

  std::vector<std::size_t> _positions;
};

//==============================================================================
/// Unit-grid hash over positions answering "who is within distance 4".
class NeighborIndex
{
public:
  NeighborIndex() = default;

  explicit NeighborIndex(std::vector<Point> points)
  : _points(std::move(points))
  {
    for (std::size_t k = 0; k < _points.size(); ++k)
      _cells[key(cell(_points[k].x), cell(_points[k].y))].push_back(k);
  }

  const std::vector<Point>& points() const { return _points; }

  /// Positions y != k with |y - point k| <= 4, ascending.
  std::vector<std::size_t> rb(std::size_t k) const
  {
    return query(_points[k], kNeighborRadius, k);
  }

  std::vector<std::size_t> query(
    const Point& p, double radius,
    std::size_t exclude = static_cast<std::size_t>(-1)) const
  {
    std::vector<std::size_t> out;
    const long x0 = cell(p.x - radius), x1 = cell(p.x + radius);
    const long y0 = cell(p.y - radius), y1 = cell(p.y + radius);
    for (long cx = x0; cx <= x1; ++cx)
      for (long cy = y0; cy <= y1; ++cy)
      {
        const auto it = _cells.find(key(cx, cy));
        if (it == _cells.end())
          continue;
        for (auto j : it->second)
          if (j != exclude && dist(_points[j], p) <= radius + kEpsGeom)
            out.push_back(j);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t max_cell_load() const
  {
    std::size_t load = 0;
    for (const auto& [k, v] : _cells)
      load = std::max(load, v.size());
    return load;
  }

private:
  static long cell(double v) { return static_cast<long>(std::floor(v)); }

  static std::uint64_t key(long cx, long cy)
  {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32)
      | static_cast<std::uint32_t>(cy);
  }

  std::vector<Point> _points;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> _cells;
};

//==============================================================================
namespace detail {

/// Slack of each revolving-area constraint at a candidate center; all three
/// must be non-negative for a feasible center.
struct CenterSlack
{
  double disc = 0.0;
  double obstacle = 0.0;
  double neighbor = 0.0;

  double min() const { return std::min({disc, obstacle, neighbor}); }
  bool feasible() const { return min() >= -kEpsGeom; }
};

struct RevolveProblem
{
  Point z;
  std::vector<Point> neighbors;
  std::vector<const Polygon*> obstacles;
  std::vector<Segment> edges;

  CenterSlack slack(const Point& c) const
  {
    CenterSlack s;
    s.disc = kCoreRadius - dist(c, z);
    s.obstacle = std::numeric_limits<double>::infinity();
    for (const auto* poly : obstacles)
      s.obstacle = std::min(s.obstacle, dist_point_polygon(c, *poly));
    s.obstacle -= kRevolveRadius;
    s.neighbor = std::numeric_limits<double>::infinity();
    for (const auto& y : neighbors)
      s.neighbor = std::min(s.neighbor, dist(c, y));
    s.neighbor -= kTriggerRadius;
    return s;
  }
};

struct Circle { Point c; double r; };
struct Line { Point a; Point b; };

inline void line_line(const Line& l1, const Line& l2, std::vector<Point>& out)
{
  const Point d1 = l1.b - l1.a, d2 = l2.b - l2.a;
  const double den = cross(d1, d2);
  if (std::abs(den) <= kEpsGeom * norm(d1) * norm(d2))
    return;
  out.push_back(l1.a + d1 * (cross(l2.a - l1.a, d2) / den));
}

/// Low-discrepancy points covering the unit disc around z.
inline std::vector<Point> disc_samples(const Point& z, double radius, std::size_t count)
{
  std::vector<Point> out;
  out.reserve(count);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k)
  {
    const double r = radius * std::sqrt((k + 0.5) / static_cast<double>(count));
    out.push_back(z + polar(golden * static_cast<double>(k)) * r);
  }
  return out;
}

} // namespace detail

inline constexpr std::size_t kRevolveSampleBudget = 4096;

/// Finds a center c with |c - z| <= 1, dist(c, obstacles) >= 2 and
/// |c - y| >= 3 for every other position y, or nullopt if none exists
/// among the candidates. z itself is returned whenever it qualifies.
inline std::optional<RevolvingArea> find_revolving_area(
  std::size_t position, const Scenario& scenario, const NeighborIndex& index)
{
  detail::RevolveProblem prob;
  prob.z = index.points()[position];
  for (auto k : index.rb(position))
    prob.neighbors.push_back(index.points()[k]);

  const double reach = kCoreRadius + kRevolveRadius;
  for (const auto& poly : scenario.obstacles)
  {
    bool near = false;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
      if (dist_point_segment(prob.z, poly[i], poly.next(i)) <= reach + kEpsGeom)
      {
        prob.edges.push_back(poly.edge(i));
        near = true;
      }
    }
    if (near || point_in_polygon(prob.z, poly))
      prob.obstacles.push_back(&poly);
  }

  const RevolvingArea base{position, prob.z, prob.z};
  if (prob.slack(prob.z).feasible())
    return base;

  // Bounding curves of the feasible region.
  std::vector<detail::Circle> circles{{prob.z, kCoreRadius}};
  std::vector<detail::Line> lines;
  for (const auto& y : prob.neighbors)
    circles.push_back({y, kTriggerRadius});
  for (const auto& e : prob.edges)
  {
    const Point d = e.b - e.a;
    const Point n = unit(Point{d.y, -d.x}) * kRevolveRadius;
    lines.push_back({e.a + n, e.b + n});
    lines.push_back({e.a - n, e.b - n});
    circles.push_back({e.a, kRevolveRadius});
  }

  std::vector<Point> candidates;
  for (std::size_t i = 0; i < circles.size(); ++i)
  {
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      for (const auto& p : circle_circle_intersect(
          circles[i].c, circles[i].r, circles[j].c, circles[j].r).points)
        candidates.push_back(p);
    for (const auto& l : lines)
      for (double t : line_circle_roots(l.a, l.b, circles[i].c, circles[i].r).t)
        candidates.push_back(l.a + (l.b - l.a) * t);
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      detail::line_line(lines[i], lines[j], candidates);

  // Curve points nearest to z, and disc points farthest from each constraint.
  for (std::size_t i = 1; i < circles.size(); ++i)
  {
    const Point v = prob.z - circles[i].c;
    if (norm(v) <= kEpsGeom)
      continue;
    candidates.push_back(circles[i].c + unit(v) * circles[i].r);
    candidates.push_back(prob.z + unit(v) * kCoreRadius);
  }
  for (const auto& l : lines)
  {
    const Point d = l.b - l.a;
    candidates.push_back(l.a + d * (dot(prob.z - l.a, d) / norm2(d)));
  }
  for (const auto& e : prob.edges)
  {
    const Point foot = e.a + (e.b - e.a) * closest_param_segment(prob.z, e.a, e.b);
    const Point v = prob.z - foot;
    if (norm(v) > kEpsGeom)
      candidates.push_back(prob.z + unit(v) * kCoreRadius);
  }

  std::optional<RevolvingArea> best;
  double best_margin = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Point& c)
    {
      if (!is_finite(c) || dist(c, prob.z) > kCoreRadius + kEpsGeom)
        return;
      const auto s = prob.slack(c);
      if (s.feasible() && s.min() > best_margin)
      {
        best_margin = s.min();
        best = RevolvingArea{position, prob.z, c};
      }
    };
  for (const auto& c : candidates)
    consider(c);
  if (!best)
    for (const auto& c :
      detail::disc_samples(prob.z, kCoreRadius, kRevolveSampleBudget))
      consider(c);
  if (!best)
    return best;

  // Candidates sit on constraint boundaries; a compass search pulls the
  // centre into the interior, never lowering the smallest slack.
  Point c = best->center;
  for (double step = 0.25; step > 1e-7; step *= 0.5)
  {
    bool moved = true;
    while (moved)
    {
      moved = false;
      for (int k = 0; k < 8; ++k)
      {
        const Point q = c + polar(kPi * k / 4.0) * step;
        if (dist(q, prob.z) > kCoreRadius)
          continue;
        const double margin = prob.slack(q).min();
        if (margin > best_margin + 1e-12)
        {
          best_margin = margin;
          c = q;
          moved = true;
        }
      }
    }
  }
  best->center = c;
  return best;
}

/// Revolving areas for all 2m positions, in position order. Throws
/// AssumptionViolated listing every position without one.
inline std::vector<RevolvingArea> find_all_revolving_areas(
  const Scenario& scenario, std::size_t workers = 1)
{
  const NeighborIndex index(scenario.positions());
  std::vector<std::optional<RevolvingArea>> found(scenario.position_count());
  parallel_for(found.size(), workers, [&](std::size_t k)
    {
      found[k] = find_revolving_area(k, scenario, index);
    });

  std::vector<RevolvingArea> out;
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < found.size(); ++k)
  {
    if (found[k])
      out.push_back(*found[k]);
    else
      missing.push_back(k);
  }
  if (!missing.empty())
    throw AssumptionViolated(std::move(missing));
  return out;
}

} // namespace discplan

#endif // DISCPLAN__REVOLVE_HPP
