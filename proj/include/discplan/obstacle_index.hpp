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

#ifndef DISCPLAN__OBSTACLE_INDEX_HPP
#define DISCPLAN__OBSTACLE_INDEX_HPP

#include "geom.hpp"

#include <unordered_map>

namespace discplan {

/// Uniform grid over obstacle edges for clearance queries. Immutable after
/// construction and safe to query from several threads.
class ObstacleIndex
{
public:
  struct Box
  {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void add(const Point& p)
    {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }

    bool contains(const Point& p, double pad = 0.0) const
    {
      return p.x >= lo.x - pad && p.x <= hi.x + pad && p.y >= lo.y - pad && p.y <= hi.y + pad;
    }
  };

  ObstacleIndex() = default;

  explicit ObstacleIndex(std::vector<Polygon> obstacles, double cell = 2.0)
  : _obstacles(std::move(obstacles)), _cell(cell)
  {
    for (std::size_t k = 0; k < _obstacles.size(); ++k)
    {
      Box box;
      for (const auto& v : _obstacles[k].vertices)
        box.add(v);
      _boxes.push_back(box);
      for (std::size_t i = 0; i < _obstacles[k].size(); ++i)
      {
        const std::size_t id = _edges.size();
        _edges.push_back(_obstacles[k].edge(i));
        const Segment& e = _edges.back();
        for (long cx = cell_of(std::min(e.a.x, e.b.x)); cx <= cell_of(std::max(e.a.x, e.b.x)); ++cx)
          for (long cy = cell_of(std::min(e.a.y, e.b.y)); cy <= cell_of(std::max(e.a.y, e.b.y)); ++cy)
            _cells[key(cx, cy)].push_back(id);
      }
    }
  }

  const std::vector<Polygon>& obstacles() const { return _obstacles; }
  const std::vector<Segment>& edges() const { return _edges; }

  bool inside_any(const Point& p) const
  {
    for (std::size_t k = 0; k < _obstacles.size(); ++k)
      if (_boxes[k].contains(p) && point_in_polygon(p, _obstacles[k]))
        return true;
    return false;
  }

  /// Distance to the obstacles, or `cap` if nothing lies within `cap`.
  double clearance(const Point& p, double cap) const
  {
    if (inside_any(p))
      return 0.0;
    double best = cap;
    for_edges_near(p, p, cap, [&](const Segment& e)
      {
        best = std::min(best, dist_point_segment(p, e.a, e.b));
      });
    return best;
  }

  /// Whether every point of segment [a,b] keeps distance r - eps.
  bool segment_clear(const Point& a, const Point& b, double r, double eps = kEpsGeom) const
  {
    if (inside_any(a) || inside_any(b))
      return false;
    bool clear = true;
    for_edges_near(a, b, r, [&](const Segment& e)
      {
        if (clear && dist_segment_segment(a, b, e.a, e.b) < r - eps)
          clear = false;
      });
    return clear;
  }

  /// Calls f on every edge whose cells overlap the box of [a,b] padded by r.
  /// An edge may be visited more than once.
  template<typename F>
  void for_edges_near(const Point& a, const Point& b, double r, F&& f) const
  {
    const long x0 = cell_of(std::min(a.x, b.x) - r), x1 = cell_of(std::max(a.x, b.x) + r);
    const long y0 = cell_of(std::min(a.y, b.y) - r), y1 = cell_of(std::max(a.y, b.y) + r);
    const double cells = static_cast<double>(x1 - x0 + 1) * static_cast<double>(y1 - y0 + 1);
    if (cells > 4.0 * static_cast<double>(_edges.size()))
    {
      for (const auto& e : _edges)
        f(e);
      return;
    }
    for (long cx = x0; cx <= x1; ++cx)
      for (long cy = y0; cy <= y1; ++cy)
      {
        const auto it = _cells.find(key(cx, cy));
        if (it == _cells.end())
          continue;
        for (auto id : it->second)
          f(_edges[id]);
      }
  }

private:
  long cell_of(double v) const { return static_cast<long>(std::floor(v / _cell)); }

  static std::uint64_t key(long cx, long cy)
  {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32)
      | static_cast<std::uint32_t>(cy);
  }

  std::vector<Polygon> _obstacles;
  std::vector<Box> _boxes;
  std::vector<Segment> _edges;
  double _cell = 2.0;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> _cells;
};

} // namespace discplan

#endif // DISCPLAN__OBSTACLE_INDEX_HPP
