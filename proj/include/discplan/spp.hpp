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

#ifndef DISCPLAN__SPP_HPP
#define DISCPLAN__SPP_HPP

#include "intersect.hpp"
#include "obstacle_index.hpp"
#include "offset.hpp"

#include <queue>

namespace discplan {

class NoPath : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class StartBlocked : public NoPath
{
public:
  using NoPath::NoPath;
};

class TargetBlocked : public NoPath
{
public:
  using NoPath::NoPath;
};

/// Robot radius used throughout.
inline constexpr double kRobotRadius = 1.0;

namespace detail {

/// Directed common tangent of two circles. Orientation signs are +1 for
/// counterclockwise travel and -1 for clockwise; a radius of 0 turns a
/// circle into a point. Returns false when the circles nest too deeply.
inline bool directed_tangent(
  const Point& c1, double r1, double s1, const Point& c2, double r2, double s2,
  Point& p1, Point& p2)
{
  const Point D = c2 - c1;
  const double d2 = norm2(D);
  const double k = s2 * r2 - s1 * r1;
  const double L2 = d2 - k * k;
  if (d2 <= kEpsGeom || L2 <= kEpsGeom)
    return false;
  const double L = std::sqrt(L2);
  const Point d = (D * L - left_of(D) * k) / d2;
  p1 = c1 - left_of(d) * (s1 * r1);
  p2 = c2 - left_of(d) * (s2 * r2);
  return true;
}

inline double orientation_sign(Orientation o)
{
  return o == Orientation::CCW ? 1.0 : -1.0;
}

} // namespace detail

//==============================================================================
/// Shortest paths for a unit disc among polygons via a tangent visibility
/// graph over the radius-1 arcs at convex obstacle vertices. The obstacle
/// part of the graph is built once; each query only adds the tangents from
/// the start and to the target.
class ShortestPathPlanner
{
public:
  ShortestPathPlanner() = default;

  explicit ShortestPathPlanner(std::vector<Polygon> obstacles)
  : _index(std::move(obstacles))
  {
    build_circles();
    build_bitangents();
    build_chains();
  }

  const ObstacleIndex& index() const { return _index; }
  std::size_t circle_count() const { return _circles.size(); }
  std::size_t node_count() const { return _nodes.size(); }

  Polycurve plan(const Point& s, const Point& t) const
  {
    if (_index.clearance(s, 2.0) < kRobotRadius - kEpsGeom)
      throw StartBlocked("start is not in free space");
    if (_index.clearance(t, 2.0) < kRobotRadius - kEpsGeom)
      throw TargetBlocked("target is not in free space");
    if (dist(s, t) <= kEpsGeom)
      return {};
    Query q(*this, s, t);
    return q.solve();
  }

private:
  struct Circle
  {
    Point center;
    double wedge_start = 0.0;
    double wedge_sweep = 0.0;
    /// Free closed offset intervals within [0, wedge_sweep].
    std::vector<std::pair<double, double>> free;

    double angle(double offset) const { return wedge_start + offset; }

    /// Offset of a point's angle within the wedge, or nullopt outside it.
    std::optional<double> offset_of(const Point& p) const
    {
      double off = normalize_angle(angle_of(p - center) - wedge_start);
      constexpr double tol = 1e-9;
      if (off > kTwoPi - tol)
        off -= kTwoPi;
      if (off < -tol || off > wedge_sweep + tol)
        return std::nullopt;
      return std::clamp(off, 0.0, wedge_sweep);
    }

    bool arc_free(double a, double b) const
    {
      const double lo = std::min(a, b), hi = std::max(a, b);
      for (const auto& [f0, f1] : free)
        if (lo >= f0 - 1e-12 && hi <= f1 + 1e-12)
          return true;
      return false;
    }
  };

  struct Node
  {
    std::uint32_t circle = 0;
    Orientation orientation = Orientation::CCW;
    double offset = 0.0;
    Point p;
  };

  struct Edge
  {
    std::uint32_t to = 0;
    double w = 0.0;
  };

  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  void build_circles()
  {
    const auto& obstacles = _index.obstacles();
    for (const auto& poly : obstacles)
      for (std::size_t v = 0; v < poly.size(); ++v)
      {
        if (!poly.is_convex_vertex(v))
          continue;
        const std::size_t prev = (v + poly.size() - 1) % poly.size();
        Circle c;
        c.center = poly[v];
        c.wedge_start = angle_of(outward_normal(poly, prev));
        c.wedge_sweep = normalize_angle(angle_of(outward_normal(poly, v)) - c.wedge_start);
        compute_free(c);
        if (!c.free.empty())
          _circles.push_back(std::move(c));
      }
  }

  /// Splits the wedge arc at every point where its clearance can change and
  /// classifies each piece by its midpoint.
  void compute_free(Circle& c) const
  {
    std::vector<double> cuts{0.0, c.wedge_sweep};
    auto add_cut = [&](const Point& p)
      {
        if (const auto off = c.offset_of(p))
          cuts.push_back(*off);
      };
    _index.for_edges_near(c.center, c.center, 2.0 * kRobotRadius + kEpsGeom,
      [&](const Segment& e)
      {
        const Point d = e.b - e.a;
        if (norm(d) <= kEpsGeom)
          return;
        const Point n = left_of(unit(d)) * kRobotRadius;
        for (const Point& off : {n, -n})
          for (double t : line_circle_roots(e.a + off, e.b + off, c.center, kRobotRadius).t)
            if (t >= 0.0 && t <= 1.0)
              add_cut(e.a + off + d * t);
        for (const Point& end : {e.a, e.b})
          for (const Point& p :
            circle_circle_intersect(c.center, kRobotRadius, end, kRobotRadius).points)
            add_cut(p);
      });
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto point_at = [&](double off)
      {
        return c.center + polar(c.angle(off)) * kRobotRadius;
      };
    auto is_free = [&](double off)
      {
        return _index.clearance(point_at(off), 2.0) >= kRobotRadius - kEpsGeom;
      };

    if (cuts.size() == 1 || c.wedge_sweep <= 1e-12)
    {
      if (is_free(0.0))
        c.free.push_back({0.0, c.wedge_sweep});
      return;
    }
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    {
      const double a = cuts[k], b = cuts[k + 1];
      if (!is_free(0.5 * (a + b)))
        continue;
      if (!c.free.empty() && std::abs(c.free.back().second - a) <= 1e-12)
        c.free.back().second = b;
      else
        c.free.push_back({a, b});
    }
  }

  std::uint32_t add_node(std::uint32_t circle, Orientation o, double offset, const Point& p)
  {
    _nodes.push_back({circle, o, offset, p});
    _adj.emplace_back();
    return static_cast<std::uint32_t>(_nodes.size() - 1);
  }

  void build_bitangents()
  {
    const auto C = static_cast<std::uint32_t>(_circles.size());
    for (std::uint32_t i = 0; i < C; ++i)
      for (std::uint32_t j = i + 1; j < C; ++j)
        for (Orientation o1 : {Orientation::CCW, Orientation::CW})
          for (Orientation o2 : {Orientation::CCW, Orientation::CW})
          {
            const Circle& ci = _circles[i];
            const Circle& cj = _circles[j];
            Point p1, p2;
            if (!detail::directed_tangent(ci.center, kRobotRadius, detail::orientation_sign(o1),
                cj.center, kRobotRadius, detail::orientation_sign(o2), p1, p2))
              continue;
            const auto off1 = ci.offset_of(p1);
            const auto off2 = cj.offset_of(p2);
            if (!off1 || !off2 || !ci.arc_free(*off1, *off1) || !cj.arc_free(*off2, *off2))
              continue;
            if (!_index.segment_clear(p1, p2, kRobotRadius))
              continue;
            const double w = dist(p1, p2);
            const auto a = add_node(i, o1, *off1, p1);
            const auto b = add_node(j, o2, *off2, p2);
            const auto a_rev = add_node(i, flip(o1), *off1, p1);
            const auto b_rev = add_node(j, flip(o2), *off2, p2);
            _adj[a].push_back({b, w});
            _adj[b_rev].push_back({a_rev, w});
          }
  }

  void build_chains()
  {
    _chains.assign(_circles.size() * 2, {});
    for (std::uint32_t v = 0; v < _nodes.size(); ++v)
      _chains[chain_id(_nodes[v].circle, _nodes[v].orientation)].push_back(v);
    for (auto& chain : _chains)
      sort_chain(chain, _nodes);
  }

  static std::size_t chain_id(std::uint32_t circle, Orientation o)
  {
    return 2 * static_cast<std::size_t>(circle) + (o == Orientation::CCW ? 0 : 1);
  }

  /// Orders a chain in travel direction, ties by node id.
  static void sort_chain(std::vector<std::uint32_t>& chain, const std::vector<Node>& nodes)
  {
    if (chain.empty())
      return;
    const bool ccw = nodes[chain.front()].orientation == Orientation::CCW;
    std::sort(chain.begin(), chain.end(), [&](std::uint32_t a, std::uint32_t b)
      {
        const double oa = nodes[a].offset, ob = nodes[b].offset;
        if (oa != ob)
          return ccw ? oa < ob : oa > ob;
        return a < b;
      });
  }

  //============================================================================
  class Query
  {
  public:
    Query(const ShortestPathPlanner& g, const Point& s, const Point& t)
    : _g(g), _s(s), _t(t)
    {
      _nodes = g._nodes;
      _source = push({kNone, Orientation::CCW, 0.0, s});
      _sink = push({kNone, Orientation::CCW, 0.0, t});
      _extra_adj.resize(2);

      if (g._index.segment_clear(s, t, kRobotRadius))
        _extra_adj[0].push_back({_sink, dist(s, t)});

      const auto C = static_cast<std::uint32_t>(g._circles.size());
      std::vector<std::uint32_t> touched;
      for (std::uint32_t c = 0; c < C; ++c)
      {
        const Circle& circle = g._circles[c];
        bool any = false;
        for (Orientation o : {Orientation::CCW, Orientation::CW})
        {
          const double sg = detail::orientation_sign(o);
          Point p1, p2;
          if (detail::directed_tangent(s, 0.0, 1.0, circle.center, kRobotRadius, sg, p1, p2))
            if (const auto off = circle.offset_of(p2);
              off && circle.arc_free(*off, *off) && g._index.segment_clear(s, p2, kRobotRadius))
            {
              const auto v = push({c, o, *off, p2});
              _extra_adj[0].push_back({v, dist(s, p2)});
              any = true;
            }
          if (detail::directed_tangent(circle.center, kRobotRadius, sg, t, 0.0, 1.0, p1, p2))
            if (const auto off = circle.offset_of(p1);
              off && circle.arc_free(*off, *off) && g._index.segment_clear(p1, t, kRobotRadius))
            {
              const auto v = push({c, o, *off, p1});
              _extra_adj[v - _source].push_back({_sink, dist(p1, t)});
              any = true;
            }
        }
        if (any)
          touched.push_back(c);
      }

      // Successor along the arc chain, for the base graph and the extras.
      _succ.assign(_nodes.size(), kNone);
      std::vector<char> is_touched(C, 0);
      for (auto c : touched)
        is_touched[c] = 1;
      for (std::uint32_t c = 0; c < C; ++c)
        for (Orientation o : {Orientation::CCW, Orientation::CW})
        {
          std::vector<std::uint32_t> chain = g._chains[chain_id(c, o)];
          if (is_touched[c])
          {
            for (std::uint32_t v = _source + 2; v < _nodes.size(); ++v)
              if (_nodes[v].circle == c && _nodes[v].orientation == o)
                chain.push_back(v);
            sort_chain(chain, _nodes);
          }
          const Circle& circle = g._circles[c];
          for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            if (circle.arc_free(_nodes[chain[k]].offset, _nodes[chain[k + 1]].offset))
              _succ[chain[k]] = chain[k + 1];
        }
    }

    Polycurve solve()
    {
      const std::size_t N = _nodes.size();
      std::vector<double> d(N, std::numeric_limits<double>::infinity());
      std::vector<std::uint32_t> pred(N, kNone);
      std::vector<char> done(N, 0);
      using Item = std::pair<double, std::uint32_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      d[_source] = 0.0;
      pq.push({0.0, _source});

      auto relax = [&](std::uint32_t u, std::uint32_t v, double w)
        {
          const double nd = d[u] + w;
          if (nd < d[v] - 1e-12 || (std::abs(nd - d[v]) <= 1e-12 && u < pred[v]))
          {
            d[v] = std::min(nd, d[v]);
            pred[v] = u;
            pq.push({d[v], v});
          }
        };

      while (!pq.empty())
      {
        const auto [du, u] = pq.top();
        pq.pop();
        if (done[u])
          continue;
        done[u] = 1;
        if (u == _sink)
          break;
        if (u < _source)
          for (const auto& e : _g._adj[u])
            if (!done[e.to])
              relax(u, e.to, e.w);
        if (u >= _source && u - _source < _extra_adj.size())
          for (const auto& e : _extra_adj[u - _source])
            if (!done[e.to])
              relax(u, e.to, e.w);
        if (const auto v = _succ[u]; v != kNone && !done[v])
          relax(u, v, std::abs(_nodes[v].offset - _nodes[u].offset) * kRobotRadius);
      }

      if (pred[_sink] == kNone)
        throw NoPath("target is not reachable from start");

      std::vector<std::uint32_t> seq;
      for (auto v = _sink; v != kNone; v = pred[v])
        seq.push_back(v);
      std::reverse(seq.begin(), seq.end());

      Polycurve path;
      for (std::size_t k = 0; k + 1 < seq.size(); ++k)
      {
        const Node& a = _nodes[seq[k]];
        const Node& b = _nodes[seq[k + 1]];
        if (a.circle != kNone && a.circle == b.circle)
        {
          const Circle& c = _g._circles[a.circle];
          path.append(CircArc{c.center, kRobotRadius, normalize_angle(c.angle(a.offset)),
            std::abs(b.offset - a.offset), a.orientation});
        }
        else
        {
          path.append(Segment{a.p, b.p});
        }
      }
      // Anchor the exact endpoints.
      if (!path.empty())
      {
        if (auto* s = std::get_if<Segment>(&path.pieces.front()))
          s->a = _s;
        if (auto* s = std::get_if<Segment>(&path.pieces.back()))
          s->b = _t;
      }
      return path;
    }

  private:
    std::uint32_t push(const Node& n)
    {
      _nodes.push_back(n);
      if (_source != kNone)
        _extra_adj.emplace_back();
      return static_cast<std::uint32_t>(_nodes.size() - 1);
    }

    const ShortestPathPlanner& _g;
    Point _s, _t;
    std::vector<Node> _nodes;
    std::uint32_t _source = kNone;
    std::uint32_t _sink = kNone;
    /// Out-edges of source, sink and extra nodes, indexed from the source.
    std::vector<std::vector<Edge>> _extra_adj;
    std::vector<std::uint32_t> _succ;
  };

  ObstacleIndex _index;
  std::vector<Circle> _circles;
  std::vector<Node> _nodes;
  std::vector<std::vector<Edge>> _adj;
  std::vector<std::vector<std::uint32_t>> _chains;
};

/// One-shot convenience wrapper; prefer a shared ShortestPathPlanner when
/// planning several robots among the same obstacles.
inline Polycurve plan_shortest_path(
  const Point& s, const Point& t, const std::vector<Polygon>& obstacles)
{
  return ShortestPathPlanner(obstacles).plan(s, t);
}

} // namespace discplan

#endif // DISCPLAN__SPP_HPP
