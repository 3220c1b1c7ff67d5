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

#ifndef DISCPLAN__INTERSECT_HPP
#define DISCPLAN__INTERSECT_HPP

#include "geom.hpp"

namespace discplan {

struct CircleIntersection
{
  std::vector<Point> points;
  /// Set when the circles touch at a single point.
  bool tangent = false;
};

inline CircleIntersection circle_circle_intersect(
  const Point& c1, double r1, const Point& c2, double r2)
{
  CircleIntersection out;
  const double d = dist(c1, c2);
  if (d <= kEpsGeom)
    return out; // concentric: either no points or infinitely many

  const Point u = (c2 - c1) / d;
  if (std::abs(d - (r1 + r2)) <= kEpsGeom)
  {
    out.points.push_back(c1 + u * r1);
    out.tangent = true;
    return out;
  }
  if (std::abs(d - std::abs(r1 - r2)) <= kEpsGeom)
  {
    out.points.push_back(r1 >= r2 ? c1 + u * r1 : c1 - u * r1);
    out.tangent = true;
    return out;
  }
  if (d > r1 + r2 || d < std::abs(r1 - r2))
    return out;

  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point m = c1 + u * a;
  out.points.push_back(m + left_of(u) * h);
  out.points.push_back(m - left_of(u) * h);
  return out;
}

/// Parameters t along the infinite line a + t (b - a) where it meets the
/// circle. `tangent` reports a single grazing root.
struct LineCircleRoots
{
  std::vector<double> t;
  bool tangent = false;
};

inline LineCircleRoots line_circle_roots(
  const Point& a, const Point& b, const Point& c, double r)
{
  LineCircleRoots out;
  const Point d = b - a;
  const double len = norm(d);
  if (len <= 0.0)
    return out;
  const double tf = dot(c - a, d) / (len * len);
  const double h = dist(a + d * tf, c);
  if (std::abs(h - r) <= kEpsGeom)
  {
    out.t.push_back(tf);
    out.tangent = true;
    return out;
  }
  if (h > r)
    return out;
  const double w = std::sqrt(r * r - h * h) / len;
  out.t.push_back(tf - w);
  out.t.push_back(tf + w);
  return out;
}

struct PieceHit
{
  Point point;
  double param = 0.0;
};

namespace detail {

inline constexpr double kParamSlack = 1e-12;

inline bool in_unit(double t)
{
  return t >= -kParamSlack && t <= 1.0 + kParamSlack;
}

inline void sort_hits(std::vector<PieceHit>& hits)
{
  std::sort(hits.begin(), hits.end(),
    [](const PieceHit& a, const PieceHit& b) { return a.param < b.param; });
}

} // namespace detail

/// Transversal crossings of a piece with a circle, ordered along the piece.
/// Tangential contacts are not reported.
inline std::vector<PieceHit> piece_circle_intersect(
  const Piece& piece, const Point& c, double r)
{
  std::vector<PieceHit> hits;
  if (const auto* s = std::get_if<Segment>(&piece))
  {
    const auto roots = line_circle_roots(s->a, s->b, c, r);
    if (roots.tangent)
      return hits;
    for (double t : roots.t)
      if (detail::in_unit(t))
      {
        t = std::clamp(t, 0.0, 1.0);
        hits.push_back({s->at(t), t});
      }
  }
  else
  {
    const auto& arc = std::get<CircArc>(piece);
    const auto x = circle_circle_intersect(arc.center, arc.radius, c, r);
    if (x.tangent)
      return hits;
    for (const Point& p : x.points)
    {
      const double t = arc.param_of_angle(angle_of(p - arc.center));
      if (detail::in_unit(t))
        hits.push_back({p, std::clamp(t, 0.0, 1.0)});
    }
  }
  detail::sort_hits(hits);
  return hits;
}

/// Every point where the piece touches the circle: transversal crossings,
/// tangencies, and endpoints lying on the circle. Used as the candidate set
/// for side classification along a whole path.
inline std::vector<PieceHit> piece_circle_contacts(
  const Piece& piece, const Point& c, double r)
{
  std::vector<PieceHit> hits;
  if (const auto* s = std::get_if<Segment>(&piece))
  {
    for (double t : line_circle_roots(s->a, s->b, c, r).t)
      if (detail::in_unit(t))
      {
        t = std::clamp(t, 0.0, 1.0);
        hits.push_back({s->at(t), t});
      }
  }
  else
  {
    const auto& arc = std::get<CircArc>(piece);
    for (const Point& p :
      circle_circle_intersect(arc.center, arc.radius, c, r).points)
    {
      const double t = arc.param_of_angle(angle_of(p - arc.center));
      if (detail::in_unit(t))
        hits.push_back({p, std::clamp(t, 0.0, 1.0)});
    }
  }
  for (double t : {0.0, 1.0})
  {
    const Point p = piece_at(piece, t);
    if (std::abs(dist(p, c) - r) <= kEpsGeom)
      hits.push_back({p, t});
  }
  detail::sort_hits(hits);
  return hits;
}

} // namespace discplan

#endif // DISCPLAN__INTERSECT_HPP
