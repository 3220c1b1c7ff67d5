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

#ifndef DISCPLAN__OFFSET_HPP
#define DISCPLAN__OFFSET_HPP

#include "geom.hpp"

namespace discplan {

/// Boundary of the Minkowski sum of one polygon with a disc: offset edges
/// joined by arcs around convex vertices.
struct InflatedObstacle
{
  Polycurve boundary;
  double radius = 1.0;
};

/// Outward unit normal of edge i of a counterclockwise polygon.
inline Point outward_normal(const Polygon& poly, std::size_t i)
{
  const Point d = unit(poly.next(i) - poly[i]);
  return {d.y, -d.x};
}

/// Offsets a simple counterclockwise polygon by r. Reflex vertices are
/// resolved by intersecting the two neighbouring offset edges; overlaps
/// between far-apart parts of a non-convex polygon are not removed.
inline InflatedObstacle inflate_polygon(const Polygon& poly, double r)
{
  if (poly.size() < 3 || std::abs(poly.signed_area()) < kEpsGeom)
    throw DegenerateInput("polygon area below tolerance");
  if (r <= 0.0)
    throw DegenerateInput("offset radius must be positive");

  const std::size_t n = poly.size();
  std::vector<Point> seg_start(n), seg_end(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    const Point nrm = outward_normal(poly, i);
    seg_start[i] = poly[i] + nrm * r;
    seg_end[i] = poly.next(i) + nrm * r;
  }

  // Trim the offset edges meeting at reflex (or straight) vertices.
  for (std::size_t v = 0; v < n; ++v)
  {
    if (poly.is_convex_vertex(v))
      continue;
    const std::size_t in = (v + n - 1) % n;
    const Point d1 = seg_end[in] - seg_start[in];
    const Point d2 = seg_end[v] - seg_start[v];
    const double den = cross(d1, d2);
    Point meet = seg_start[v];
    if (std::abs(den) > kEpsGeom * norm(d1) * norm(d2))
    {
      const double t = cross(seg_start[v] - seg_start[in], d2) / den;
      meet = seg_start[in] + d1 * t;
    }
    seg_end[in] = meet;
    seg_start[v] = meet;
  }

  InflatedObstacle out;
  out.radius = r;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.boundary.append(Segment{seg_start[i], seg_end[i]});
    const std::size_t v = (i + 1) % n;
    if (poly.is_convex_vertex(v))
    {
      const Point n_in = outward_normal(poly, i);
      const Point n_out = outward_normal(poly, v);
      const double a0 = angle_of(n_in);
      const double sweep = normalize_angle(angle_of(n_out) - a0);
      out.boundary.append(CircArc{poly[v], r, a0, sweep, Orientation::CCW});
    }
  }
  return out;
}

} // namespace discplan

#endif // DISCPLAN__OFFSET_HPP
