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

#ifndef DISCPLAN__GEOM_HPP
#define DISCPLAN__GEOM_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace discplan {

/// Tolerance shared by every incidence predicate in the library.
inline constexpr double kEpsGeom = 1e-9;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class DegenerateInput : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
struct Point
{
  double x = 0.0;
  double y = 0.0;

  constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator-() const { return {-x, -y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  constexpr Point operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Point&) const = default;
};

constexpr Point operator*(double s, const Point& p) { return p * s; }

inline constexpr double dot(const Point& a, const Point& b)
{
  return a.x * b.x + a.y * b.y;
}

inline constexpr double cross(const Point& a, const Point& b)
{
  return a.x * b.y - a.y * b.x;
}

inline double norm(const Point& p) { return std::hypot(p.x, p.y); }
inline constexpr double norm2(const Point& p) { return dot(p, p); }
inline double dist(const Point& a, const Point& b) { return norm(a - b); }

/// Rotation by +90 degrees.
inline constexpr Point left_of(const Point& d) { return {-d.y, d.x}; }

inline Point unit(const Point& p)
{
  const double n = norm(p);
  if (n <= 0.0)
    throw DegenerateInput("cannot normalize a zero vector");
  return p / n;
}

inline Point polar(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline bool is_finite(const Point& p)
{
  return std::isfinite(p.x) && std::isfinite(p.y);
}

/// Maps any angle onto [0, 2pi).
inline double normalize_angle(double a)
{
  a = std::fmod(a, kTwoPi);
  if (a < 0.0)
    a += kTwoPi;
  if (a >= kTwoPi)
    a = 0.0;
  return a;
}

inline double angle_of(const Point& v) { return normalize_angle(std::atan2(v.y, v.x)); }

//==============================================================================
struct Segment
{
  Point a;
  Point b;

  double length() const { return dist(a, b); }
  Point at(double t) const { return a + (b - a) * t; }
  Point start() const { return a; }
  Point end() const { return b; }
  Segment reversed() const { return {b, a}; }
  Segment sub(double t0, double t1) const { return {at(t0), at(t1)}; }
};

enum class Orientation { CCW, CW };

inline Orientation flip(Orientation o)
{
  return o == Orientation::CCW ? Orientation::CW : Orientation::CCW;
}

/// A circular arc. The angular extent is stored explicitly as a positive
/// sweep in (0, 2pi] so that full circles and tiny arcs are unambiguous;
/// the direction of travel is given by the orientation.
struct CircArc
{
  Point center;
  double radius = 1.0;
  double start_angle = 0.0;
  double sweep = 0.0;
  Orientation orientation = Orientation::CCW;

  double sign() const { return orientation == Orientation::CCW ? 1.0 : -1.0; }
  double end_angle() const { return normalize_angle(start_angle + sign() * sweep); }
  double length() const { return radius * sweep; }
  double angle_at(double t) const { return start_angle + sign() * sweep * t; }
  Point at(double t) const { return center + polar(angle_at(t)) * radius; }
  Point start() const { return at(0.0); }
  Point end() const { return at(1.0); }

  CircArc reversed() const
  {
    return {center, radius, end_angle(), sweep, flip(orientation)};
  }

  CircArc sub(double t0, double t1) const
  {
    return {center, radius, normalize_angle(angle_at(t0)), sweep * (t1 - t0),
      orientation};
  }

  /// Parameter of the point at `angle` measured along the direction of
  /// travel; values above 1 lie outside the arc.
  double param_of_angle(double angle) const
  {
    const double delta = sign() > 0 ? normalize_angle(angle - start_angle)
                                    : normalize_angle(start_angle - angle);
    if (sweep <= 0.0)
      return delta == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    double t = delta / sweep;
    // An angle just before the start reads as ~2pi.
    if (t > 1.0 && (kTwoPi - delta) * radius <= kEpsGeom)
      t = 0.0;
    return t;
  }

  /// Arc from p to q around `center` in the given direction. Both points
  /// are projected onto the circle of the given radius.
  static CircArc through(
    const Point& center, double radius, const Point& p, const Point& q,
    Orientation o)
  {
    const double a0 = angle_of(p - center);
    const double a1 = angle_of(q - center);
    double sweep = o == Orientation::CCW ? normalize_angle(a1 - a0)
                                         : normalize_angle(a0 - a1);
    return {center, radius, a0, sweep, o};
  }
};

using Piece = std::variant<Segment, CircArc>;

inline Point piece_start(const Piece& p)
{
  return std::visit([](const auto& x) { return x.start(); }, p);
}

inline Point piece_end(const Piece& p)
{
  return std::visit([](const auto& x) { return x.end(); }, p);
}

inline Point piece_at(const Piece& p, double t)
{
  return std::visit([t](const auto& x) { return x.at(t); }, p);
}

inline double piece_length(const Piece& p)
{
  return std::visit([](const auto& x) { return x.length(); }, p);
}

inline Piece piece_reversed(const Piece& p)
{
  return std::visit([](const auto& x) -> Piece { return x.reversed(); }, p);
}

inline Piece piece_sub(const Piece& p, double t0, double t1)
{
  return std::visit([=](const auto& x) -> Piece { return x.sub(t0, t1); }, p);
}

inline bool is_arc(const Piece& p) { return std::holds_alternative<CircArc>(p); }

//==============================================================================
/// Ordered sequence of segments and arcs. Positions along the curve are
/// addressed by a single parameter u = piece index + local parameter.
struct Polycurve
{
  std::vector<Piece> pieces;

  bool empty() const { return pieces.empty(); }
  std::size_t size() const { return pieces.size(); }
  double param_end() const { return static_cast<double>(pieces.size()); }

  Point start() const { return piece_start(pieces.front()); }
  Point end() const { return piece_end(pieces.back()); }

  double length() const
  {
    double total = 0.0;
    for (const auto& p : pieces)
      total += piece_length(p);
    return total;
  }

  /// Splits u into (piece index, local parameter).
  std::pair<std::size_t, double> locate(double u) const
  {
    if (pieces.empty())
      throw DegenerateInput("empty polycurve");
    u = std::clamp(u, 0.0, param_end());
    auto k = static_cast<std::size_t>(std::floor(u));
    if (k >= pieces.size())
      k = pieces.size() - 1;
    return {k, u - static_cast<double>(k)};
  }

  Point at(double u) const
  {
    const auto [k, t] = locate(u);
    return piece_at(pieces[k], t);
  }

  /// Appends a piece, dropping pieces shorter than the tolerance.
  void append(const Piece& p)
  {
    if (piece_length(p) <= kEpsGeom)
      return;
    pieces.push_back(p);
  }

  void append(const Polycurve& other)
  {
    for (const auto& p : other.pieces)
      append(p);
  }

  /// Sub-curve between parameters u0 <= u1.
  Polycurve slice(double u0, double u1) const
  {
    Polycurve out;
    if (pieces.empty() || u1 <= u0)
      return out;
    const auto [k0, t0] = locate(u0);
    auto [k1, t1] = locate(u1);
    if (k1 > k0 && t1 == 0.0)
    {
      --k1;
      t1 = 1.0;
    }
    for (std::size_t k = k0; k <= k1; ++k)
    {
      const double a = (k == k0) ? t0 : 0.0;
      const double b = (k == k1) ? t1 : 1.0;
      if (b > a)
        out.append(a == 0.0 && b == 1.0 ? pieces[k] : piece_sub(pieces[k], a, b));
    }
    return out;
  }

  Polycurve reversed() const
  {
    Polycurve out;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
      out.pieces.push_back(piece_reversed(*it));
    return out;
  }

  /// Largest gap between consecutive piece endpoints.
  double max_gap() const
  {
    double g = 0.0;
    for (std::size_t k = 1; k < pieces.size(); ++k)
      g = std::max(g, dist(piece_end(pieces[k - 1]), piece_start(pieces[k])));
    return g;
  }
};

//==============================================================================
struct Polygon
{
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
  const Point& next(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
  const Point& prev(std::size_t i) const
  {
    return vertices[(i + vertices.size() - 1) % vertices.size()];
  }
  Segment edge(std::size_t i) const { return {vertices[i], next(i)}; }

  double signed_area() const
  {
    double a = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      a += cross(vertices[i], next(i));
    return 0.5 * a;
  }

  bool is_ccw() const { return signed_area() > 0.0; }

  /// Interior angle at vertex i is below pi.
  bool is_convex_vertex(std::size_t i) const
  {
    return cross(vertices[i] - prev(i), next(i) - vertices[i]) > 0.0;
  }
};

//==============================================================================
// Distances and predicates

inline double closest_param_segment(const Point& p, const Point& a, const Point& b)
{
  const Point d = b - a;
  const double len2 = norm2(d);
  if (len2 <= 0.0)
    return 0.0;
  return std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
}

inline double dist_point_segment(const Point& p, const Point& a, const Point& b)
{
  return dist(p, a + (b - a) * closest_param_segment(p, a, b));
}

inline int orient_sign(const Point& a, const Point& b, const Point& c)
{
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment_box(const Point& p, const Point& a, const Point& b)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)
    && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// Closed segments [a,b] and [c,d] share a point.
inline bool segments_intersect(
  const Point& a, const Point& b, const Point& c, const Point& d)
{
  const int o1 = orient_sign(a, b, c);
  const int o2 = orient_sign(a, b, d);
  const int o3 = orient_sign(c, d, a);
  const int o4 = orient_sign(c, d, b);
  if (o1 != o2 && o3 != o4)
    return true;
  if (o1 == 0 && on_segment_box(c, a, b)) return true;
  if (o2 == 0 && on_segment_box(d, a, b)) return true;
  if (o3 == 0 && on_segment_box(a, c, d)) return true;
  if (o4 == 0 && on_segment_box(b, c, d)) return true;
  return false;
}

inline double dist_segment_segment(
  const Point& a, const Point& b, const Point& c, const Point& d)
{
  if (segments_intersect(a, b, c, d))
    return 0.0;
  return std::min({dist_point_segment(a, c, d), dist_point_segment(b, c, d),
    dist_point_segment(c, a, b), dist_point_segment(d, a, b)});
}

inline bool point_in_polygon(const Point& p, const Polygon& poly)
{
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
  {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y))
    {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x)
        inside = !inside;
    }
  }
  return inside;
}

/// Distance to the closed polygonal region (zero inside).
inline double dist_point_polygon(const Point& p, const Polygon& poly)
{
  if (point_in_polygon(p, poly))
    return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, dist_point_segment(p, poly[i], poly.next(i)));
  return best;
}

inline double dist_point_obstacles(const Point& p, std::span<const Polygon> obstacles)
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : obstacles)
    best = std::min(best, dist_point_polygon(p, o));
  return best;
}

inline double dist_segment_polygon(const Point& a, const Point& b, const Polygon& poly)
{
  if (point_in_polygon(a, poly))
    return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, dist_segment_segment(a, b, poly[i], poly.next(i)));
  return best;
}

inline double dist_point_arc(const Point& p, const CircArc& arc)
{
  const Point v = p - arc.center;
  if (norm(v) <= 0.0)
    return arc.radius;
  if (arc.param_of_angle(angle_of(v)) <= 1.0)
    return std::abs(norm(v) - arc.radius);
  return std::min(dist(p, arc.start()), dist(p, arc.end()));
}

inline double dist_point_piece(const Point& p, const Piece& piece)
{
  if (const auto* s = std::get_if<Segment>(&piece))
    return dist_point_segment(p, s->a, s->b);
  return dist_point_arc(p, std::get<CircArc>(piece));
}

inline double dist_point_polycurve(const Point& p, const Polycurve& c)
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : c.pieces)
    best = std::min(best, dist_point_piece(p, piece));
  return best;
}

/// Polygon has no two non-adjacent edges touching and adjacent edges only
/// meet at their shared vertex.
inline bool is_simple(const Polygon& poly)
{
  const std::size_t n = poly.size();
  if (n < 3)
    return false;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (dist(poly[i], poly.next(i)) <= kEpsGeom)
      return false;
    for (std::size_t j = i + 1; j < n; ++j)
    {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent)
      {
        // Adjacent edges may only fold back onto each other if collinear
        // and overlapping, which we reject.
        const std::size_t shared = (j == i + 1) ? j : i;
        const Point& s = poly[shared];
        const Point& p = poly.prev(shared);
        const Point& q = poly.next(shared);
        if (std::abs(cross(s - p, q - s)) <= kEpsGeom * dist(s, p) * dist(q, s)
          && dot(s - p, q - s) < 0.0)
          return false;
        continue;
      }
      if (segments_intersect(poly[i], poly.next(i), poly[j], poly.next(j)))
        return false;
    }
  }
  return true;
}

} // namespace discplan

#endif // DISCPLAN__GEOM_HPP
