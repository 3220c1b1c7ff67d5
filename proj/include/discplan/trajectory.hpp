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

#ifndef DISCPLAN__TRAJECTORY_HPP
#define DISCPLAN__TRAJECTORY_HPP

#include "scenario.hpp"

namespace discplan {

/// Zero-length retraction direction: the mover sits on the center.
class DegenerateDirection : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Point of the unit circle about c diametrically opposite the direction
/// towards x.
inline Point retraction_point(const Point& c, const Point& x)
{
  const Point d = x - c;
  if (norm(d) <= kEpsGeom)
    throw DegenerateDirection("retraction direction undefined at the center");
  return c - d / norm(d);
}

struct Dwell
{
  Point p;
};

struct Move
{
  Piece piece;
};

/// A host retracting about `center` while the mover follows `mover`.
struct Retract
{
  Point center;
  Piece mover;
};

using Motion = std::variant<Dwell, Move, Retract>;

inline Point motion_at(const Motion& m, double tau)
{
  if (const auto* d = std::get_if<Dwell>(&m))
    return d->p;
  if (const auto* mv = std::get_if<Move>(&m))
    return piece_at(mv->piece, tau);
  const auto& r = std::get<Retract>(m);
  return retraction_point(r.center, piece_at(r.mover, tau));
}

namespace detail {

inline double wrapped(double a)
{
  a = std::fmod(a + kPi, kTwoPi);
  if (a < 0.0)
    a += kTwoPi;
  return a - kPi;
}

/// Total variation of the direction from c to the piece, in radians.
inline double angle_variation(const Point& c, const Piece& piece)
{
  auto ang = [&](double t) { return std::atan2((piece_at(piece, t) - c).y, (piece_at(piece, t) - c).x); };
  if (std::holds_alternative<Segment>(piece))
    return std::abs(wrapped(ang(1.0) - ang(0.0)));

  // Arcs: split where the direction is stationary (tangent lines from c to
  // the arc's circle) and subdivide each monotone part.
  const auto& arc = std::get<CircArc>(piece);
  std::vector<double> cuts{0.0, 1.0};
  const double d = dist(c, arc.center);
  if (d > arc.radius)
  {
    const double base = angle_of(c - arc.center);
    const double off = std::acos(arc.radius / d);
    for (double a : {base + off, base - off})
    {
      const double t = arc.param_of_angle(a);
      if (t > 0.0 && t < 1.0)
        cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  constexpr int steps = 32;
  for (std::size_t k = 1; k < cuts.size(); ++k)
  {
    double prev = ang(cuts[k - 1]);
    for (int j = 1; j <= steps; ++j)
    {
      const double cur = ang(cuts[k - 1] + (cuts[k] - cuts[k - 1]) * j / steps);
      total += std::abs(wrapped(cur - prev));
      prev = cur;
    }
  }
  return total;
}

} // namespace detail

/// Arc length traced by the motion. A retraction point moves on a unit
/// circle, so its length equals the angular variation of the mover.
inline double motion_length(const Motion& m)
{
  if (std::holds_alternative<Dwell>(m))
    return 0.0;
  if (const auto* mv = std::get_if<Move>(&m))
    return piece_length(mv->piece);
  const auto& r = std::get<Retract>(m);
  return detail::angle_variation(r.center, r.mover);
}

struct TimedMotion
{
  double t0 = 0.0;
  double t1 = 0.0;
  Motion motion;
};

/// Piecewise timeline of one robot covering [0, m] without gaps.
struct Trajectory
{
  std::vector<TimedMotion> timeline;

  double t_begin() const { return timeline.empty() ? 0.0 : timeline.front().t0; }
  double t_end() const { return timeline.empty() ? 0.0 : timeline.back().t1; }

  /// Index of the motion active at time t (the later one at boundaries).
  std::size_t locate(double t) const
  {
    const auto it = std::upper_bound(timeline.begin(), timeline.end(), t,
      [](double v, const TimedMotion& m) { return v < m.t1; });
    if (it == timeline.end())
      return timeline.size() - 1;
    return static_cast<std::size_t>(it - timeline.begin());
  }

  Point at(double t) const
  {
    const auto& m = timeline[locate(t)];
    const double span = m.t1 - m.t0;
    const double tau = span > 0.0 ? std::clamp((t - m.t0) / span, 0.0, 1.0) : 1.0;
    return motion_at(m.motion, tau);
  }

  double length() const
  {
    double total = 0.0;
    for (const auto& m : timeline)
      total += motion_length(m.motion);
    return total;
  }

  Point start() const { return motion_at(timeline.front().motion, 0.0); }
  Point end() const { return motion_at(timeline.back().motion, 1.0); }
};

//==============================================================================
// Text format:
//   discplan-trajectories 1
//   robots <m>
//   robot <i> entries <k>
//   dwell t0 t1 x y
//   segment t0 t1 ax ay bx by
//   arc t0 t1 cx cy r start sweep ccw|cw
//   retract-segment t0 t1 cx cy ax ay bx by
//   retract-arc t0 t1 cx cy ox oy r start sweep ccw|cw
//   end

namespace detail {

inline void write_piece_params(std::ostream& out, const Piece& p)
{
  if (const auto* s = std::get_if<Segment>(&p))
  {
    out << ' ' << format_real(s->a.x) << ' ' << format_real(s->a.y) << ' '
        << format_real(s->b.x) << ' ' << format_real(s->b.y);
    return;
  }
  const auto& a = std::get<CircArc>(p);
  out << ' ' << format_real(a.center.x) << ' ' << format_real(a.center.y) << ' '
      << format_real(a.radius) << ' ' << format_real(a.start_angle) << ' '
      << format_real(a.sweep) << ' '
      << (a.orientation == Orientation::CCW ? "ccw" : "cw");
}

inline Piece read_piece(std::istringstream& in, std::size_t line, bool arc)
{
  if (!arc)
  {
    Segment s;
    s.a.x = read_field<double>(in, line, "x");
    s.a.y = read_field<double>(in, line, "y");
    s.b.x = read_field<double>(in, line, "x");
    s.b.y = read_field<double>(in, line, "y");
    return s;
  }
  CircArc a;
  a.center.x = read_field<double>(in, line, "center x");
  a.center.y = read_field<double>(in, line, "center y");
  a.radius = read_field<double>(in, line, "radius");
  a.start_angle = read_field<double>(in, line, "start angle");
  a.sweep = read_field<double>(in, line, "sweep");
  const auto o = read_field<std::string>(in, line, "orientation");
  if (o != "ccw" && o != "cw")
    throw ParseError(line, "orientation must be ccw or cw, found '" + o + "'");
  a.orientation = o == "ccw" ? Orientation::CCW : Orientation::CW;
  return a;
}

} // namespace detail

inline void write_trajectories(std::ostream& out, const std::vector<Trajectory>& robots)
{
  out << "discplan-trajectories 1\n";
  out << "robots " << robots.size() << "\n";
  for (std::size_t i = 0; i < robots.size(); ++i)
  {
    out << "robot " << i << " entries " << robots[i].timeline.size() << "\n";
    for (const auto& m : robots[i].timeline)
    {
      const std::string times = format_real(m.t0) + ' ' + format_real(m.t1);
      if (const auto* d = std::get_if<Dwell>(&m.motion))
        out << "dwell " << times << ' ' << format_real(d->p.x) << ' ' << format_real(d->p.y);
      else if (const auto* mv = std::get_if<Move>(&m.motion))
      {
        out << (is_arc(mv->piece) ? "arc " : "segment ") << times;
        detail::write_piece_params(out, mv->piece);
      }
      else
      {
        const auto& r = std::get<Retract>(m.motion);
        out << (is_arc(r.mover) ? "retract-arc " : "retract-segment ") << times << ' '
            << format_real(r.center.x) << ' ' << format_real(r.center.y);
        detail::write_piece_params(out, r.mover);
      }
      out << "\n";
    }
  }
  out << "end\n";
}

inline std::vector<Trajectory> read_trajectories(std::istream& in)
{
  detail::LineReader r(in);
  std::istringstream rest;
  detail::expect_key(r, rest, "discplan-trajectories");
  const int version = detail::read_field<int>(rest, r.line(), "version");
  if (version != 1)
    throw ParseError(r.line(), "unsupported version " + std::to_string(version));
  detail::expect_key(r, rest, "robots");
  const auto m = detail::read_field<std::size_t>(rest, r.line(), "robot count");
  std::vector<Trajectory> robots(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    detail::expect_key(r, rest, "robot");
    const auto idx = detail::read_field<std::size_t>(rest, r.line(), "robot index");
    if (idx != i)
      throw ParseError(r.line(), "robot index out of sequence");
    const auto word = detail::read_field<std::string>(rest, r.line(), "'entries'");
    if (word != "entries")
      throw ParseError(r.line(), "expected 'entries'");
    const auto k = detail::read_field<std::size_t>(rest, r.line(), "entry count");
    for (std::size_t j = 0; j < k; ++j)
    {
      std::string key;
      if (!r.next(key, rest))
        throw ParseError(r.line(), "unexpected end of file in robot block");
      TimedMotion tm;
      tm.t0 = detail::read_field<double>(rest, r.line(), "t0");
      tm.t1 = detail::read_field<double>(rest, r.line(), "t1");
      if (key == "dwell")
      {
        Dwell d;
        d.p.x = detail::read_field<double>(rest, r.line(), "x");
        d.p.y = detail::read_field<double>(rest, r.line(), "y");
        tm.motion = d;
      }
      else if (key == "segment" || key == "arc")
        tm.motion = Move{detail::read_piece(rest, r.line(), key == "arc")};
      else if (key == "retract-segment" || key == "retract-arc")
      {
        Retract rt;
        rt.center.x = detail::read_field<double>(rest, r.line(), "center x");
        rt.center.y = detail::read_field<double>(rest, r.line(), "center y");
        rt.mover = detail::read_piece(rest, r.line(), key == "retract-arc");
        tm.motion = rt;
      }
      else
        throw ParseError(r.line(), "unknown primitive '" + key + "'");
      robots[i].timeline.push_back(tm);
    }
  }
  detail::expect_key(r, rest, "end");
  return robots;
}

inline void save_trajectories(const std::vector<Trajectory>& robots, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write trajectory file " + path);
  write_trajectories(out, robots);
}

inline std::vector<Trajectory> load_trajectories(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open trajectory file " + path);
  return read_trajectories(in);
}

} // namespace discplan

#endif // DISCPLAN__TRAJECTORY_HPP
