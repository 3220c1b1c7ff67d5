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

#ifndef DISCPLAN__SVG_HPP
#define DISCPLAN__SVG_HPP

#include "revolve.hpp"
#include "trajectory.hpp"

#include <cstdio>

namespace discplan {

struct SvgStyle
{
  /// Output pixels per world unit.
  double scale = 8.0;
  double margin = 2.0;
  bool draw_areas = true;
  bool draw_initial = true;
  bool draw_final = true;
};

namespace detail {

inline std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

/// Path data for a piece in world coordinates (the caller flips y).
inline void piece_path(std::ostream& out, const Piece& p, bool move_to)
{
  const Point a = piece_start(p);
  if (move_to)
    out << "M" << num(a.x) << ' ' << num(a.y) << ' ';
  if (const auto* s = std::get_if<Segment>(&p))
  {
    out << "L" << num(s->b.x) << ' ' << num(s->b.y) << ' ';
    return;
  }
  // SVG arcs cannot describe a full turn; emit halves.
  const auto& arc = std::get<CircArc>(p);
  const int parts = arc.sweep > kPi ? 2 : 1;
  for (int k = 1; k <= parts; ++k)
  {
    const Point e = arc.at(static_cast<double>(k) / parts);
    out << "A" << num(arc.radius) << ' ' << num(arc.radius) << " 0 0 "
        << (arc.orientation == Orientation::CCW ? 1 : 0) << ' ' << num(e.x) << ' '
        << num(e.y) << ' ';
  }
}

struct Frame
{
  Point lo{0, 0};
  Point hi{1, 1};
};

inline Frame frame_of(const Scenario& s, double margin)
{
  Frame f;
  bool any = false;
  auto add = [&](const Point& p)
    {
      if (!any)
      {
        f.lo = f.hi = p;
        any = true;
      }
      f.lo = {std::min(f.lo.x, p.x), std::min(f.lo.y, p.y)};
      f.hi = {std::max(f.hi.x, p.x), std::max(f.hi.y, p.y)};
    };
  for (const auto& poly : s.obstacles)
    for (const auto& v : poly.vertices)
      add(v);
  for (const auto& p : s.positions())
    add(p);
  if (!any)
    f.hi = {10, 10};
  f.lo = f.lo - Point{margin, margin};
  f.hi = f.hi + Point{margin, margin};
  return f;
}

inline const char* robot_color(std::size_t i)
{
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % 10];
}

inline void open_svg(std::ostream& out, const Frame& f, double scale)
{
  const double w = (f.hi.x - f.lo.x) * scale, h = (f.hi.y - f.lo.y) * scale;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  // World coordinates with y pointing up.
  out << "<g transform=\"translate(" << num(-f.lo.x * scale) << ' ' << num(f.hi.y * scale)
      << ") scale(" << num(scale) << ' ' << num(-scale) << ")\">\n";
}

inline void draw_obstacles(std::ostream& out, const Scenario& s)
{
  for (const auto& poly : s.obstacles)
  {
    out << "<polygon fill=\"#888\" stroke=\"none\" points=\"";
    for (const auto& v : poly.vertices)
      out << num(v.x) << ',' << num(v.y) << ' ';
    out << "\"/>\n";
  }
}

inline void circle(std::ostream& out, const Point& c, double r, const std::string& attrs)
{
  out << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(r)
      << "\" " << attrs << "/>\n";
}

} // namespace detail

/// Scene overview: obstacles, revolving areas with their C and B circles,
/// initial paths (dashed) and final trajectories.
inline std::string render_static(const Scenario& s, const std::vector<RevolvingArea>& areas,
  const std::vector<Polycurve>& initial, const std::vector<Trajectory>& final_paths,
  const SvgStyle& style = {})
{
  std::ostringstream out;
  const auto f = detail::frame_of(s, style.margin);
  detail::open_svg(out, f, style.scale);
  detail::draw_obstacles(out, s);
  const double thin = 1.0 / style.scale;

  if (style.draw_areas)
    for (const auto& a : areas)
    {
      const std::string w = "stroke-width=\"" + detail::num(thin) + "\"";
      detail::circle(out, a.center, kTriggerRadius, "fill=\"none\" stroke=\"#ccc\" " + w);
      detail::circle(out, a.center, kRevolveRadius, "fill=\"#eef\" stroke=\"#99c\" " + w);
      detail::circle(out, a.center, kCoreRadius, "fill=\"none\" stroke=\"#66a\" " + w);
    }

  if (style.draw_initial)
    for (std::size_t i = 0; i < initial.size(); ++i)
    {
      if (initial[i].empty())
        continue;
      out << "<path fill=\"none\" stroke=\"" << detail::robot_color(i) << "\" stroke-width=\""
          << detail::num(1.5 * thin) << "\" stroke-dasharray=\"" << detail::num(0.5) << "\" d=\"";
      for (std::size_t k = 0; k < initial[i].size(); ++k)
        detail::piece_path(out, initial[i].pieces[k], k == 0);
      out << "\"/>\n";
    }

  if (style.draw_final)
    for (std::size_t i = 0; i < final_paths.size(); ++i)
    {
      out << "<path fill=\"none\" stroke=\"" << detail::robot_color(i) << "\" stroke-width=\""
          << detail::num(2.0 * thin) << "\" d=\"";
      bool first = true;
      for (const auto& m : final_paths[i].timeline)
      {
        if (const auto* mv = std::get_if<Move>(&m.motion))
          detail::piece_path(out, mv->piece, first);
        else if (std::holds_alternative<Retract>(m.motion))
        {
          for (int k = 0; k <= 16; ++k)
          {
            const Point p = motion_at(m.motion, k / 16.0);
            out << ((first && k == 0) ? "M" : "L") << detail::num(p.x) << ' ' << detail::num(p.y) << ' ';
          }
        }
        else
          continue;
        first = false;
      }
      out << "\"/>\n";
    }

  for (std::size_t i = 0; i < s.robot_count(); ++i)
  {
    detail::circle(out, s.starts[i], 0.15, std::string("fill=\"") + detail::robot_color(i) + "\"");
    detail::circle(out, s.targets[i], 0.15, "fill=\"none\" stroke=\"" + std::string(detail::robot_color(i))
      + "\" stroke-width=\"" + detail::num(thin) + "\"");
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

/// One drawing of the robot discs at time t.
inline std::string render_frame(const Scenario& s, const std::vector<Trajectory>& robots,
  double t, const SvgStyle& style = {})
{
  std::ostringstream out;
  const auto f = detail::frame_of(s, style.margin);
  detail::open_svg(out, f, style.scale);
  detail::draw_obstacles(out, s);
  for (std::size_t i = 0; i < robots.size(); ++i)
  {
    detail::circle(out, robots[i].at(t), 1.0, std::string("fill=\"") + detail::robot_color(i)
      + "\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"" + detail::num(1.0 / style.scale) + "\"");
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

/// `count` frames evenly spaced over [0, m].
inline std::vector<std::string> render_frames(const Scenario& s,
  const std::vector<Trajectory>& robots, std::size_t count, const SvgStyle& style = {})
{
  std::vector<std::string> out;
  const double horizon = static_cast<double>(s.robot_count());
  for (std::size_t k = 0; k < count; ++k)
  {
    const double t = count > 1 ? horizon * static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
    out.push_back(render_frame(s, robots, t, style));
  }
  return out;
}

} // namespace discplan

#endif // DISCPLAN__SVG_HPP
