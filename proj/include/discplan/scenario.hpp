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

#ifndef DISCPLAN__SCENARIO_HPP
#define DISCPLAN__SCENARIO_HPP

#include "geom.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace discplan {

class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t line, const std::string& what)
  : std::runtime_error("line " + std::to_string(line) + ": " + what),
    _line(line)
  {
  }

  std::size_t line() const { return _line; }

private:
  std::size_t _line;
};

class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Unit-disc robots with start/target positions among polygonal obstacles.
struct Scenario
{
  std::string name = "unnamed";
  std::vector<Polygon> obstacles;
  std::vector<Point> starts;
  std::vector<Point> targets;

  std::size_t robot_count() const { return starts.size(); }

  /// Positions are indexed starts first, then targets.
  std::size_t position_count() const { return starts.size() + targets.size(); }

  const Point& position(std::size_t k) const
  {
    return k < starts.size() ? starts[k] : targets[k - starts.size()];
  }

  std::vector<Point> positions() const
  {
    std::vector<Point> all = starts;
    all.insert(all.end(), targets.begin(), targets.end());
    return all;
  }

  std::size_t start_index(std::size_t robot) const { return robot; }
  std::size_t target_index(std::size_t robot) const { return starts.size() + robot; }

  std::size_t vertex_count() const
  {
    std::size_t n = 0;
    for (const auto& o : obstacles)
      n += o.size();
    return n;
  }

  bool operator==(const Scenario& o) const
  {
    if (name != o.name || starts != o.starts || targets != o.targets
      || obstacles.size() != o.obstacles.size())
      return false;
    for (std::size_t i = 0; i < obstacles.size(); ++i)
      if (obstacles[i].vertices != o.obstacles[i].vertices)
        return false;
    return true;
  }
};

/// Throws ValidationError naming the first broken invariant.
inline void validate_scenario(const Scenario& s)
{
  if (s.starts.empty())
    throw ValidationError("scenario needs at least one robot");
  if (s.starts.size() != s.targets.size())
    throw ValidationError("start and target counts differ");
  for (std::size_t i = 0; i < s.obstacles.size(); ++i)
  {
    const auto& poly = s.obstacles[i];
    for (const auto& v : poly.vertices)
      if (!is_finite(v))
        throw ValidationError("obstacle " + std::to_string(i) + " has a non-finite vertex");
    if (poly.size() < 3)
      throw ValidationError("obstacle " + std::to_string(i) + " has fewer than 3 vertices");
    if (!poly.is_ccw())
      throw ValidationError("obstacle " + std::to_string(i) + " is not counterclockwise");
    if (!is_simple(poly))
      throw ValidationError("obstacle " + std::to_string(i) + " is not simple");
  }
  for (std::size_t k = 0; k < s.position_count(); ++k)
  {
    const Point& p = s.position(k);
    const bool is_start = k < s.starts.size();
    const std::size_t robot = is_start ? k : k - s.starts.size();
    const std::string label = std::string(is_start ? "start" : "target")
      + " of robot " + std::to_string(robot);
    if (!is_finite(p))
      throw ValidationError(label + " is not finite");
    if (dist_point_obstacles(p, s.obstacles) < 1.0 - kEpsGeom)
      throw ValidationError(label + " is not in free space");
  }
}

//==============================================================================
// File format
//
//   discplan-scenario 1
//   name <text to end of line>
//   obstacles <count>
//   polygon <k> <x1> <y1> ... <xk> <yk>        (count lines)
//   robots <m>
//   robot <i> <sx> <sy> <tx> <ty>              (m lines, i = 0..m-1)
//   end
//
// Blank lines and lines starting with '#' are ignored. Numbers are written
// with 17 significant digits.

inline std::string format_real(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_scenario(std::ostream& out, const Scenario& s)
{
  out << "discplan-scenario 1\n";
  out << "name " << s.name << "\n";
  out << "obstacles " << s.obstacles.size() << "\n";
  for (const auto& poly : s.obstacles)
  {
    out << "polygon " << poly.size();
    for (const auto& v : poly.vertices)
      out << ' ' << format_real(v.x) << ' ' << format_real(v.y);
    out << "\n";
  }
  out << "robots " << s.starts.size() << "\n";
  for (std::size_t i = 0; i < s.starts.size(); ++i)
    out << "robot " << i << ' ' << format_real(s.starts[i].x) << ' '
        << format_real(s.starts[i].y) << ' ' << format_real(s.targets[i].x)
        << ' ' << format_real(s.targets[i].y) << "\n";
  out << "end\n";
}

namespace detail {

class LineReader
{
public:
  explicit LineReader(std::istream& in) : _in(in) {}

  /// Next non-blank, non-comment line split at the first token.
  bool next(std::string& key, std::istringstream& rest)
  {
    std::string line;
    while (std::getline(_in, line))
    {
      ++_line;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#')
        continue;
      std::istringstream ss(line.substr(first));
      ss >> key;
      std::string remainder;
      std::getline(ss, remainder);
      rest.clear();
      rest.str(remainder);
      return true;
    }
    return false;
  }

  std::size_t line() const { return _line; }

private:
  std::istream& _in;
  std::size_t _line = 0;
};

template<typename T>
T read_field(std::istringstream& in, std::size_t line, const char* field)
{
  T v{};
  if (!(in >> v))
    throw ParseError(line, std::string("expected ") + field);
  return v;
}

inline void expect_key(
  LineReader& r, std::istringstream& rest, const std::string& want)
{
  std::string key;
  if (!r.next(key, rest))
    throw ParseError(r.line(), "unexpected end of file, expected '" + want + "'");
  if (key != want)
    throw ParseError(r.line(), "expected '" + want + "', found '" + key + "'");
}

} // namespace detail

/// Parses and validates a scenario.
inline Scenario read_scenario(std::istream& in)
{
  detail::LineReader r(in);
  std::istringstream rest;
  Scenario s;

  detail::expect_key(r, rest, "discplan-scenario");
  const int version = detail::read_field<int>(rest, r.line(), "version");
  if (version != 1)
    throw ParseError(r.line(), "unsupported version " + std::to_string(version));

  detail::expect_key(r, rest, "name");
  std::getline(rest >> std::ws, s.name);
  if (s.name.empty())
    s.name = "unnamed";

  detail::expect_key(r, rest, "obstacles");
  const auto count = detail::read_field<std::size_t>(rest, r.line(), "obstacle count");
  for (std::size_t i = 0; i < count; ++i)
  {
    detail::expect_key(r, rest, "polygon");
    const auto k = detail::read_field<std::size_t>(rest, r.line(), "vertex count");
    Polygon poly;
    for (std::size_t j = 0; j < k; ++j)
    {
      const double x = detail::read_field<double>(rest, r.line(), "vertex x");
      const double y = detail::read_field<double>(rest, r.line(), "vertex y");
      poly.vertices.push_back({x, y});
    }
    s.obstacles.push_back(std::move(poly));
  }

  detail::expect_key(r, rest, "robots");
  const auto m = detail::read_field<std::size_t>(rest, r.line(), "robot count");
  for (std::size_t i = 0; i < m; ++i)
  {
    detail::expect_key(r, rest, "robot");
    const auto idx = detail::read_field<std::size_t>(rest, r.line(), "robot index");
    if (idx != i)
      throw ParseError(r.line(), "robot index " + std::to_string(idx)
        + " out of sequence, expected " + std::to_string(i));
    const double sx = detail::read_field<double>(rest, r.line(), "start x");
    const double sy = detail::read_field<double>(rest, r.line(), "start y");
    const double tx = detail::read_field<double>(rest, r.line(), "target x");
    const double ty = detail::read_field<double>(rest, r.line(), "target y");
    s.starts.push_back({sx, sy});
    s.targets.push_back({tx, ty});
  }
  detail::expect_key(r, rest, "end");

  validate_scenario(s);
  return s;
}

inline Scenario load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open scenario file " + path);
  return read_scenario(in);
}

inline void save_scenario(const Scenario& s, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write scenario file " + path);
  write_scenario(out, s);
}

} // namespace discplan

#endif // DISCPLAN__SCENARIO_HPP
