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

#ifndef DISCPLAN__VALIDATE_HPP
#define DISCPLAN__VALIDATE_HPP

#include "obstacle_index.hpp"
#include "parallel.hpp"
#include "trajectory.hpp"

namespace discplan {

inline constexpr double kValidationEps = 1e-6;
/// Largest displacement of any robot between two samples.
inline constexpr double kSampleStep = 0.01;

enum class ViolationKind
{
  RobotRobot,
  RobotObstacle,
  Continuity,
  Endpoint,
};

inline const char* to_string(ViolationKind k)
{
  switch (k)
  {
    case ViolationKind::RobotRobot: return "robot-robot";
    case ViolationKind::RobotObstacle: return "robot-obstacle";
    case ViolationKind::Continuity: return "continuity";
    case ViolationKind::Endpoint: return "endpoint";
  }
  return "unknown";
}

struct Violation
{
  ViolationKind kind = ViolationKind::RobotRobot;
  double time = 0.0;
  std::size_t robot = 0;
  /// Second robot for robot-robot violations.
  std::size_t other = 0;
  /// Offending distance (center distance, clearance or gap).
  double value = 0.0;
};

struct ValidationReport
{
  std::size_t robot_count = 0;
  std::size_t samples = 0;
  std::size_t violation_count = 0;
  /// First violations in time order, capped.
  std::vector<Violation> violations;
  double min_robot_distance = std::numeric_limits<double>::infinity();
  double min_obstacle_clearance = std::numeric_limits<double>::infinity();
  double total_length = 0.0;
  /// Sum of shortest-path lengths, if known.
  double baseline_length = 0.0;
  double dist_ratio = std::numeric_limits<double>::quiet_NaN();

  bool ok() const { return violation_count == 0; }
};

namespace detail {

/// Bound on how far a robot can travel during [a, b] within one motion.
inline double travel_bound(const TimedMotion& m, double a, double b)
{
  const double span = m.t1 - m.t0;
  if (span <= 0.0 || std::holds_alternative<Dwell>(m.motion))
    return 0.0;
  double len = 0.0;
  if (const auto* mv = std::get_if<Move>(&m.motion))
    len = piece_length(mv->piece);
  else
  {
    // The retraction point moves at most as fast as the mover, since the
    // mover stays at distance >= 1 from the center.
    len = piece_length(std::get<Retract>(m.motion).mover);
  }
  return len * (b - a) / span;
}

} // namespace detail

/// Checks pairwise separation, obstacle clearance, continuity and
/// endpoints of a trajectory set by adaptive sampling.
inline ValidationReport validate_trajectories(const Scenario& scenario,
  const std::vector<Trajectory>& robots, double eps = kValidationEps,
  double baseline_length = 0.0, std::size_t workers = 1, std::size_t max_listed = 32)
{
  const std::size_t m = scenario.robot_count();
  ValidationReport rep;
  rep.robot_count = m;
  std::vector<Violation> found;

  if (robots.size() != m)
  {
    rep.violation_count = 1;
    rep.violations.push_back({ViolationKind::Endpoint, 0.0, robots.size(), 0,
      static_cast<double>(m)});
    return rep;
  }
  const double horizon = static_cast<double>(m);

  // Continuity and endpoints.
  for (std::size_t i = 0; i < m; ++i)
  {
    const auto& tl = robots[i].timeline;
    if (tl.empty())
    {
      found.push_back({ViolationKind::Continuity, 0.0, i, i, horizon});
      continue;
    }
    if (std::abs(tl.front().t0) > eps)
      found.push_back({ViolationKind::Continuity, 0.0, i, i, tl.front().t0});
    if (std::abs(tl.back().t1 - horizon) > eps)
      found.push_back({ViolationKind::Continuity, tl.back().t1, i, i, tl.back().t1 - horizon});
    for (std::size_t k = 0; k < tl.size(); ++k)
    {
      if (tl[k].t1 < tl[k].t0)
        found.push_back({ViolationKind::Continuity, tl[k].t0, i, i, tl[k].t0 - tl[k].t1});
      if (k == 0)
        continue;
      const double time_gap = std::abs(tl[k].t0 - tl[k - 1].t1);
      const double gap = dist(motion_at(tl[k - 1].motion, 1.0), motion_at(tl[k].motion, 0.0));
      if (time_gap > eps || gap > eps)
        found.push_back({ViolationKind::Continuity, tl[k].t0, i, i, std::max(gap, time_gap)});
    }
    const double ds = dist(robots[i].start(), scenario.starts[i]);
    const double dt = dist(robots[i].end(), scenario.targets[i]);
    if (ds > eps)
      found.push_back({ViolationKind::Endpoint, 0.0, i, i, ds});
    if (dt > eps)
      found.push_back({ViolationKind::Endpoint, horizon, i, i, dt});
    rep.total_length += robots[i].length();
  }

  // Global breakpoints: between two consecutive ones every robot stays in
  // a single motion.
  std::vector<double> cuts{0.0, horizon};
  for (const auto& r : robots)
    for (const auto& mo : r.timeline)
    {
      cuts.push_back(std::clamp(mo.t0, 0.0, horizon));
      cuts.push_back(std::clamp(mo.t1, 0.0, horizon));
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const ObstacleIndex obstacles(scenario.obstacles);
  const std::size_t intervals = cuts.size() - 1;
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (intervals + kChunk - 1) / kChunk;

  struct Partial
  {
    std::vector<Violation> found;
    std::size_t samples = 0;
    double min_robot = std::numeric_limits<double>::infinity();
    double min_obstacle = std::numeric_limits<double>::infinity();
  };
  std::vector<Partial> partial(chunks);

  parallel_for(chunks, workers, [&](std::size_t c)
    {
      Partial& out = partial[c];
      std::vector<std::size_t> cursor(m, 0);
      std::vector<double> travel(m);
      std::vector<const TimedMotion*> active(m);
      std::vector<Point> pos(m);
      for (std::size_t iv = c * kChunk; iv < std::min(intervals, (c + 1) * kChunk); ++iv)
      {
        const double a = cuts[iv], b = cuts[iv + 1];
        if (b <= a)
          continue;
        const double mid = 0.5 * (a + b);
        double max_travel = 0.0;
        for (std::size_t i = 0; i < m; ++i)
        {
          active[i] = &robots[i].timeline[robots[i].locate(mid)];
          travel[i] = detail::travel_bound(*active[i], a, b);
          max_travel = std::max(max_travel, travel[i]);
        }
        auto pos_at = [&](std::size_t i, double t)
          {
            const auto& mo = *active[i];
            const double span = mo.t1 - mo.t0;
            const double tau = span > 0.0 ? std::clamp((t - mo.t0) / span, 0.0, 1.0) : 1.0;
            return motion_at(mo.motion, tau);
          };
        for (std::size_t i = 0; i < m; ++i)
          pos[i] = pos_at(i, a);

        // Pairs that can come within 2 + margin during the interval.
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::vector<std::size_t> movers;
        for (std::size_t i = 0; i < m; ++i)
          if (travel[i] > 0.0)
            movers.push_back(i);
        const bool first = iv == 0;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = i + 1; j < m; ++j)
          {
            if (travel[i] == 0.0 && travel[j] == 0.0 && !first)
            {
              // Static pair: a single check suffices.
              const double d = dist(pos[i], pos[j]);
              out.min_robot = std::min(out.min_robot, d);
              if (d < 2.0 - eps)
                out.found.push_back({ViolationKind::RobotRobot, a, i, j, d});
              continue;
            }
            if (dist(pos[i], pos[j]) - travel[i] - travel[j] < 2.5)
              pairs.push_back({i, j});
          }

        const std::size_t steps = std::max<std::size_t>(1,
          static_cast<std::size_t>(std::ceil(max_travel / kSampleStep)));
        for (std::size_t s = 0; s <= steps; ++s)
        {
          const double t = a + (b - a) * static_cast<double>(s) / static_cast<double>(steps);
          for (auto i : movers)
            pos[i] = pos_at(i, t);
          ++out.samples;
          for (const auto& [i, j] : pairs)
          {
            const double d = dist(pos[i], pos[j]);
            out.min_robot = std::min(out.min_robot, d);
            if (d < 2.0 - eps)
              out.found.push_back({ViolationKind::RobotRobot, t, i, j, d});
          }
          for (std::size_t i = 0; i < m; ++i)
          {
            if (travel[i] == 0.0 && (s > 0 || !first))
              continue;
            const double cl = obstacles.clearance(pos[i], 2.0);
            out.min_obstacle = std::min(out.min_obstacle, cl);
            if (cl < 1.0 - eps)
              out.found.push_back({ViolationKind::RobotObstacle, t, i, i, cl});
          }
        }
      }
    });

  for (auto& p : partial)
  {
    rep.samples += p.samples;
    rep.min_robot_distance = std::min(rep.min_robot_distance, p.min_robot);
    rep.min_obstacle_clearance = std::min(rep.min_obstacle_clearance, p.min_obstacle);
    found.insert(found.end(), p.found.begin(), p.found.end());
  }
  std::stable_sort(found.begin(), found.end(),
    [](const Violation& x, const Violation& y) { return x.time < y.time; });
  rep.violation_count = found.size();
  found.resize(std::min(found.size(), max_listed));
  rep.violations = std::move(found);
  rep.baseline_length = baseline_length;
  if (baseline_length > 0.0)
    rep.dist_ratio = rep.total_length / baseline_length;
  else if (rep.total_length == 0.0)
    rep.dist_ratio = 1.0;
  return rep;
}

} // namespace discplan

#endif // DISCPLAN__VALIDATE_HPP
