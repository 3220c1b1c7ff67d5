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

#ifndef DISCPLAN__COORDINATE_HPP
#define DISCPLAN__COORDINATE_HPP

#include "intersect.hpp"
#include "revolve.hpp"
#include "trajectory.hpp"

#include <map>
#include <set>

namespace discplan {

/// A path does not meet the requirements of the coordination step.
class PreconditionViolated : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A circle belonging to an occupied position.
struct OwnedCircle
{
  std::size_t owner = 0;
  Point center;
  double radius = 1.0;
};

inline std::vector<OwnedCircle> owned_circles(
  const std::vector<RevolvingArea>& areas, double radius)
{
  std::vector<OwnedCircle> out;
  out.reserve(areas.size());
  for (const auto& a : areas)
    out.push_back({a.position, a.center, radius});
  return out;
}

struct CrossingEvent
{
  std::size_t owner = 0;
  bool entrance = true;
  /// Path parameter u = piece index + local parameter.
  double param = 0.0;
  Point point;
};

/// Events closer than this in path parameter are treated as simultaneous.
inline constexpr double kSimultaneousParam = 1e-10;

namespace detail {

inline bool may_touch(const Piece& piece, const Point& c, double r)
{
  if (const auto* s = std::get_if<Segment>(&piece))
    return dist_point_segment(c, s->a, s->b) <= r + kEpsGeom;
  const auto& a = std::get<CircArc>(piece);
  return std::abs(dist(c, a.center) - a.radius) <= r + kEpsGeom;
}

} // namespace detail

/// Entrances into and exits from the open discs along the path. A stretch
/// counts as inside when its midpoint lies deeper than the tolerance, so
/// grazing contacts produce no event. Events are ordered by parameter;
/// simultaneous events list exits first, then by owner.
inline std::vector<CrossingEvent> compute_crossings(
  const Polycurve& path, const std::vector<OwnedCircle>& circles)
{
  std::vector<CrossingEvent> events;
  if (path.empty())
    return events;
  const double end = path.param_end();
  for (const auto& circle : circles)
  {
    std::vector<double> us{0.0, end};
    bool near = false;
    for (std::size_t k = 0; k < path.size(); ++k)
    {
      if (!detail::may_touch(path.pieces[k], circle.center, circle.radius))
        continue;
      near = true;
      for (const auto& h : piece_circle_contacts(path.pieces[k], circle.center, circle.radius))
        us.push_back(static_cast<double>(k) + h.param);
    }
    if (!near)
      continue;
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end(),
      [](double a, double b) { return b - a <= 1e-12; }), us.end());
    if (us.back() != end)
      us.back() = end;

    auto inside = [&](double u)
      {
        return dist(path.at(u), circle.center) < circle.radius - kEpsGeom;
      };
    // Endpoints on the circle count as outside, so a path leaving from or
    // arriving at the boundary still produces its entrance or exit.
    bool prev = inside(0.0);
    for (std::size_t k = 0; k + 1 < us.size(); ++k)
    {
      const bool cur = inside(0.5 * (us[k] + us[k + 1]));
      if (cur != prev)
        events.push_back({circle.owner, cur, us[k], path.at(us[k])});
      prev = cur;
    }
    if (prev && !inside(end))
      events.push_back({circle.owner, false, end, path.end()});
  }
  std::sort(events.begin(), events.end(),
    [](const CrossingEvent& a, const CrossingEvent& b) { return a.param < b.param; });
  // Order groups of simultaneous events: exits first, then by owner.
  for (std::size_t i = 0; i < events.size();)
  {
    std::size_t j = i + 1;
    while (j < events.size() && events[j].param - events[j - 1].param <= kSimultaneousParam)
      ++j;
    std::sort(events.begin() + static_cast<std::ptrdiff_t>(i),
      events.begin() + static_cast<std::ptrdiff_t>(j),
      [](const CrossingEvent& a, const CrossingEvent& b)
      {
        if (a.entrance != b.entrance)
          return !a.entrance;
        return a.owner < b.owner;
      });
    i = j;
  }
  return events;
}

/// Pairs each entrance with the following exit of the same owner and
/// checks that the path starts and ends outside every disc.
inline std::vector<std::pair<std::size_t, std::size_t>> crossing_intervals(
  const std::vector<CrossingEvent>& events)
{
  std::map<std::size_t, std::size_t> open;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < events.size(); ++k)
  {
    const auto& e = events[k];
    const auto it = open.find(e.owner);
    if (e.entrance)
    {
      if (it != open.end())
        throw PreconditionViolated("two entrances without exit for position "
          + std::to_string(e.owner));
      open[e.owner] = k;
    }
    else
    {
      if (it == open.end())
        throw PreconditionViolated("path starts inside the disc of position "
          + std::to_string(e.owner));
      out.push_back({it->second, k});
      open.erase(it);
    }
  }
  if (!open.empty())
    throw PreconditionViolated("path ends inside the disc of position "
      + std::to_string(open.begin()->first));
  std::sort(out.begin(), out.end());
  return out;
}

//==============================================================================
/// Replaces every visit of the path to an occupied core disc C by the
/// shorter boundary arc from the first entrance to the last exit of that
/// disc (counter-clockwise when both arcs are equal). Returns the modified
/// path and stores the number of detours in `detours` if given.
inline Polycurve modify_path(const Polycurve& path,
  const std::vector<OwnedCircle>& cores, std::size_t* detours = nullptr)
{
  if (detours)
    *detours = 0;
  if (path.empty())
    return path;
  for (const auto& c : cores)
    for (const Point& p : {path.start(), path.end()})
      if (dist(p, c.center) < c.radius - kEpsGeom)
        throw PreconditionViolated("path endpoint inside the core disc of position "
          + std::to_string(c.owner));

  const auto events = compute_crossings(path, cores);
  crossing_intervals(events);

  std::map<std::size_t, Point> center_of;
  for (const auto& c : cores)
    center_of[c.owner] = c.center;

  Polycurve out;
  double cursor = 0.0;
  std::size_t i = 0;
  while (i < events.size())
  {
    const auto& p = events[i];
    if (!p.entrance)
    {
      ++i;
      continue;
    }
    std::size_t j = events.size() - 1;
    while (events[j].owner != p.owner || events[j].entrance)
      --j;
    const auto& q = events[j];
    const Point c = center_of.at(p.owner);
    const double radius = dist(p.point, c);

    out.append(path.slice(cursor, p.param));
    const CircArc ccw = CircArc::through(c, radius, p.point, q.point, Orientation::CCW);
    const CircArc cw = CircArc::through(c, radius, p.point, q.point, Orientation::CW);
    const bool tie = std::abs(ccw.sweep - cw.sweep) <= 1e-12;
    out.append(Piece{(tie || ccw.sweep < cw.sweep) ? ccw : cw});
    if (detours)
      ++*detours;
    cursor = q.param;
    i = j + 1;
  }
  out.append(path.slice(cursor, path.param_end()));
  return out;
}

//==============================================================================
enum class SlotKind
{
  Move,
  Event,
  Idle,
};

/// One slot of the mover's time window: it traverses a piece, pauses at a
/// crossing event, or (for an empty path) stays put.
struct Slot
{
  SlotKind kind = SlotKind::Idle;
  double t0 = 0.0;
  double t1 = 0.0;
  Piece piece;
  CrossingEvent event;
  Point point;
};

struct MoverSchedule
{
  std::vector<Slot> slots;
  double delta = 0.0;
};

/// Splits the path at the crossing events and gives every piece and every
/// event a slot of equal duration inside [t0, t1].
inline MoverSchedule reparametrize(const Polycurve& path,
  const std::vector<CrossingEvent>& events, double t0, double t1)
{
  MoverSchedule out;
  if (path.empty())
  {
    if (!events.empty())
      throw PreconditionViolated("events on an empty path");
    Slot s;
    s.kind = SlotKind::Idle;
    s.t0 = t0;
    s.t1 = t1;
    out.slots.push_back(s);
    out.delta = t1 - t0;
    return out;
  }

  // Consecutive groups of simultaneous events share one cut.
  std::vector<Slot> slots;
  double cursor = 0.0;
  auto add_moves = [&](double to)
    {
      if (to - cursor <= kSimultaneousParam)
        return;
      for (const auto& piece : path.slice(cursor, to).pieces)
      {
        Slot s;
        s.kind = SlotKind::Move;
        s.piece = piece;
        slots.push_back(s);
      }
      cursor = to;
    };
  for (const auto& e : events)
  {
    add_moves(e.param);
    Slot s;
    s.kind = SlotKind::Event;
    s.event = e;
    s.point = e.point;
    slots.push_back(s);
  }
  add_moves(path.param_end());

  // Pin the mover exactly to the event points so slots join continuously.
  for (std::size_t k = 0; k < slots.size(); ++k)
  {
    if (slots[k].kind != SlotKind::Event)
      continue;
    if (k > 0 && slots[k - 1].kind == SlotKind::Move)
      slots[k].point = piece_end(slots[k - 1].piece);
    else if (k + 1 < slots.size() && slots[k + 1].kind == SlotKind::Move)
      slots[k].point = piece_start(slots[k + 1].piece);
    else if (k > 0)
      slots[k].point = slots[k - 1].point;
  }

  const double delta = (t1 - t0) / static_cast<double>(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k)
  {
    slots[k].t0 = t0 + delta * static_cast<double>(k);
    slots[k].t1 = k + 1 == slots.size() ? t1 : t0 + delta * static_cast<double>(k + 1);
  }
  out.slots = std::move(slots);
  out.delta = delta;
  return out;
}

//==============================================================================
/// Bound on simultaneously active retractions.
inline constexpr std::size_t kMaxActiveRetractions = 18;

/// One maximal stay of the mover inside a trigger disc B_z.
struct RetractionInterval
{
  std::size_t owner = 0;
  double t_enter = 0.0;
  double t_exit = 0.0;
  double lead_in = 0.0;
  double lead_out = 0.0;
  /// Length traced by the host while retracting.
  double retraction_length = 0.0;
  /// Length of the mover's path inside B_z.
  double host_subpath_length = 0.0;
};

struct RetractionSchedule
{
  /// Host actions keyed by owning position, in time order.
  std::map<std::size_t, std::vector<TimedMotion>> actions;
  std::vector<RetractionInterval> intervals;
  std::size_t max_active = 0;
};

/// Sweeps the mover's slots, keeping the set of hosts whose trigger disc
/// contains the mover. Entering hosts move from z to the retraction point
/// while the mover pauses, active hosts track the mover through every
/// piece, and leaving hosts return to z.
inline RetractionSchedule build_retractions(const MoverSchedule& schedule,
  const std::map<std::size_t, RevolvingArea>& hosts)
{
  RetractionSchedule out;
  std::set<std::size_t> active;
  std::map<std::size_t, RetractionInterval> open;

  for (const auto& slot : schedule.slots)
  {
    if (slot.kind == SlotKind::Move)
    {
      for (auto owner : active)
      {
        const auto& area = hosts.at(owner);
        Retract r{area.center, slot.piece};
        auto& iv = open.at(owner);
        iv.retraction_length += motion_length(r);
        iv.host_subpath_length += piece_length(slot.piece);
        out.actions[owner].push_back({slot.t0, slot.t1, r});
      }
      continue;
    }
    if (slot.kind != SlotKind::Event)
      continue;

    const auto& e = slot.event;
    const auto& area = hosts.at(e.owner);
    const Point rho = retraction_point(area.center, slot.point);
    if (e.entrance)
    {
      if (!active.insert(e.owner).second)
        throw PreconditionViolated("repeated entrance for position " + std::to_string(e.owner));
      RetractionInterval iv;
      iv.owner = e.owner;
      iv.t_enter = slot.t0;
      iv.lead_in = dist(area.z, rho);
      open[e.owner] = iv;
      out.actions[e.owner].push_back({slot.t0, slot.t1, Move{Segment{area.z, rho}}});
      out.max_active = std::max(out.max_active, active.size());
      if (active.size() > kMaxActiveRetractions)
        throw std::logic_error("more than 18 simultaneous retractions");
    }
    else
    {
      if (active.erase(e.owner) == 0)
        throw PreconditionViolated("exit without entrance for position " + std::to_string(e.owner));
      auto iv = open.at(e.owner);
      open.erase(e.owner);
      iv.t_exit = slot.t1;
      iv.lead_out = dist(rho, area.z);
      out.intervals.push_back(iv);
      out.actions[e.owner].push_back({slot.t0, slot.t1, Move{Segment{rho, area.z}}});
    }
  }
  if (!active.empty())
    throw PreconditionViolated("mover ends inside a trigger disc");
  return out;
}

//==============================================================================
/// Per-robot bookkeeping of the coordination step.
struct MoverReport
{
  std::size_t robot = 0;
  std::size_t rank = 0;
  double initial_length = 0.0;
  double modified_length = 0.0;
  std::size_t detours = 0;
  std::size_t b_events = 0;
  double delta = 0.0;
  std::size_t max_active = 0;
  std::vector<RetractionInterval> intervals;
};

struct Assembly
{
  std::vector<Trajectory> trajectories;
  std::vector<MoverReport> movers;
};

namespace detail {

/// Builds a gap-free timeline on [0, horizon] from time-ordered actions,
/// dwelling wherever no action is scheduled.
inline Trajectory fill_timeline(Point home, std::vector<TimedMotion> actions, double horizon)
{
  std::sort(actions.begin(), actions.end(),
    [](const TimedMotion& a, const TimedMotion& b) { return a.t0 < b.t0; });
  Trajectory out;
  double t = 0.0;
  Point cur = home;
  for (auto& a : actions)
  {
    if (a.t0 > t)
      out.timeline.push_back({t, a.t0, Dwell{cur}});
    a.t0 = std::max(a.t0, t);
    out.timeline.push_back(a);
    cur = motion_at(a.motion, 1.0);
    t = a.t1;
  }
  if (t < horizon || out.timeline.empty())
    out.timeline.push_back({t, horizon, Dwell{cur}});
  return out;
}

} // namespace detail

/// Sequences the robots in `order`: the robot at rank k follows its
/// modified path during [k, k+1] while every other robot sits at its start
/// (not yet moved) or target (already moved) and retracts when needed.
/// `paths` holds the unmodified shortest paths, indexed by robot.
inline Assembly assemble(const Scenario& scenario,
  const std::vector<RevolvingArea>& areas, const std::vector<std::size_t>& order,
  const std::vector<Polycurve>& paths)
{
  const std::size_t m = scenario.robot_count();
  if (order.size() != m || paths.size() != m || areas.size() != 2 * m)
    throw std::invalid_argument("assemble: size mismatch");

  std::vector<std::size_t> rank(m, m);
  for (std::size_t k = 0; k < m; ++k)
  {
    if (order[k] >= m || rank[order[k]] != m)
      throw std::invalid_argument("assemble: order is not a permutation");
    rank[order[k]] = k;
  }

  Assembly out;
  std::vector<std::vector<TimedMotion>> actions(m);
  for (std::size_t k = 0; k < m; ++k)
  {
    const std::size_t i = order[k];
    std::vector<RevolvingArea> occupied;
    std::map<std::size_t, RevolvingArea> hosts;
    for (std::size_t j = 0; j < m; ++j)
    {
      if (j == i)
        continue;
      const auto& a = rank[j] > k ? areas[scenario.start_index(j)] : areas[scenario.target_index(j)];
      occupied.push_back(a);
      hosts[a.position] = a;
    }

    MoverReport rep;
    rep.robot = i;
    rep.rank = k;
    rep.initial_length = paths[i].length();
    const Polycurve modified = modify_path(paths[i], owned_circles(occupied, kCoreRadius), &rep.detours);
    rep.modified_length = modified.length();
    const auto events = compute_crossings(modified, owned_circles(occupied, kTriggerRadius));
    rep.b_events = events.size();
    const auto schedule = reparametrize(modified, events,
      static_cast<double>(k), static_cast<double>(k + 1));
    rep.delta = schedule.delta;
    const auto retractions = build_retractions(schedule, hosts);
    rep.max_active = retractions.max_active;
    rep.intervals = retractions.intervals;

    for (const auto& slot : schedule.slots)
    {
      if (slot.kind == SlotKind::Move)
        actions[i].push_back({slot.t0, slot.t1, Move{slot.piece}});
      else if (slot.kind == SlotKind::Event)
        actions[i].push_back({slot.t0, slot.t1, Dwell{slot.point}});
      else
        actions[i].push_back({slot.t0, slot.t1, Dwell{scenario.starts[i]}});
    }
    for (const auto& [owner, acts] : retractions.actions)
    {
      const std::size_t robot = owner < m ? owner : owner - m;
      actions[robot].insert(actions[robot].end(), acts.begin(), acts.end());
    }
    out.movers.push_back(std::move(rep));
  }

  for (std::size_t i = 0; i < m; ++i)
    out.trajectories.push_back(
      detail::fill_timeline(scenario.starts[i], std::move(actions[i]), static_cast<double>(m)));
  return out;
}

} // namespace discplan

#endif // DISCPLAN__COORDINATE_HPP
