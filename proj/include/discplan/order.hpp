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

#ifndef DISCPLAN__ORDER_HPP
#define DISCPLAN__ORDER_HPP

#include "coordinate.hpp"

#include <numeric>
#include <random>

namespace discplan {

class RefinementViolated : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

class TooLarge : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

using ExecutionOrder = std::vector<std::size_t>;

/// Directed multigraph on robots. An edge (i, j) says robot i should move
/// before robot j; each edge is one crossing interval.
struct InterferenceGraph
{
  std::size_t m = 0;
  /// Sorted list of edges, repeated per multiplicity.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t multiplicity(std::size_t i, std::size_t j) const
  {
    const auto [lo, hi] = std::equal_range(edges.begin(), edges.end(), std::pair{i, j});
    return static_cast<std::size_t>(hi - lo);
  }

  std::vector<std::vector<std::size_t>> adjacency() const
  {
    std::vector<std::vector<std::size_t>> adj(m);
    for (const auto& [i, j] : edges)
      if (adj[i].empty() || adj[i].back() != j)
        adj[i].push_back(j);
    return adj;
  }

  /// Graphviz rendering for inspection.
  std::string dot(const std::string& name) const
  {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (std::size_t v = 0; v < m; ++v)
      out << "  " << v << ";\n";
    for (std::size_t k = 0; k < edges.size();)
    {
      std::size_t j = k;
      while (j < edges.size() && edges[j] == edges[k])
        ++j;
      out << "  " << edges[k].first << " -> " << edges[k].second;
      if (j - k > 1)
        out << " [label=" << (j - k) << "]";
      out << ";\n";
      k = j;
    }
    out << "}\n";
    return out.str();
  }
};

/// Number of edges pointing backwards under the order, with multiplicity.
inline std::size_t count_interferences(const ExecutionOrder& order, const InterferenceGraph& g)
{
  std::vector<std::size_t> rank(g.m);
  for (std::size_t k = 0; k < order.size(); ++k)
    rank[order[k]] = k;
  std::size_t count = 0;
  for (const auto& [i, j] : g.edges)
    if (rank[i] > rank[j])
      ++count;
  return count;
}

/// Builds the graph for circles of the given radius about the
/// revolving-area centers: one edge (i, j) per entrance of path i into the
/// disc of t_j and per entrance of path j into the disc of s_i.
inline InterferenceGraph interference_graph(const Scenario& scenario,
  const std::vector<RevolvingArea>& areas, const std::vector<Polycurve>& paths,
  double radius, std::size_t workers = 1)
{
  const std::size_t m = scenario.robot_count();
  InterferenceGraph g;
  g.m = m;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_robot(m);
  parallel_for(m, workers, [&](std::size_t i)
    {
      std::vector<OwnedCircle> circles;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i)
        {
          circles.push_back({scenario.start_index(j), areas[scenario.start_index(j)].center, radius});
          circles.push_back({scenario.target_index(j), areas[scenario.target_index(j)].center, radius});
        }
      for (const auto& e : compute_crossings(paths[i], circles))
      {
        if (!e.entrance)
          continue;
        if (e.owner < m)
          per_robot[i].push_back({e.owner, i});
        else
          per_robot[i].push_back({i, e.owner - m});
      }
    });
  for (const auto& v : per_robot)
    g.edges.insert(g.edges.end(), v.begin(), v.end());
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

struct InterferenceGraphs
{
  InterferenceGraph b;
  InterferenceGraph c;
};

inline InterferenceGraphs build_interference_graphs(const Scenario& scenario,
  const std::vector<RevolvingArea>& areas, const std::vector<Polycurve>& paths,
  std::size_t workers = 1)
{
  return {interference_graph(scenario, areas, paths, kTriggerRadius, workers),
    interference_graph(scenario, areas, paths, kCoreRadius, workers)};
}

/// Strongly connected components (Tarjan). Returns the component id of
/// every vertex; ids are dense but otherwise arbitrary.
inline std::vector<std::size_t> strongly_connected_components(const InterferenceGraph& g)
{
  const auto adj = g.adjacency();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(g.m, none), low(g.m, 0), comp(g.m, none);
  std::vector<char> on_stack(g.m, 0);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, next_comp = 0;

  // Iterative DFS: frames hold (vertex, next child position).
  for (std::size_t root = 0; root < g.m; ++root)
  {
    if (index[root] != none)
      continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty())
    {
      auto& [v, child] = frames.back();
      if (child < adj[v].size())
      {
        const std::size_t w = adj[v][child++];
        if (index[w] == none)
        {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        }
        else if (on_stack[w])
          low[v] = std::min(low[v], index[w]);
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty())
        low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done])
      {
        std::size_t w;
        do
        {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != done);
        ++next_comp;
      }
    }
  }
  return comp;
}

namespace detail {

/// Position of each vertex's component in a topological order of the
/// condensation. Incomparable components go by the smallest key among their
/// members; the key defaults to the vertex index.
inline std::vector<std::size_t> component_rank(
  const InterferenceGraph& g, const std::vector<std::size_t>& comp,
  const std::vector<std::size_t>* key = nullptr)
{
  const std::size_t k = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> min_member(k, std::numeric_limits<std::size_t>::max());
  for (std::size_t v = 0; v < g.m; ++v)
    min_member[comp[v]] = std::min(min_member[comp[v]], key ? (*key)[v] : v);
  std::vector<std::set<std::size_t>> succ(k);
  std::vector<std::size_t> indeg(k, 0);
  for (const auto& [i, j] : g.edges)
    if (comp[i] != comp[j] && succ[comp[i]].insert(comp[j]).second)
      ++indeg[comp[j]];

  using Item = std::pair<std::size_t, std::size_t>;
  std::set<Item> ready;
  for (std::size_t c = 0; c < k; ++c)
    if (indeg[c] == 0)
      ready.insert({min_member[c], c});
  std::vector<std::size_t> pos(k, 0);
  std::size_t next = 0;
  while (!ready.empty())
  {
    const auto c = ready.begin()->second;
    ready.erase(ready.begin());
    pos[c] = next++;
    for (auto d : succ[c])
      if (--indeg[d] == 0)
        ready.insert({min_member[d], d});
  }
  std::vector<std::size_t> rank(g.m);
  for (std::size_t v = 0; v < g.m; ++v)
    rank[v] = pos[comp[v]];
  return rank;
}

} // namespace detail

/// Orders by the topological position of the B-graph component, then of
/// the C-graph component, then by a seeded random permutation.
inline ExecutionOrder heuristic_order(
  const InterferenceGraph& gb, const InterferenceGraph& gc, std::uint64_t seed)
{
  if (gb.m != gc.m)
    throw std::invalid_argument("heuristic_order: graph sizes differ");
  const std::size_t m = gb.m;
  const auto comp_b = strongly_connected_components(gb);
  const auto comp_c = strongly_connected_components(gc);
  std::map<std::size_t, std::size_t> owner;
  for (std::size_t v = 0; v < m; ++v)
  {
    const auto [it, fresh] = owner.try_emplace(comp_c[v], comp_b[v]);
    if (!fresh && it->second != comp_b[v])
      throw RefinementViolated("a C-graph component spans several B-graph components");
  }
  std::vector<std::size_t> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::vector<std::size_t> tie(m);
  for (std::size_t k = 0; k < m; ++k)
    tie[sigma[k]] = k;

  // Incomparable C components follow sigma, so an edgeless C graph leaves
  // each B component in sigma order.
  const auto rank_b = detail::component_rank(gb, comp_b);
  const auto rank_c = detail::component_rank(gc, comp_c, &tie);

  ExecutionOrder order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
    {
      return std::tie(rank_b[a], rank_c[a], tie[a]) < std::tie(rank_b[b], rank_c[b], tie[b]);
    });
  return order;
}

inline constexpr std::size_t kBruteForceLimit = 9;

/// Exhaustive minimum over all permutations; the lexicographically first
/// optimum wins.
inline std::pair<ExecutionOrder, std::size_t> optimal_order_bruteforce(
  const InterferenceGraph& g, std::size_t workers = 1)
{
  if (g.m > kBruteForceLimit)
    throw TooLarge("brute-force ordering supports at most 9 robots, got "
      + std::to_string(g.m));
  if (g.m == 0)
    return {{}, 0};

  // Dense multiplicity matrix keeps the inner loop cheap.
  std::vector<std::size_t> w(g.m * g.m, 0);
  for (const auto& [i, j] : g.edges)
    ++w[i * g.m + j];
  auto cost = [&](const ExecutionOrder& o)
    {
      std::size_t c = 0;
      for (std::size_t a = 0; a < o.size(); ++a)
        for (std::size_t b = a + 1; b < o.size(); ++b)
          c += w[o[b] * g.m + o[a]];
      return c;
    };

  // One task per first element; each enumerates its suffixes in
  // lexicographic order, so the first task with the best cost wins ties.
  std::vector<std::pair<ExecutionOrder, std::size_t>> best(g.m);
  parallel_for(g.m, workers, [&](std::size_t first)
    {
      ExecutionOrder o{first};
      for (std::size_t v = 0; v < g.m; ++v)
        if (v != first)
          o.push_back(v);
      best[first] = {o, cost(o)};
      while (std::next_permutation(o.begin() + 1, o.end()))
      {
        const auto c = cost(o);
        if (c < best[first].second)
          best[first] = {o, c};
      }
    });
  auto result = best[0];
  for (std::size_t k = 1; k < g.m; ++k)
    if (best[k].second < result.second)
      result = best[k];
  return result;
}

} // namespace discplan

#endif // DISCPLAN__ORDER_HPP
