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

#include <discplan/bench.hpp>
#include <discplan/json_io.hpp>
#include <discplan/svg.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace discplan;

enum Exit : int
{
  kOk = 0,
  kError = 1,
  kAssumption = 2,
  kNoPath = 3,
  kInvalid = 4,
};

void write_text(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

struct GenerateArgs
{
  std::string kind;
  std::string out;
  std::size_t m = 4;
  std::uint64_t seed = 0;
  std::string version = "I";
  std::size_t n = 8;
  std::size_t triangles = 10;
  double side = 100.0;
  double spacing = 3.0;
};

int cmd_generate(const GenerateArgs& a)
{
  Scenario s;
  if (a.kind == "grid")
    s = generate_grid({.m = a.m, .seed = a.seed, .spacing = a.spacing});
  else if (a.kind == "triangles")
    s = generate_triangles({.m = a.m, .triangles = a.triangles, .seed = a.seed, .side = a.side});
  else if (a.kind == "tunnel")
  {
    if (a.version != "I" && a.version != "II")
      throw std::invalid_argument("tunnel version must be I or II");
    s = generate_tunnel({.m = a.m, .version = a.version == "I" ? TunnelVersion::I : TunnelVersion::II});
  }
  else if (a.kind == "bad-input")
    s = generate_bad_input(a.n);
  else
    throw std::invalid_argument("unknown scenario kind '" + a.kind + "'");
  save_scenario(s, a.out);
  std::cout << "wrote " << a.out << ": " << s.robot_count() << " robots, "
            << s.obstacles.size() << " obstacles, " << s.vertex_count() << " vertices\n";
  return kOk;
}

struct PlanArgs
{
  std::string scenario;
  std::string out;
  std::string order = "heuristic";
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double eps = kValidationEps;
  std::string summary;
  std::string dot;
};

int cmd_plan(const PlanArgs& a)
{
  const auto s = load_scenario(a.scenario);
  PlanConfig cfg;
  cfg.order = parse_order_mode(a.order);
  cfg.seed = a.seed;
  cfg.workers = std::max<std::size_t>(1, a.workers);
  cfg.eps_val = a.eps;
  const auto r = plan(s, cfg);
  save_trajectories(r.assembly.trajectories, a.out);
  const auto v = validate_trajectories(s, r.assembly.trajectories, cfg.eps_val,
    r.initial_length(), cfg.workers);

  nlohmann::json j;
  j["scenario"] = s.name;
  j["order_mode"] = to_string(cfg.order);
  j["order"] = r.order;
  j["interferences_b"] = {{"given", r.given_count_b}, {"chosen", r.chosen_count_b}};
  j["interferences_c"] = r.chosen_count_c;
  j["wall_seconds"] = r.seconds;
  auto& robots = j["robots"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s.robot_count(); ++i)
    robots.push_back({{"robot", i}, {"initial_length", r.paths[i].length()},
      {"final_length", r.assembly.trajectories[i].length()}});
  j["accounting"] = to_json(r.accounting());
  j["validation"] = to_json(v);
  if (!a.summary.empty())
    write_text(a.summary, j.dump(2) + "\n");
  if (!a.dot.empty())
    write_text(a.dot, r.graphs.b.dot("GB") + r.graphs.c.dot("GC"));

  std::cout << "planned " << s.robot_count() << " robots in " << r.seconds << " s, order "
            << to_string(cfg.order) << ", B-interferences " << r.chosen_count_b << " (given order "
            << r.given_count_b << ")\n";
  std::cout << "dist ratio " << format_real(v.dist_ratio) << ", violations " << v.violation_count << "\n";
  return v.ok() ? kOk : kInvalid;
}

struct ValidateArgs
{
  std::string scenario;
  std::string trajectories;
  double eps = kValidationEps;
  std::size_t workers = 1;
  std::string json;
};

int cmd_validate(const ValidateArgs& a)
{
  const auto s = load_scenario(a.scenario);
  const auto robots = load_trajectories(a.trajectories);
  double baseline = 0.0;
  for (const auto& p : shortest_paths(s, std::max<std::size_t>(1, a.workers)))
    baseline += p.length();
  const auto v = validate_trajectories(s, robots, a.eps, baseline, std::max<std::size_t>(1, a.workers));
  const auto j = to_json(v);
  if (!a.json.empty())
    write_text(a.json, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return v.ok() ? kOk : kInvalid;
}

struct RenderArgs
{
  std::string scenario;
  std::string trajectories;
  std::string out;
  std::string mode = "static";
  std::size_t frames = 20;
  double scale = 8.0;
};

int cmd_render(const RenderArgs& a)
{
  const auto s = load_scenario(a.scenario);
  std::vector<Trajectory> robots;
  if (!a.trajectories.empty())
    robots = load_trajectories(a.trajectories);
  SvgStyle style;
  style.scale = a.scale;

  if (a.mode == "frames")
  {
    if (robots.empty())
      throw std::invalid_argument("frames mode needs a trajectory file");
    const auto frames = render_frames(s, robots, a.frames, style);
    const std::filesystem::path base(a.out);
    for (std::size_t k = 0; k < frames.size(); ++k)
    {
      char suffix[32];
      std::snprintf(suffix, sizeof suffix, "_%04zu.svg", k);
      const auto path = base.parent_path() / (base.stem().string() + suffix);
      write_text(path.string(), frames[k]);
    }
    std::cout << "wrote " << frames.size() << " frames\n";
    return kOk;
  }
  if (a.mode != "static")
    throw std::invalid_argument("render mode must be static or frames");

  std::vector<RevolvingArea> areas;
  try
  {
    areas = find_all_revolving_areas(s);
  }
  catch (const AssumptionViolated& e)
  {
    std::cerr << "warning: " << e.what() << "; revolving areas not drawn\n";
  }
  std::vector<Polycurve> initial;
  try
  {
    initial = shortest_paths(s);
  }
  catch (const NoPath& e)
  {
    std::cerr << "warning: " << e.what() << "; initial paths not drawn\n";
  }
  write_text(a.out, render_static(s, areas, initial, robots, style));
  std::cout << "wrote " << a.out << "\n";
  return kOk;
}

struct BenchArgs
{
  std::vector<std::string> suites;
  std::vector<std::size_t> sizes;
  std::string out;
  std::size_t workers = 1;
};

int cmd_bench(const BenchArgs& a)
{
  auto suites = a.suites.empty() ? bench_suites() : a.suites;
  std::vector<BenchRow> rows;
  for (const auto& suite : suites)
  {
    const auto part = run_bench(bench_cases(suite, a.sizes), std::max<std::size_t>(1, a.workers));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::cout << format_bench_table(rows);
  if (!a.out.empty())
    write_text(a.out, to_json(rows).dump(2) + "\n");
  return kOk;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Decoupled motion planning for unit-disc robots among polygons"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a generated scenario");
  g->add_option("kind", gen.kind, "grid | triangles | tunnel | bad-input")->required();
  g->add_option("-o,--out", gen.out, "Scenario file")->required();
  g->add_option("--m", gen.m, "Robot count");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--version", gen.version, "Tunnel version (I or II)");
  g->add_option("--n", gen.n, "Obstacle count for bad-input");
  g->add_option("--triangles", gen.triangles, "Triangle count");
  g->add_option("--side", gen.side, "Square side for triangles");
  g->add_option("--spacing", gen.spacing, "Grid spacing");

  PlanArgs pl;
  auto* p = app.add_subcommand("plan", "Plan trajectories for a scenario");
  p->add_option("scenario", pl.scenario, "Scenario file")->required();
  p->add_option("-o,--out", pl.out, "Trajectory file")->required();
  p->add_option("--order", pl.order, "given | heuristic | bruteforce");
  p->add_option("--seed", pl.seed, "Seed for the heuristic tie-break");
  p->add_option("--workers", pl.workers, "Worker threads");
  p->add_option("--eps", pl.eps, "Validation tolerance");
  p->add_option("--summary", pl.summary, "Write a JSON summary");
  p->add_option("--dot", pl.dot, "Write both interference graphs in DOT format");

  ValidateArgs va;
  auto* v = app.add_subcommand("validate", "Check trajectories against a scenario");
  v->add_option("scenario", va.scenario, "Scenario file")->required();
  v->add_option("trajectories", va.trajectories, "Trajectory file")->required();
  v->add_option("--eps", va.eps, "Validation tolerance");
  v->add_option("--workers", va.workers, "Worker threads");
  v->add_option("--json", va.json, "Write the report to a file");

  RenderArgs re;
  auto* r = app.add_subcommand("render", "Draw a scenario and its trajectories as SVG");
  r->add_option("scenario", re.scenario, "Scenario file")->required();
  r->add_option("trajectories", re.trajectories, "Trajectory file");
  r->add_option("-o,--out", re.out, "SVG file (frame files get a numeric suffix)")->required();
  r->add_option("--mode", re.mode, "static | frames");
  r->add_option("--frames", re.frames, "Number of frames");
  r->add_option("--scale", re.scale, "Pixels per unit");

  BenchArgs be;
  auto* b = app.add_subcommand("bench", "Run benchmark suites");
  b->add_option("--suite", be.suites, "grid | triangles | tunnel1 | tunnel2 (default: all)");
  b->add_option("--sizes", be.sizes, "Robot counts (default: per suite)");
  b->add_option("-o,--out", be.out, "JSON table");
  b->add_option("--workers", be.workers, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (g->parsed())
      return cmd_generate(gen);
    if (p->parsed())
      return cmd_plan(pl);
    if (v->parsed())
      return cmd_validate(va);
    if (r->parsed())
      return cmd_render(re);
    if (b->parsed())
      return cmd_bench(be);
  }
  catch (const AssumptionViolated& e)
  {
    std::cerr << "error: assumption violated: " << e.what() << "\n";
    return kAssumption;
  }
  catch (const NoPath& e)
  {
    std::cerr << "error: no path: " << e.what() << "\n";
    return kNoPath;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
