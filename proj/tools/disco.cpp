#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "disco/gen.hpp"
#include "disco/grid_refine.hpp"
#include "disco/metrics.hpp"
#include "disco/orchestrator.hpp"
#include "disco/render.hpp"

namespace fs = std::filesystem;
using namespace disco;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct SharedFlags {
  std::string config_path;
  std::string backend;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string prompt_dir;
  bool quiet = false;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--config", f.config_path, "pipeline config JSON file");
  cmd->add_option("--backend", f.backend, "agent backend")
      ->check(CLI::IsMember({"mock", "remote"}));
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--prompts", f.prompt_dir, "prompt template directory");
  cmd->add_flag("--quiet", f.quiet, "print only the score JSON on stdout");
}

/// Config file first, then explicit flags on top.
PipelineConfig resolve_config(const SharedFlags& f, const CLI::App* cmd) {
  PipelineConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + f.config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ValidationError("--config", e.what());
    }
    config = PipelineConfig::from_json(j);
  }
  if (cmd->count("--backend")) config.backend = f.backend;
  if (cmd->count("--seed")) config.seed = f.seed;
  if (cmd->count("--prompts")) config.prompt_dir = f.prompt_dir;
  return config;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Scene load_scene_or_usage(const std::string& path) {
  if (!fs::exists(path))
    throw CLI::ValidationError("scene", "no such file: " + path);
  return load_scene(path);
}

int run_synth(const std::vector<std::string>& scene_paths,
              const SharedFlags& flags, const CLI::App* cmd, int jobs) {
  PipelineConfig config = resolve_config(flags, cmd);
  fs::create_directories(flags.out_dir);

  // Surface config problems (bad endpoint, missing API key env) as usage
  // errors before any pipeline work starts.
  std::vector<Scene> scenes;
  for (const auto& p : scene_paths) scenes.push_back(load_scene_or_usage(p));
  try {
    make_backend(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> exit_code{kExitOk};
  std::mutex io_mu;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= scenes.size()) return;
      const std::string& path = scene_paths[i];
      std::string stem = stem_of(path);
      fs::path out = flags.out_dir;
      try {
        auto backend = make_backend(config);
        SynthesisResult r = synthesize(scenes[i], config, *backend);

        Scene final_scene = scenes[i];
        apply_layout(final_scene, r.layout);
        save_scene(final_scene, (out / (stem + "-layout.json")).string());
        write_text(out / (stem + "-trace.ndjson"), r.trace.to_ndjson());
        write_text(out / (stem + "-score.json"), r.score.to_json().dump(2) + "\n");
        for (std::size_t k = 0; k < r.group_renders.size(); ++k)
          write_png(r.group_renders[k],
                    (out / (stem + "-group" + std::to_string(k + 1) + ".png")).string());
        write_png(r.final_render, (out / (stem + "-final.png")).string());

        {
          std::lock_guard lock(io_mu);
          if (flags.quiet) {
            std::cout << r.score.to_json().dump() << "\n";
          } else {
            std::cout << path << ": collision_rate=" << r.score.collision_rate
                      << " oob_rate=" << r.score.oob_rate
                      << " objects=" << r.layout.size()
                      << " deleted=" << r.score.deleted_count << "\n";
          }
        }
        if (r.score.collision_rate != 0 || r.score.oob_rate != 0) {
          int expected = kExitOk;
          exit_code.compare_exchange_strong(expected, kExitRuntime);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(io_mu);
        std::cerr << path << ": error: " << e.what() << "\n";
        int expected = kExitOk;
        exit_code.compare_exchange_strong(expected, kExitRuntime);
      }
    }
  };

  int n = std::max(1, std::min<int>(jobs, static_cast<int>(scenes.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return exit_code.load();
}

int run_refine(const std::string& scene_path, const SharedFlags& flags,
               const CLI::App* cmd, double spacing) {
  Scene scene = load_scene_or_usage(scene_path);
  if (!scene.has_layout)
    throw CLI::ValidationError("scene", "file has no layout block: " + scene_path);
  (void)resolve_config(flags, cmd);
  fs::create_directories(flags.out_dir);

  Layout layout = scene.make_layout();
  GridSet grid = build_grid(scene.room, spacing);
  auto [repaired, report] = refine(layout, {}, grid);

  Scene out_scene = scene;
  apply_layout(out_scene, repaired);
  std::string stem = stem_of(scene_path);
  fs::path out = flags.out_dir;
  save_scene(out_scene, (out / (stem + "-refined.json")).string());

  json report_json = {{"deleted", report.deleted},
                      {"grid_points_scanned", report.grid_points_scanned},
                      {"moved", json::array()}};
  for (const auto& m : report.moved)
    report_json["moved"].push_back({{"object_name", m.object_name},
                                    {"old", pose_to_json(m.old_pose)},
                                    {"new", pose_to_json(m.new_pose)},
                                    {"reason", m.reason}});
  write_text(out / (stem + "-refine-report.json"), report_json.dump(2) + "\n");

  json score = {{"collision_rate", collision_rate(repaired)},
                {"oob_rate", oob_rate(repaired)},
                {"moved", report.moved.size()},
                {"deleted", report.deleted.size()}};
  std::cout << score.dump() << "\n";
  return kExitOk;
}

int run_eval(const std::string& scene_path, const SharedFlags& flags) {
  Scene scene = load_scene_or_usage(scene_path);
  if (!scene.has_layout)
    throw CLI::ValidationError("scene", "file has no layout block: " + scene_path);
  Layout layout = scene.make_layout();
  SceneScore score = score_scene(layout, {}, RelationParams{});
  std::string text = score.to_json().dump(2) + "\n";
  if (flags.out_dir != ".") {
    fs::create_directories(flags.out_dir);
    write_text(fs::path(flags.out_dir) / (stem_of(scene_path) + "-score.json"),
               text);
  }
  std::cout << (flags.quiet ? score.to_json().dump() + "\n" : text);
  return kExitOk;
}

int run_render(const std::string& scene_path, const SharedFlags& flags,
               int long_side, bool grid, double grid_spacing) {
  Scene scene = load_scene_or_usage(scene_path);
  if (!scene.has_layout)
    throw CLI::ValidationError("scene", "file has no layout block: " + scene_path);
  RenderOptions opts;
  opts.long_side = long_side;
  opts.show_grid = grid;
  opts.grid_spacing = grid_spacing;
  fs::create_directories(flags.out_dir);
  fs::path out = fs::path(flags.out_dir) / (stem_of(scene_path) + ".png");
  write_png(render_topdown(scene.make_layout(), opts), out.string());
  if (!flags.quiet) std::cout << out.string() << "\n";
  return kExitOk;
}

int run_gen(const SharedFlags& flags, int count, double min_side,
            double max_side, int min_assets, int max_assets) {
  GenOptions opt;
  opt.count = count;
  opt.min_side = min_side;
  opt.max_side = max_side;
  opt.min_assets = min_assets;
  opt.max_assets = max_assets;
  opt.seed = flags.seed;
  std::vector<Scene> scenes = generate_scenes(opt);
  fs::create_directories(flags.out_dir);
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene-%04zu.json", i);
    save_scene(scenes[i], (fs::path(flags.out_dir) / name).string());
  }
  if (!flags.quiet)
    std::cout << "wrote " << scenes.size() << " scenes to " << flags.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D furniture layout synthesis, repair, scoring and rendering"};
  app.require_subcommand(1);

  SharedFlags synth_flags, refine_flags, eval_flags, render_flags, gen_flags;

  auto* synth = app.add_subcommand("synth", "run the full layout pipeline");
  std::vector<std::string> synth_scenes;
  int jobs = 1;
  synth->add_option("scene", synth_scenes, "scene JSON file(s)")->required();
  synth->add_option("--jobs", jobs, "scenes to run concurrently")
      ->check(CLI::PositiveNumber);
  add_shared(synth, synth_flags);

  auto* refine_cmd = app.add_subcommand("refine", "grid repair of an existing layout");
  std::string refine_scene;
  double refine_spacing = 10;
  refine_cmd->add_option("scene", refine_scene, "scene JSON file with layout")
      ->required();
  refine_cmd->add_option("--spacing", refine_spacing, "grid spacing in cm")
      ->check(CLI::PositiveNumber);
  add_shared(refine_cmd, refine_flags);

  auto* eval_cmd = app.add_subcommand("eval", "score an existing layout");
  std::string eval_scene;
  eval_cmd->add_option("scene", eval_scene, "scene JSON file with layout")->required();
  add_shared(eval_cmd, eval_flags);

  auto* render_cmd = app.add_subcommand("render", "draw a top-down PNG");
  std::string render_scene;
  int long_side = 1024;
  bool show_grid = false;
  double render_grid_spacing = 50;
  render_cmd->add_option("scene", render_scene, "scene JSON file with layout")
      ->required();
  render_cmd->add_option("--long-side", long_side, "image long side in pixels");
  render_cmd->add_flag("--grid", show_grid, "draw grid lines");
  render_cmd->add_option("--grid-spacing", render_grid_spacing, "grid step in cm");
  add_shared(render_cmd, render_flags);

  auto* gen_cmd = app.add_subcommand("gen", "generate procedural scenes");
  int count = 1, min_assets = 5, max_assets = 20;
  double min_side = 300, max_side = 800;
  gen_cmd->add_option("--count", count, "number of scenes")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--min-side", min_side, "minimum room side, cm");
  gen_cmd->add_option("--max-side", max_side, "maximum room side, cm");
  gen_cmd->add_option("--min-assets", min_assets, "minimum assets per scene");
  gen_cmd->add_option("--max-assets", max_assets, "maximum assets per scene");
  add_shared(gen_cmd, gen_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) return run_synth(synth_scenes, synth_flags, synth, jobs);
    if (refine_cmd->parsed())
      return run_refine(refine_scene, refine_flags, refine_cmd, refine_spacing);
    if (eval_cmd->parsed()) return run_eval(eval_scene, eval_flags);
    if (render_cmd->parsed())
      return run_render(render_scene, render_flags, long_side, show_grid,
                        render_grid_spacing);
    if (gen_cmd->parsed())
      return run_gen(gen_flags, count, min_side, max_side, min_assets, max_assets);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "run with --help for usage\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
