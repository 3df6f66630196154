#include "disco/orchestrator.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace disco {

namespace {

json refine_report_to_json(const RefineReport& report) {
  json moved = json::array();
  for (const auto& m : report.moved) {
    moved.push_back({{"object_name", m.object_name},
                     {"old", pose_to_json(m.old_pose)},
                     {"new", pose_to_json(m.new_pose)},
                     {"reason", m.reason}});
  }
  return {{"moved", moved},
          {"deleted", report.deleted},
          {"grid_points_scanned", report.grid_points_scanned}};
}

json failed_to_json(const std::vector<FailedConstraint>& failed) {
  json arr = json::array();
  for (const auto& f : failed) {
    arr.push_back({{"subject", f.subject},
                   {"kind", f.kind ? json(relation_to_string(*f.kind)) : json(nullptr)},
                   {"targets", f.targets},
                   {"feedback", f.feedback},
                   {"reason", f.reason}});
  }
  return arr;
}

bool layout_physically_valid(const Layout& layout,
                             const std::vector<ConstraintSet>& constraints) {
  for (const auto& [name, obj] : layout.items()) {
    bool wall = false;
    for (const auto& c : constraints)
      if (c.subject == name) wall = c.against_wall;
    if (!is_valid_placement(obj.asset, obj.pose, layout, layout.room(), wall))
      return false;
  }
  return true;
}

struct Timer {
  bool enabled;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  void stamp(json& event) const {
    if (!enabled) return;
    event["ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  }
};

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& j) {
  PipelineConfig c;
  c.grid_spacing = j.value("grid_spacing", c.grid_spacing);
  c.max_semantic_rounds = j.value("max_semantic_rounds", c.max_semantic_rounds);
  c.backend = j.value("backend", c.backend);
  c.seed = j.value("seed", c.seed);
  c.record_timing = j.value("record_timing", c.record_timing);
  c.prompt_dir = j.value("prompt_dir", c.prompt_dir);
  if (j.contains("relation_params")) {
    const json& p = j["relation_params"];
    c.relation_params.near_gap_max =
        p.value("near_gap_max", c.relation_params.near_gap_max);
    c.relation_params.align_tol = p.value("align_tol", c.relation_params.align_tol);
    c.relation_params.facing_cone_deg =
        p.value("facing_cone_deg", c.relation_params.facing_cone_deg);
    c.relation_params.front_depth_max =
        p.value("front_depth_max", c.relation_params.front_depth_max);
  }
  if (j.contains("render")) {
    const json& r = j["render"];
    c.render.long_side = r.value("long_side", c.render.long_side);
    c.render.show_labels = r.value("show_labels", c.render.show_labels);
    c.render.show_grid = r.value("show_grid", c.render.show_grid);
    c.render.grid_spacing = r.value("grid_spacing", c.render.grid_spacing);
  }
  if (j.contains("remote")) {
    const json& r = j["remote"];
    c.remote.endpoint = r.value("endpoint", c.remote.endpoint);
    c.remote.path = r.value("path", c.remote.path);
    c.remote.model = r.value("model", c.remote.model);
    c.remote.api_key_env = r.value("api_key_env", c.remote.api_key_env);
    c.remote.temperature = r.value("temperature", c.remote.temperature);
    c.remote.max_attempts = r.value("max_attempts", c.remote.max_attempts);
    c.remote.backoff_ms = r.value("backoff_ms", c.remote.backoff_ms);
    c.remote.max_inflight = r.value("max_inflight", c.remote.max_inflight);
    c.remote.timeout_sec = r.value("timeout_sec", c.remote.timeout_sec);
  }
  if (c.grid_spacing <= 0) throw std::invalid_argument("grid_spacing must be positive");
  if (c.max_semantic_rounds < 0)
    throw std::invalid_argument("max_semantic_rounds must be non-negative");
  if (c.backend != "mock" && c.backend != "remote")
    throw std::invalid_argument("backend must be 'mock' or 'remote'");
  return c;
}

json PipelineConfig::to_json() const {
  return {{"grid_spacing", grid_spacing},
          {"max_semantic_rounds", max_semantic_rounds},
          {"backend", backend},
          {"seed", seed},
          {"record_timing", record_timing},
          {"prompt_dir", prompt_dir},
          {"relation_params",
           {{"near_gap_max", relation_params.near_gap_max},
            {"align_tol", relation_params.align_tol},
            {"facing_cone_deg", relation_params.facing_cone_deg},
            {"front_depth_max", relation_params.front_depth_max}}},
          {"render",
           {{"long_side", render.long_side},
            {"show_labels", render.show_labels},
            {"show_grid", render.show_grid},
            {"grid_spacing", render.grid_spacing}}},
          {"remote",
           {{"endpoint", remote.endpoint},
            {"path", remote.path},
            {"model", remote.model},
            {"api_key_env", remote.api_key_env},
            {"temperature", remote.temperature},
            {"max_attempts", remote.max_attempts},
            {"backoff_ms", remote.backoff_ms},
            {"max_inflight", remote.max_inflight},
            {"timeout_sec", remote.timeout_sec}}}};
}

void Trace::push(json event) {
  event["seq"] = events.size();
  events.push_back(std::move(event));
}

std::string Trace::to_ndjson() const {
  std::string out;
  for (const auto& e : events) {
    out += e.dump();
    out += '\n';
  }
  return out;
}

Trace Trace::from_ndjson(const std::string& text) {
  Trace t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      t.events.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw std::runtime_error("corrupted trace at line " +
                               std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

std::unique_ptr<AgentBackend> make_backend(const PipelineConfig& config) {
  if (config.backend == "mock") return std::make_unique<MockBackend>(config.seed);
  if (config.backend == "remote")
    return std::make_unique<RemoteBackend>(config.remote);
  throw std::invalid_argument("unknown backend: " + config.backend);
}

SynthesisResult synthesize(const Scene& scene, const PipelineConfig& config) {
  auto backend = make_backend(config);
  return synthesize(scene, config, *backend);
}

SynthesisResult synthesize(const Scene& scene, const PipelineConfig& config,
                           AgentBackend& backend) {
  if (scene.assets.empty())
    throw std::invalid_argument("synthesize: scene has no assets");
  if (scene.room.width <= 0 || scene.room.depth <= 0)
    throw std::invalid_argument("synthesize: invalid room");

  AgentContext ctx;
  ctx.prompts = load_prompts(config.prompt_dir.empty() ? default_prompt_dir()
                                                       : config.prompt_dir);
  ctx.params = config.relation_params;
  ctx.grid_spacing = config.grid_spacing;

  SynthesisResult result;
  Trace& trace = result.trace;

  json assets_json = json::array();
  for (const auto& a : scene.assets)
    assets_json.push_back({{"object_name", a.object_name},
                           {"size", {{"x", a.footprint_w}, {"y", a.footprint_d},
                                     {"z", a.height}}}});
  trace.push({{"event", "begin"},
              {"room_type", scene.room_type},
              {"room", {{"width", scene.room.width}, {"depth", scene.room.depth}}},
              {"assets", assets_json},
              {"backend", backend.name()},
              {"seed", config.seed}});

  // If the remote backend is in play, capture every exchange in the trace.
  if (auto* remote = dynamic_cast<RemoteBackend*>(&backend))
    remote->on_exchange = [&trace](const json& e) {
      trace.push({{"event", "exchange"}, {"exchange", e}});
    };

  Timer total{config.record_timing};

  PlanResult planned = plan(scene, ctx, backend);
  result.constraints = planned.constraints;
  {
    json groups = json::array();
    for (const auto& g : planned.plan.groups) groups.push_back(g);
    json cs = json::array();
    for (const auto& c : planned.constraints) cs.push_back(constraint_to_json(c));
    json e = {{"event", "plan"}, {"groups", groups}, {"constraints", cs}};
    total.stamp(e);
    trace.push(std::move(e));
  }

  GridSet grid = build_grid(scene.room, config.grid_spacing);
  Layout committed(scene.room);

  for (std::size_t k = 0; k < planned.plan.groups.size(); ++k) {
    const std::vector<std::string>& group = planned.plan.groups[k];
    Timer group_timer{config.record_timing};

    std::string context_render;
    if (!committed.empty())
      context_render =
          encode_base64(encode_png(render_topdown(committed, config.render)));

    std::map<std::string, Pose> poses =
        design(scene, group, planned.constraints, committed, context_render,
               ctx, backend);

    std::vector<std::pair<AssetSpec, Pose>> proposal;
    json proposal_json = json::array();
    for (const auto& n : group) {
      const AssetSpec& a = scene.asset(n);
      proposal.emplace_back(a, poses.at(n));
      json e = pose_to_json(poses.at(n));
      e["object_name"] = n;
      e["size"] = {{"x", a.footprint_w}, {"y", a.footprint_d}, {"z", a.height}};
      proposal_json.push_back(std::move(e));
    }
    Layout integrated = integrate_group(committed, proposal);
    trace.push({{"event", "proposal"}, {"group", k}, {"objects", proposal_json}});

    auto render_b64 = [&](const Layout& l) {
      return encode_base64(encode_png(render_topdown(l, config.render)));
    };

    EvalVerdict verdict = evaluate(scene, integrated, render_b64(integrated),
                                   planned.constraints, ctx, backend);
    trace.push({{"event", "eval"},
                {"group", k},
                {"round", 0},
                {"s_sem", verdict.s_sem},
                {"s_phy", verdict.s_phy},
                {"failed", failed_to_json(verdict.failed_semantic)}});

    int round = 0;
    while (verdict.s_sem && round < config.max_semantic_rounds) {
      ++round;
      Layout adjusted =
          semantic_refine(scene, integrated, verdict.failed_semantic,
                          planned.constraints, ctx, backend);
      json changes = json::array();
      for (const auto& [name, obj] : adjusted.items()) {
        const PlacedObject& old = integrated.at(name);
        if (old.pose == obj.pose) continue;
        changes.push_back({{"object_name", name},
                           {"old", pose_to_json(old.pose)},
                           {"new", pose_to_json(obj.pose)}});
      }
      integrated = adjusted;
      trace.push({{"event", "srt"}, {"group", k}, {"round", round},
                  {"changes", changes}});

      verdict = evaluate(scene, integrated, render_b64(integrated),
                         planned.constraints, ctx, backend);
      trace.push({{"event", "eval"},
                  {"group", k},
                  {"round", round},
                  {"s_sem", verdict.s_sem},
                  {"s_phy", verdict.s_phy},
                  {"failed", failed_to_json(verdict.failed_semantic)}});
    }
    if (verdict.s_sem) {
      // Semantic budget exhausted; surface the stragglers and move on.
      trace.push({{"event", "flagged"},
                  {"group", k},
                  {"constraints", failed_to_json(verdict.failed_semantic)}});
    }

    // Safety net: run the grid repair whenever the deterministic check
    // fails, even if the evaluator reported no physical problem.
    if (verdict.s_phy || !layout_physically_valid(integrated, planned.constraints)) {
      auto [repaired, report] = refine(integrated, planned.constraints, grid);
      integrated = repaired;
      json e = {{"event", "refine"}, {"group", k},
                {"report", refine_report_to_json(report)}};
      trace.push(std::move(e));
      result.score.deleted_count += static_cast<int>(report.deleted.size());
    }

    committed = integrated;
    json commit = {{"event", "commit"}, {"group", k},
                   {"layout", layout_to_json(committed)}};
    group_timer.stamp(commit);
    trace.push(std::move(commit));
    result.group_renders.push_back(render_topdown(committed, config.render));
  }

  if (auto* remote = dynamic_cast<RemoteBackend*>(&backend))
    remote->on_exchange = nullptr;

  result.layout = committed;
  result.final_render = render_topdown(committed, config.render);

  int deleted = result.score.deleted_count;
  result.score = score_scene(committed, planned.constraints, config.relation_params);
  result.score.deleted_count = deleted;

  json final_event = {{"event", "final"},
                      {"layout", layout_to_json(committed)},
                      {"score", result.score.to_json()}};
  total.stamp(final_event);
  trace.push(std::move(final_event));
  return result;
}

Layout replay(const Trace& trace) {
  Layout layout;
  bool begun = false;
  const json* final_layout = nullptr;

  for (const auto& e : trace.events) {
    if (!e.contains("event"))
      throw std::runtime_error("corrupted trace: event without 'event' field");
    std::string kind = e["event"].get<std::string>();
    if (kind == "begin") {
      layout = Layout(Room{e.at("room").at("width").get<double>(),
                           e.at("room").at("depth").get<double>()});
      begun = true;
    } else if (kind == "proposal") {
      if (!begun) throw std::runtime_error("corrupted trace: missing begin event");
      for (const auto& o : e.at("objects")) {
        AssetSpec a;
        a.object_name = o.at("object_name").get<std::string>();
        a.footprint_w = o.at("size").at("x").get<double>();
        a.footprint_d = o.at("size").at("y").get<double>();
        a.height = o.at("size").value("z", 0.0);
        layout.add(a, pose_from_json(o));
      }
    } else if (kind == "srt") {
      for (const auto& c : e.at("changes"))
        layout.set_pose(c.at("object_name").get<std::string>(),
                        pose_from_json(c.at("new")));
    } else if (kind == "refine") {
      const json& report = e.at("report");
      for (const auto& m : report.at("moved"))
        layout.set_pose(m.at("object_name").get<std::string>(),
                        pose_from_json(m.at("new")));
      for (const auto& d : report.at("deleted"))
        layout.remove(d.get<std::string>());
    } else if (kind == "commit") {
      Layout snapshot = layout_from_json(e.at("layout"));
      if (!(snapshot == layout))
        throw std::runtime_error(
            "corrupted trace: commit snapshot for group " +
            std::to_string(e.at("group").get<int>()) +
            " does not match the replayed layout");
    } else if (kind == "final") {
      final_layout = &e.at("layout");
    }
  }
  if (!begun) throw std::runtime_error("truncated trace: missing 'begin' event");
  if (!final_layout) throw std::runtime_error("truncated trace: missing 'final' event");
  Layout recorded = layout_from_json(*final_layout);
  if (!(recorded == layout))
    throw std::runtime_error(
        "corrupted trace: final snapshot does not match the replayed layout");
  return layout;
}

}  // namespace disco
