#pragma once

#include <memory>
#include <string>
#include <vector>

#include "disco/agents.hpp"
#include "disco/grid_refine.hpp"
#include "disco/metrics.hpp"
#include "disco/relations.hpp"
#include "disco/render.hpp"
#include "disco/scene.hpp"

namespace disco {

struct PipelineConfig {
  double grid_spacing = 10;  // cm, > 0
  RelationParams relation_params;
  int max_semantic_rounds = 2;  // >= 0
  std::string backend = "mock";  // "mock" | "remote"
  RemoteBackendConfig remote;
  RenderOptions render;
  std::uint64_t seed = 0;
  bool record_timing = false;  // timing fields break byte-determinism; opt-in
  std::string prompt_dir;      // empty selects the compiled-in default

  static PipelineConfig from_json(const json& j);
  json to_json() const;
};

/// Append-only event log of one synthesis run. Events carry enough data
/// (sizes included) that the final layout is reconstructible offline.
struct Trace {
  std::vector<json> events;

  void push(json event);
  std::string to_ndjson() const;
  static Trace from_ndjson(const std::string& text);
};

struct SynthesisResult {
  Layout layout;
  Trace trace;
  SceneScore score;
  std::vector<ConstraintSet> constraints;
  std::vector<Image> group_renders;  // one per committed group
  Image final_render;
};

std::unique_ptr<AgentBackend> make_backend(const PipelineConfig& config);

/// Full pipeline: plan, then per group design / evaluate / semantic
/// refinement rounds / grid repair / commit. The returned layout passes
/// every physical validity check.
SynthesisResult synthesize(const Scene& scene, const PipelineConfig& config,
                           AgentBackend& backend);

/// Convenience overload constructing the backend from the config.
SynthesisResult synthesize(const Scene& scene, const PipelineConfig& config);

/// Folds the recorded events back into a layout and checks it against the
/// recorded final snapshot. Throws naming the missing event on truncation.
Layout replay(const Trace& trace);

}  // namespace disco
