#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "disco/relations.hpp"
#include "disco/scene.hpp"

namespace disco {

struct AgentMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string text;
  std::string image_png_base64;  // empty when no attachment
};

/// One agent call. `messages` is what a remote chat model sees; `task` is a
/// structured copy of the same information for the deterministic mock
/// backend (remote backends ignore it).
struct AgentRequest {
  std::vector<AgentMessage> messages;
  std::string expect;  // "planner" | "designer" | "evaluator_semantic" |
                       // "evaluator_physical" | "srt"
  json task;
};

class AgentBackend {
 public:
  virtual ~AgentBackend() = default;
  virtual std::string complete(const AgentRequest& request) = 0;
  virtual std::string name() const = 0;
};

struct ParseResult {
  bool ok = false;
  json value;
  std::string diagnosis;
};

/// Strips markdown fences and surrounding prose, extracts the first
/// top-level JSON value and normalizes it for the expected schema.
/// "evaluator_physical" expects a bare True/False instead of JSON.
ParseResult parse_model_output(const std::string& text, const std::string& expect);

/// The five agent prompt templates, loaded from text files.
struct PromptLibrary {
  std::string planner;
  std::string designer;
  std::string evaluator_semantic;
  std::string evaluator_physical;
  std::string srt;
};

PromptLibrary load_prompts(const std::string& dir);
std::string default_prompt_dir();

/// Fills {name} placeholders; unknown braces are left untouched.
std::string fill_template(const std::string& tmpl,
                          const std::map<std::string, std::string>& values);

struct AgentContext {
  PromptLibrary prompts;
  RelationParams params;
  double grid_spacing = 10;
  int repair_budget = 1;  // re-prompts per malformed reply
};

struct PlanResult {
  GroupPlan plan;
  std::vector<ConstraintSet> constraints;
};

struct EvalVerdict {
  bool s_sem = false;
  bool s_phy = false;
  std::vector<FailedConstraint> failed_semantic;
};

PlanResult plan(const Scene& scene, const AgentContext& ctx, AgentBackend& backend);

std::map<std::string, Pose> design(const Scene& scene,
                                   const std::vector<std::string>& group,
                                   const std::vector<ConstraintSet>& constraints,
                                   const Layout& current_layout,
                                   const std::string& render_png_base64,
                                   const AgentContext& ctx, AgentBackend& backend);

EvalVerdict evaluate(const Scene& scene, const Layout& layout,
                     const std::string& render_png_base64,
                     const std::vector<ConstraintSet>& constraints,
                     const AgentContext& ctx, AgentBackend& backend);

/// Applies the backend's minimal adjustment for the failed constraints.
/// Only objects implicated by a failed constraint may change.
Layout semantic_refine(const Scene& scene, const Layout& layout,
                       const std::vector<FailedConstraint>& failed,
                       const std::vector<ConstraintSet>& constraints,
                       const AgentContext& ctx, AgentBackend& backend);

/// Deterministic offline backend; heuristics only, no model calls.
class MockBackend : public AgentBackend {
 public:
  explicit MockBackend(std::uint64_t seed = 0) : seed_(seed) {}
  std::string complete(const AgentRequest& request) override;
  std::string name() const override { return "mock"; }

 private:
  std::uint64_t seed_;
};

struct RemoteBackendConfig {
  std::string endpoint;  // e.g. "http://localhost:8080"
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-4o";
  std::string api_key_env = "DISCO_API_KEY";
  double temperature = 0;
  int max_attempts = 3;
  int backoff_ms = 250;
  int max_inflight = 4;
  int timeout_sec = 120;
};

/// OpenAI-compatible chat-completion client with inline base64 images,
/// retry backoff and an in-flight request cap.
class RemoteBackend : public AgentBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);
  ~RemoteBackend() override;
  std::string complete(const AgentRequest& request) override;
  std::string name() const override;

  /// Called with {"request":..., "response":...} per exchange, key redacted.
  std::function<void(const json&)> on_exchange;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace disco
