#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "disco/agents.hpp"
#include "disco/geometry.hpp"
#include "disco/orchestrator.hpp"
#include "disco/relations.hpp"

#include "httplib.h"

using namespace disco;

namespace {

AgentContext make_ctx() {
  AgentContext ctx;
  ctx.prompts = load_prompts(default_prompt_dir());
  return ctx;
}

/// Replays a fixed list of replies and records every request it sees.
class FakeBackend : public AgentBackend {
 public:
  explicit FakeBackend(std::vector<std::string> replies)
      : replies_(std::move(replies)) {}
  std::string complete(const AgentRequest& request) override {
    requests.push_back(request);
    REQUIRE(next_ < replies_.size());
    return replies_[next_++];
  }
  std::string name() const override { return "fake"; }
  std::vector<AgentRequest> requests;

 private:
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
};

/// Passes through to an inner backend while keeping every reply.
class RecordingBackend : public AgentBackend {
 public:
  explicit RecordingBackend(AgentBackend& inner) : inner_(inner) {}
  std::string complete(const AgentRequest& request) override {
    std::string reply = inner_.complete(request);
    replies.push_back(reply);
    return reply;
  }
  std::string name() const override { return inner_.name(); }
  std::vector<std::string> replies;

 private:
  AgentBackend& inner_;
};

Scene bedroom_scene() {
  Scene s;
  s.room_type = "bedroom";
  s.room = {400, 350};
  s.assets = {{"bed-0", 140, 190, 50},
              {"nightstand-0", 40, 40, 55},
              {"nightstand-1", 40, 40, 55},
              {"wardrobe-0", 100, 55, 200}};
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("parse_model_output handles fences, prose and dict forms") {
  ParseResult r = parse_model_output(
      "```json\n[{\"object_name\":\"a\",\"position\":{\"X\":1,\"Y\":2},"
      "\"rotation\":0}]\n```",
      "designer");
  CHECK(r.ok);
  CHECK(r.value.is_array());
  CHECK(r.value[0]["object_name"] == "a");

  r = parse_model_output(
      "Here you go: {\"b\":{\"position\":{\"X\":1,\"Y\":2},\"rotation\":90},"
      "\"a\":{\"position\":{\"X\":3,\"Y\":4},\"rotation\":0}} Enjoy!",
      "srt");
  CHECK(r.ok);
  REQUIRE(r.value.size() == 2);
  CHECK(r.value[0]["object_name"] == "a");  // dict keys sorted
  CHECK(r.value[1]["rotation"] == 90);

  r = parse_model_output(
      "{\"object_name\":\"a\",\"position\":{\"X\":1,\"Y\":2},\"rotation\":0}",
      "designer");
  CHECK(r.ok);
  CHECK(r.value.is_array());
  CHECK(r.value.size() == 1);
}

TEST_CASE("parse_model_output rejects schema violations with a diagnosis") {
  ParseResult r = parse_model_output("no json here at all", "designer");
  CHECK_FALSE(r.ok);
  CHECK(r.diagnosis == "no JSON value found in the reply");

  r = parse_model_output("[{\"object_name\":\"a\",\"position\":{\"X\":1,\"Y\":2}}]",
                         "designer");
  CHECK_FALSE(r.ok);
  CHECK(r.diagnosis.find("rotation") != std::string::npos);

  r = parse_model_output("{\"groups\": []}", "planner");
  CHECK_FALSE(r.ok);
  CHECK(r.diagnosis.find("constraints") != std::string::npos);

  r = parse_model_output("[{\"answer\": \"maybe\"}]", "evaluator_semantic");
  CHECK_FALSE(r.ok);
  CHECK(r.diagnosis.find("maybe") != std::string::npos);
}

TEST_CASE("parse_model_output: physical evaluator wants a bare verdict") {
  ParseResult r = parse_model_output("  True \n", "evaluator_physical");
  CHECK(r.ok);
  CHECK(r.value == true);

  r = parse_model_output("False. All good.", "evaluator_physical");
  CHECK(r.ok);
  CHECK(r.value == false);

  r = parse_model_output("hard to say", "evaluator_physical");
  CHECK_FALSE(r.ok);
  CHECK(r.diagnosis.find("True or False") != std::string::npos);
}

TEST_CASE("every reply fixture parses or is diagnosed as its name says") {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(DISCO_TEST_DIR) / "fixtures" / "replies";
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  REQUIRE(files.size() >= 20);

  for (const auto& f : files) {
    std::string stem = f.stem().string();
    CAPTURE(stem);
    std::size_t a = stem.find("__");
    REQUIRE(a != std::string::npos);
    std::size_t b = stem.find("__", a + 2);
    REQUIRE(b != std::string::npos);
    std::string expect = stem.substr(0, a);
    bool should_parse = stem.substr(a + 2, b - a - 2) == "ok";

    ParseResult r = parse_model_output(slurp(f), expect);
    CHECK(r.ok == should_parse);
    if (!should_parse) CHECK_FALSE(r.diagnosis.empty());
  }
}

TEST_CASE("fill_template substitutes known keys and keeps unknown braces") {
  std::string out = fill_template("a {k} b {unknown} c", {{"k", "K"}});
  CHECK(out == "a K b {unknown} c");
  CHECK(fill_template("{x}{x}", {{"x", "1"}}) == "11");
  CHECK(fill_template("plain", {}) == "plain");
}

TEST_CASE("prompt library loads all five templates with their placeholders") {
  PromptLibrary p = load_prompts(default_prompt_dir());
  CHECK(p.planner.find("{object_names}") != std::string::npos);
  CHECK(p.designer.find("{room_size}") != std::string::npos);
  CHECK(p.evaluator_semantic.find("{questions}") != std::string::npos);
  CHECK_FALSE(p.evaluator_physical.empty());
  CHECK(p.srt.find("{result}") != std::string::npos);
  CHECK_THROWS_AS(load_prompts("/nonexistent-dir"), std::runtime_error);
}

TEST_CASE("mock plan groups the bed suite ahead of the wardrobe") {
  AgentContext ctx = make_ctx();
  MockBackend backend;
  PlanResult pr = plan(bedroom_scene(), ctx, backend);

  REQUIRE(pr.plan.groups.size() == 2);
  CHECK(pr.plan.groups[0] ==
        std::vector<std::string>{"bed-0", "nightstand-0", "nightstand-1"});
  CHECK(pr.plan.groups[1] == std::vector<std::string>{"wardrobe-0"});

  REQUIRE(pr.constraints.size() == 4);
  for (const auto& c : pr.constraints) {
    if (c.subject == "bed-0" || c.subject == "wardrobe-0") {
      CHECK(c.against_wall);
      CHECK(c.relations.empty());
    }
    if (c.subject == "nightstand-0" || c.subject == "nightstand-1") {
      CHECK_FALSE(c.against_wall);
      REQUIRE(c.relations.size() == 1);
      CHECK(c.relations[0].first == RelationKind::SideOf);
      CHECK(c.relations[0].second == "bed-0");
      CHECK_FALSE(c.facing.has_value());
    }
  }
}

TEST_CASE("mock plan: a single asset forms a single group") {
  Scene s;
  s.room_type = "living room";
  s.room = {300, 300};
  s.assets = {{"sofa-0", 200, 90, 80}};
  AgentContext ctx = make_ctx();
  MockBackend backend;
  PlanResult pr = plan(s, ctx, backend);
  REQUIRE(pr.plan.groups.size() == 1);
  CHECK(pr.plan.groups[0] == std::vector<std::string>{"sofa-0"});
  CHECK(pr.constraints[0].against_wall);
}

TEST_CASE("plan rejects an empty asset list") {
  Scene s;
  s.room = {300, 300};
  AgentContext ctx = make_ctx();
  MockBackend backend;
  CHECK_THROWS_AS(plan(s, ctx, backend), std::invalid_argument);
}

TEST_CASE("a malformed plan reply gets one repair round") {
  // First reply omits nightstand-1; the repair prompt carries the diagnosis
  // and the second reply is accepted.
  json good_constraints = {
      {"bed-0", {{"against_wall", true}, {"rotation", nullptr}}},
      {"nightstand-0",
       {{"against_wall", false},
        {"relative_position", json::array({"side of bed-0"})},
        {"rotation", nullptr}}},
      {"nightstand-1",
       {{"against_wall", false},
        {"relative_position", json::array({"side of bed-0"})},
        {"rotation", nullptr}}},
      {"wardrobe-0", {{"against_wall", true}, {"rotation", nullptr}}}};
  json groups = {{"group1", {"bed-0", "nightstand-0", "nightstand-1"}},
                 {"group2", {"wardrobe-0"}}};

  json bad = {{"constraints",
               {{"bed-0", {{"against_wall", true}}},
                {"nightstand-0", {{"against_wall", false}}},
                {"wardrobe-0", {{"against_wall", true}}}}},
              {"groups", groups}};
  json good = {{"constraints", good_constraints}, {"groups", groups}};

  FakeBackend backend({bad.dump(), good.dump()});
  AgentContext ctx = make_ctx();
  PlanResult pr = plan(bedroom_scene(), ctx, backend);

  CHECK(pr.plan.groups.size() == 2);
  REQUIRE(backend.requests.size() == 2);
  const auto& msgs = backend.requests[1].messages;
  REQUIRE(msgs.size() >= 3);
  CHECK(msgs[msgs.size() - 1].text.find("could not be used") != std::string::npos);
  CHECK(msgs[msgs.size() - 1].text.find("nightstand-1") != std::string::npos);
}

TEST_CASE("persistent schema violations fail hard after the repair budget") {
  std::string bad_rotation =
      "[{\"object_name\":\"sofa-0\",\"position\":{\"X\":100,\"Y\":45},"
      "\"rotation\":45}]";
  FakeBackend backend({bad_rotation, bad_rotation});
  AgentContext ctx = make_ctx();
  Scene s;
  s.room_type = "living room";
  s.room = {400, 300};
  s.assets = {{"sofa-0", 200, 90, 80}};
  Layout empty(s.room);

  CHECK_THROWS_WITH_AS(
      design(s, {"sofa-0"}, {}, empty, "", ctx, backend),
      doctest::Contains("agent reply unusable"), std::runtime_error);
  CHECK(backend.requests.size() == 2);
}

TEST_CASE("an uncommitted evaluator answer fails after repair") {
  Scene s;
  s.room_type = "living room";
  s.room = {400, 300};
  s.assets = {{"table-0", 100, 100, 75}, {"chair-0", 40, 40, 90}};
  Layout l(s.room);
  l.add(s.assets[0], {200, 150, 0});
  l.add(s.assets[1], {200, 80, 0});
  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "chair-0";
  cs[0].relations = {{RelationKind::Near, "table-0"}};

  std::string vague = "[{\"answer\":\"maybe\"}]";
  FakeBackend backend({vague, vague});
  AgentContext ctx = make_ctx();
  CHECK_THROWS_WITH_AS(evaluate(s, l, "", cs, ctx, backend),
                       doctest::Contains("evaluator_semantic"),
                       std::runtime_error);
}

TEST_CASE("mock design puts a wall object flush against a wall") {
  Scene s;
  s.room_type = "living room";
  s.room = {400, 300};
  s.assets = {{"sofa-0", 200, 90, 80}};
  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "sofa-0";
  cs[0].against_wall = true;

  AgentContext ctx = make_ctx();
  MockBackend backend;
  Layout empty(s.room);
  auto poses = design(s, {"sofa-0"}, cs, empty, "", ctx, backend);
  REQUIRE(poses.count("sofa-0"));
  Pose p = poses["sofa-0"];
  Vec2 bc = back_center(s.assets[0], p);
  double to_wall = std::min({bc.y, bc.x, s.room.width - bc.x, s.room.depth - bc.y});
  CHECK(to_wall == doctest::Approx(0).epsilon(1e-9));
  CHECK(is_valid_placement(s.assets[0], p, empty, s.room, true));
}

TEST_CASE("mock design centers an unconstrained object") {
  Scene s;
  s.room_type = "dining room";
  s.room = {400, 300};
  s.assets = {{"table-0", 120, 80, 75}};
  AgentContext ctx = make_ctx();
  MockBackend backend;
  Layout empty(s.room);
  auto poses = design(s, {"table-0"}, {}, empty, "", ctx, backend);
  CHECK(poses["table-0"] == Pose{200, 150, 0});
}

TEST_CASE("mock design satisfies a relation to an already placed target") {
  Scene s;
  s.room_type = "living room";
  s.room = {500, 400};
  s.assets = {{"sofa-0", 200, 90, 80}, {"coffee table-0", 110, 60, 45}};
  Layout current(s.room);
  current.add(s.assets[0], {250, 45, 0});

  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "coffee table-0";
  cs[0].relations = {{RelationKind::InFrontOf, "sofa-0"}};

  AgentContext ctx = make_ctx();
  MockBackend backend;
  auto poses = design(s, {"coffee table-0"}, cs, current, "", ctx, backend);
  Layout after = current;
  after.add(s.assets[1], poses["coffee table-0"]);
  CHECK(eval_relation(RelationKind::InFrontOf, "coffee table-0", "sofa-0",
                      after, ctx.params));
}

TEST_CASE("mock evaluate reports semantic and physical verdicts") {
  Scene s;
  s.room_type = "dining room";
  s.room = {600, 600};
  s.assets = {{"table-0", 120, 120, 75}, {"chair-0", 40, 40, 90}};
  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "chair-0";
  cs[0].relations = {{RelationKind::Near, "table-0"}};
  AgentContext ctx = make_ctx();
  MockBackend backend;

  Layout good(s.room);
  good.add(s.assets[0], {300, 300, 0});
  good.add(s.assets[1], {300, 210, 0});
  EvalVerdict v = evaluate(s, good, "", cs, ctx, backend);
  CHECK_FALSE(v.s_sem);
  CHECK_FALSE(v.s_phy);
  CHECK(v.failed_semantic.empty());

  Layout far(s.room);
  far.add(s.assets[0], {300, 300, 0});
  far.add(s.assets[1], {40, 40, 0});
  v = evaluate(s, far, "", cs, ctx, backend);
  CHECK(v.s_sem);
  REQUIRE(v.failed_semantic.size() == 1);
  CHECK(v.failed_semantic[0].subject == "chair-0");
  CHECK(v.failed_semantic[0].feedback ==
        "The chair-0 is not near the table-0");

  Layout overlapping(s.room);
  overlapping.add(s.assets[0], {300, 300, 0});
  overlapping.add(s.assets[1], {310, 300, 0});
  v = evaluate(s, overlapping, "", cs, ctx, backend);
  CHECK(v.s_phy);
}

TEST_CASE("mock semantic refinement fixes facing by rotation alone") {
  Scene s;
  s.room_type = "living room";
  s.room = {600, 600};
  s.assets = {{"tv stand-0", 160, 45, 55}, {"armchair-0", 80, 80, 85}};
  Layout l(s.room);
  l.add(s.assets[0], {300, 500, 180});
  l.add(s.assets[1], {300, 100, 180});  // faces away from the tv stand

  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "armchair-0";
  cs[0].facing = "tv stand-0";

  FailedConstraint f;
  f.subject = "armchair-0";
  f.targets = {"tv stand-0"};
  f.feedback = facing_feedback("armchair-0", "tv stand-0");

  AgentContext ctx = make_ctx();
  MockBackend backend;
  Layout out = semantic_refine(s, l, {f}, cs, ctx, backend);

  const Pose& p = out.at("armchair-0").pose;
  CHECK(p.x == 300);
  CHECK(p.y == 100);
  CHECK(p.theta == 0);
  CHECK(out.at("tv stand-0").pose == l.at("tv stand-0").pose);
  CHECK(eval_facing("armchair-0", "tv stand-0", out, ctx.params));
}

TEST_CASE("mock semantic refinement moves only the implicated object") {
  Scene s;
  s.room_type = "living room";
  s.room = {800, 800};
  s.assets = {{"sofa-0", 200, 90, 80},
              {"floor lamp-0", 35, 35, 160},
              {"bookshelf-0", 90, 30, 180}};
  Layout l(s.room);
  l.add(s.assets[0], {400, 45, 0});
  l.add(s.assets[1], {700, 700, 0});  // far from the sofa
  l.add(s.assets[2], {100, 700, 0});

  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "floor lamp-0";
  cs[0].relations = {{RelationKind::Near, "sofa-0"}};

  FailedConstraint f;
  f.subject = "floor lamp-0";
  f.kind = RelationKind::Near;
  f.targets = {"sofa-0"};
  f.feedback = relation_feedback("floor lamp-0", RelationKind::Near, "sofa-0");

  AgentContext ctx = make_ctx();
  MockBackend backend;
  Layout out = semantic_refine(s, l, {f}, cs, ctx, backend);

  CHECK(eval_relation(RelationKind::Near, "floor lamp-0", "sofa-0", out,
                      ctx.params));
  CHECK(out.at("sofa-0").pose == l.at("sofa-0").pose);
  CHECK(out.at("bookshelf-0").pose == l.at("bookshelf-0").pose);
  CHECK(outside_area(footprint(s.assets[1], out.at("floor lamp-0").pose),
                     s.room) == 0);
}

TEST_CASE("semantic refinement requires a non-empty failure list") {
  Scene s;
  s.room = {400, 300};
  s.assets = {{"a", 50, 50, 0}};
  Layout l(s.room);
  l.add(s.assets[0], {200, 150, 0});
  AgentContext ctx = make_ctx();
  MockBackend backend;
  CHECK_THROWS_AS(semantic_refine(s, l, {}, {}, ctx, backend),
                  std::invalid_argument);
}

TEST_CASE("remote backend refuses to start without its API key") {
  unsetenv("DISCO_API_KEY");
  RemoteBackendConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1";
  CHECK_THROWS_WITH_AS(RemoteBackend{cfg}, doctest::Contains("DISCO_API_KEY"),
                       std::runtime_error);
}

TEST_CASE("a chat endpoint replaying recorded replies reproduces the mock run") {
  Scene s = bedroom_scene();
  s.prompt = "A tidy bedroom.";

  PipelineConfig cfg;
  MockBackend mock;
  RecordingBackend recorder(mock);
  SynthesisResult reference = synthesize(s, cfg, recorder);
  REQUIRE(recorder.replies.size() >= 4);

  // Serve the transcript verbatim, wrapped in chat-completion envelopes.
  auto server = std::make_shared<httplib::Server>();
  std::atomic<std::size_t> cursor{0};
  std::vector<std::string> replies = recorder.replies;
  server->Post("/v1/chat/completions",
               [&](const httplib::Request& req, httplib::Response& res) {
                 json body = json::parse(req.body);
                 REQUIRE(body.contains("messages"));
                 std::size_t i = cursor++;
                 REQUIRE(i < replies.size());
                 json envelope = {
                     {"choices",
                      json::array({{{"message", {{"role", "assistant"},
                                                 {"content", replies[i]}}}}})}};
                 res.set_content(envelope.dump(), "application/json");
               });
  int port = server->bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread listener([server] { server->listen_after_bind(); });
  server->wait_until_ready();

  setenv("DISCO_API_KEY", "test-key-not-a-secret", 1);
  PipelineConfig remote_cfg = cfg;
  remote_cfg.backend = "remote";
  remote_cfg.remote.endpoint = "http://127.0.0.1:" + std::to_string(port);
  SynthesisResult via_http = synthesize(s, remote_cfg);

  server->stop();
  listener.join();
  unsetenv("DISCO_API_KEY");

  CHECK(cursor.load() == replies.size());
  CHECK(via_http.layout == reference.layout);
  CHECK(via_http.score.to_json() == reference.score.to_json());
}
