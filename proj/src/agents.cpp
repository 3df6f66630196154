#include "disco/agents.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace disco {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prompt template: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Finds the first balanced top-level JSON object or array in free text.
std::optional<std::string> extract_json_span(const std::string& text) {
  std::size_t start = text.find_first_of("{[");
  while (start != std::string::npos) {
    char open = text[start];
    char close = open == '{' ? '}' : ']';
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (c == '\\')
          ++i;
        else if (c == '"')
          in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '{' || c == '[') {
        ++depth;
      } else if (c == '}' || c == ']') {
        --depth;
        if (depth == 0) {
          if (c == close) return text.substr(start, i - start + 1);
          break;  // mismatched; try the next opener
        }
      }
    }
    start = text.find_first_of("{[", start + 1);
  }
  return std::nullopt;
}

/// Normalizes designer/SRT replies to an array of per-object entries.
std::optional<json> normalize_object_list(const json& v) {
  if (v.is_array()) return std::optional<json>(std::in_place, v);
  if (!v.is_object()) return std::nullopt;
  if (v.contains("object_name")) return json::array({v});
  // Dict keyed by object name.
  json arr = json::array();
  std::vector<std::string> keys;
  for (auto& [k, val] : v.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) {
    if (!v[k].is_object()) return std::nullopt;
    json e = v[k];
    e["object_name"] = k;
    arr.push_back(e);
  }
  return arr;
}

struct QuestionRef {
  std::string subject;
  std::optional<RelationKind> kind;  // empty for facing
  std::string target;
  std::string text;
};

std::vector<QuestionRef> build_questions(const Layout& layout,
                                         const std::vector<ConstraintSet>& constraints) {
  std::vector<QuestionRef> qs;
  for (const auto& c : constraints) {
    if (!layout.contains(c.subject)) continue;
    for (const auto& [kind, target] : c.relations) {
      if (!layout.contains(target)) continue;
      qs.push_back({c.subject, kind, target,
                    relation_question(c.subject, kind, target)});
    }
    if (c.facing && layout.contains(*c.facing))
      qs.push_back({c.subject, std::nullopt, *c.facing,
                    facing_question(c.subject, *c.facing)});
  }
  return qs;
}

std::string room_size_text(const Room& room) {
  std::ostringstream os;
  os << static_cast<long long>(std::llround(room.width)) << "cm x "
     << static_cast<long long>(std::llround(room.depth)) << "cm";
  return os.str();
}

json task_questions(const std::vector<QuestionRef>& qs) {
  json arr = json::array();
  for (const auto& q : qs) {
    json e = {{"subject", q.subject}, {"target", q.target}, {"question", q.text}};
    e["kind"] = q.kind ? json(relation_to_string(*q.kind)) : json(nullptr);
    arr.push_back(e);
  }
  return arr;
}

json constraints_to_json(const std::vector<ConstraintSet>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(constraint_to_json(c));
  return arr;
}

/// Runs one backend call with a single repair round: on a malformed reply
/// the diagnosis is fed back once, then the call fails hard.
json call_with_repair(AgentBackend& backend, AgentRequest request,
                      const AgentContext& ctx,
                      const std::function<std::string(const json&)>& validate) {
  std::string diagnosis;
  for (int attempt = 0; attempt <= ctx.repair_budget; ++attempt) {
    std::string reply = backend.complete(request);
    ParseResult parsed = parse_model_output(reply, request.expect);
    if (parsed.ok) {
      std::string err = validate(parsed.value);
      if (err.empty()) return parsed.value;
      diagnosis = err;
    } else {
      diagnosis = parsed.diagnosis;
    }
    request.messages.push_back({"assistant", reply, ""});
    request.messages.push_back(
        {"user",
         "Your previous reply could not be used: " + diagnosis +
             ". Reply again, strictly following the required JSON schema.",
         ""});
  }
  throw std::runtime_error("agent reply unusable after repair attempts (" +
                           request.expect + "): " + diagnosis);
}

std::vector<std::pair<RelationKind, std::string>> parse_relation_entries(
    const json& rel_pos, const json& rel_obj,
    const std::vector<std::string>& known_names, std::string& err);

}  // namespace

ParseResult parse_model_output(const std::string& text, const std::string& expect) {
  ParseResult r;

  if (expect == "evaluator_physical") {
    std::string t = lower(trim(text));
    // Find a bare true/false token anywhere in the reply.
    for (const char* word : {"true", "false"}) {
      std::size_t pos = t.find(word);
      if (pos != std::string::npos) {
        r.ok = true;
        r.value = std::string(word) == "true";
        return r;
      }
    }
    r.diagnosis = "expected the reply to contain only True or False";
    return r;
  }

  auto span = extract_json_span(text);
  if (!span) {
    r.diagnosis = "no JSON value found in the reply";
    return r;
  }
  json v;
  try {
    v = json::parse(*span);
  } catch (const json::parse_error& e) {
    r.diagnosis = std::string("reply JSON does not parse: ") + e.what();
    return r;
  }

  if (expect == "planner") {
    if (!v.is_object() || !v.contains("constraints") || !v["constraints"].is_object()) {
      r.diagnosis = "planner reply must be an object with a 'constraints' object";
      return r;
    }
    if (!v.contains("groups") || !(v["groups"].is_object() || v["groups"].is_array())) {
      r.diagnosis = "planner reply must carry 'groups' as an object or array";
      return r;
    }
  } else if (expect == "designer" || expect == "srt") {
    auto norm = normalize_object_list(v);
    if (!norm) {
      r.diagnosis = "expected a JSON array (or dict) of per-object entries";
      return r;
    }
    v = *norm;
    for (const auto& e : v) {
      if (!e.is_object() || !e.contains("object_name") ||
          !e.contains("position") || !e.contains("rotation")) {
        r.diagnosis =
            "each entry needs object_name, position {X, Y} and rotation";
        return r;
      }
    }
  } else if (expect == "evaluator_semantic") {
    if (!v.is_array()) {
      r.diagnosis = "expected a JSON array of answers";
      return r;
    }
    for (const auto& e : v) {
      if (!e.is_object() || !e.contains("answer") || !e["answer"].is_string()) {
        r.diagnosis = "each answer entry needs a string 'answer' field";
        return r;
      }
      std::string a = lower(trim(e["answer"].get<std::string>()));
      if (a != "yes" && a != "no") {
        r.diagnosis = "answers must be exactly 'yes' or 'no', got '" +
                      e["answer"].get<std::string>() + "'";
        return r;
      }
    }
  }
  r.ok = true;
  r.value = v;
  return r;
}

std::string default_prompt_dir() {
#ifdef DISCO_PROMPT_DIR
  return DISCO_PROMPT_DIR;
#else
  return "prompts";
#endif
}

PromptLibrary load_prompts(const std::string& dir) {
  PromptLibrary p;
  p.planner = read_file(dir + "/planner.txt");
  p.designer = read_file(dir + "/designer.txt");
  p.evaluator_semantic = read_file(dir + "/evaluator_semantic.txt");
  p.evaluator_physical = read_file(dir + "/evaluator_physical.txt");
  p.srt = read_file(dir + "/srt.txt");
  return p;
}

std::string fill_template(const std::string& tmpl,
                          const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t end = tmpl.find('}', i);
      if (end != std::string::npos) {
        std::string key = tmpl.substr(i + 1, end - i - 1);
        auto it = values.find(key);
        if (it != values.end()) {
          out += it->second;
          i = end + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

namespace {

std::vector<std::pair<RelationKind, std::string>> parse_relation_entries(
    const json& rel_pos, const json& rel_obj,
    const std::vector<std::string>& known_names, std::string& err) {
  std::vector<std::pair<RelationKind, std::string>> out;
  // The six phrases, longest first so "in front of" wins over "near".
  static const std::vector<std::pair<std::string, RelationKind>> phrases = {
      {"aligned with", RelationKind::AlignedWith},
      {"in front of", RelationKind::InFrontOf},
      {"side of", RelationKind::SideOf},
      {"opposite", RelationKind::Opposite},
      {"around", RelationKind::Around},
      {"near", RelationKind::Near},
  };

  auto parse_string = [&](const std::string& raw) -> bool {
    std::string s = trim(raw);
    for (const auto& [phrase, kind] : phrases) {
      std::size_t pos = lower(s).find(phrase);
      if (pos == std::string::npos) continue;
      std::string rest = trim(s.substr(pos + phrase.size()));
      if (rest.rfind("the ", 0) == 0) rest = trim(rest.substr(4));
      if (rest.empty()) return false;
      if (std::find(known_names.begin(), known_names.end(), rest) ==
          known_names.end()) {
        err = "relation references unknown object '" + rest + "'";
        return false;
      }
      out.emplace_back(kind, rest);
      return true;
    }
    return false;
  };

  auto parse_value = [&](const json& v, auto&& self) -> void {
    if (v.is_null()) return;
    if (v.is_string()) {
      parse_string(v.get<std::string>());
      return;
    }
    if (v.is_array()) {
      for (const auto& e : v) self(e, self);
      return;
    }
    if (v.is_object()) {
      if (v.contains("relation") && v.contains("target")) {
        try {
          RelationKind k = relation_from_string(v["relation"].get<std::string>());
          std::string t = v["target"].get<std::string>();
          if (std::find(known_names.begin(), known_names.end(), t) ==
              known_names.end()) {
            err = "relation references unknown object '" + t + "'";
            return;
          }
          out.emplace_back(k, t);
        } catch (const std::exception& e) {
          err = e.what();
        }
        return;
      }
      for (auto& [k, val] : v.items()) {
        try {
          RelationKind kind = relation_from_string(lower(k));
          if (val.is_string()) {
            std::string t = val.template get<std::string>();
            if (std::find(known_names.begin(), known_names.end(), t) !=
                known_names.end())
              out.emplace_back(kind, t);
            else
              err = "relation references unknown object '" + t + "'";
          }
        } catch (const std::exception&) {
          // Not a relation-keyed entry; ignore.
        }
      }
    }
  };

  parse_value(rel_pos, parse_value);
  if (out.empty()) parse_value(rel_obj, parse_value);
  return out;
}

int natural_group_rank(const std::string& key) {
  std::size_t i = key.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(key[i - 1]))) --i;
  if (i == key.size()) return 0;
  return std::stoi(key.substr(i));
}

}  // namespace

PlanResult plan(const Scene& scene, const AgentContext& ctx, AgentBackend& backend) {
  if (scene.assets.empty()) throw std::invalid_argument("plan: empty asset list");

  std::vector<std::string> names;
  json name_list = json::array();
  for (const auto& a : scene.assets) {
    names.push_back(a.object_name);
    name_list.push_back(a.object_name);
  }

  AgentRequest req;
  req.expect = "planner";
  req.messages.push_back(
      {"user",
       fill_template(ctx.prompts.planner, {{"room_type", scene.room_type},
                                           {"object_names", name_list.dump()}}),
       ""});
  json assets = json::array();
  for (const auto& a : scene.assets)
    assets.push_back({{"object_name", a.object_name},
                      {"size", {{"x", a.footprint_w}, {"y", a.footprint_d},
                                {"z", a.height}}}});
  req.task = {{"room_type", scene.room_type},
              {"room", {{"width", scene.room.width}, {"depth", scene.room.depth}}},
              {"assets", assets}};

  PlanResult result;

  json value = call_with_repair(backend, req, ctx, [&](const json& v) -> std::string {
    // Constraint cover.
    for (const auto& n : names)
      if (!v["constraints"].contains(n))
        return "constraints missing for object '" + n + "'";
    // Group partition.
    std::vector<std::vector<std::string>> groups;
    if (v["groups"].is_array()) {
      for (const auto& g : v["groups"])
        groups.push_back(g.get<std::vector<std::string>>());
    } else {
      std::vector<std::string> keys;
      for (auto& [k, val] : v["groups"].items()) keys.push_back(k);
      std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        int ra = natural_group_rank(a), rb = natural_group_rank(b);
        if (ra != rb) return ra < rb;
        return a < b;
      });
      for (const auto& k : keys)
        groups.push_back(v["groups"][k].get<std::vector<std::string>>());
    }
    std::vector<std::string> seen;
    for (const auto& g : groups) {
      for (const auto& n : g) {
        if (std::find(names.begin(), names.end(), n) == names.end())
          return "group member '" + n + "' is not a scene asset";
        if (std::find(seen.begin(), seen.end(), n) != seen.end())
          return "object '" + n + "' appears in more than one group";
        seen.push_back(n);
      }
    }
    if (seen.size() != names.size())
      return "groups do not cover every asset";
    // Constraint fields.
    for (const auto& n : names) {
      const json& c = v["constraints"][n];
      if (!c.is_object()) return "constraints for '" + n + "' must be an object";
      bool wall = c.value("against_wall", false);
      bool has_rot = c.contains("rotation") && !c["rotation"].is_null();
      if (wall && has_rot)
        return "object '" + n + "' is against the wall, so its rotation must be null";
      if (has_rot) {
        std::string t = c["rotation"].get<std::string>();
        if (std::find(names.begin(), names.end(), t) == names.end())
          return "rotation target '" + t + "' is not a scene asset";
      }
    }
    return "";
  });

  // Build the typed result from the validated reply.
  for (const auto& n : names) {
    const json& c = value["constraints"][n];
    ConstraintSet cs;
    cs.subject = n;
    cs.against_wall = c.value("against_wall", false);
    std::string err;
    cs.relations = parse_relation_entries(
        c.contains("relative_position") ? c["relative_position"] : json(nullptr),
        c.contains("relative_object") ? c["relative_object"] : json(nullptr),
        names, err);
    if (c.contains("rotation") && !c["rotation"].is_null())
      cs.facing = c["rotation"].get<std::string>();
    result.constraints.push_back(std::move(cs));
  }
  if (value["groups"].is_array()) {
    for (const auto& g : value["groups"])
      result.plan.groups.push_back(g.get<std::vector<std::string>>());
  } else {
    std::vector<std::string> keys;
    for (auto& [k, val] : value["groups"].items()) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
      int ra = natural_group_rank(a), rb = natural_group_rank(b);
      if (ra != rb) return ra < rb;
      return a < b;
    });
    for (const auto& k : keys)
      result.plan.groups.push_back(value["groups"][k].get<std::vector<std::string>>());
  }
  return result;
}

std::map<std::string, Pose> design(const Scene& scene,
                                   const std::vector<std::string>& group,
                                   const std::vector<ConstraintSet>& constraints,
                                   const Layout& current_layout,
                                   const std::string& render_png_base64,
                                   const AgentContext& ctx, AgentBackend& backend) {
  if (group.empty()) throw std::invalid_argument("design: empty group");

  json group_json = json::array();
  for (const auto& n : group) group_json.push_back(n);

  std::ostringstream constraint_lines;
  for (const auto& c : constraints) {
    if (std::find(group.begin(), group.end(), c.subject) == group.end()) continue;
    constraint_lines << "- " << c.subject << ": against_wall="
                     << (c.against_wall ? "true" : "false");
    for (const auto& [kind, target] : c.relations)
      constraint_lines << "; " << relation_phrase(kind) << " " << target;
    if (c.facing) constraint_lines << "; facing " << *c.facing;
    constraint_lines << "\n";
  }

  AgentRequest req;
  req.expect = "designer";
  req.messages.push_back(
      {"user",
       fill_template(ctx.prompts.designer,
                     {{"room_type", scene.room_type},
                      {"room_size", room_size_text(scene.room)},
                      {"arranged_objects", layout_to_json(current_layout)["objects"].dump()},
                      {"current_group", group_json.dump()},
                      {"constraint_strings", constraint_lines.str()}}),
       render_png_base64});

  json group_assets = json::array();
  for (const auto& n : group) {
    const AssetSpec& a = scene.asset(n);
    group_assets.push_back({{"object_name", a.object_name},
                            {"size", {{"x", a.footprint_w}, {"y", a.footprint_d},
                                      {"z", a.height}}}});
  }
  req.task = {{"room", {{"width", scene.room.width}, {"depth", scene.room.depth}}},
              {"layout", layout_to_json(current_layout)},
              {"group", group_json},
              {"group_assets", group_assets},
              {"constraints", constraints_to_json(constraints)},
              {"spacing", ctx.grid_spacing}};

  json value = call_with_repair(backend, req, ctx, [&](const json& v) -> std::string {
    std::vector<std::string> seen;
    for (const auto& e : v) {
      std::string n = e["object_name"].get<std::string>();
      if (std::find(group.begin(), group.end(), n) == group.end())
        return "object '" + n + "' is not in the current group";
      if (std::find(seen.begin(), seen.end(), n) != seen.end())
        return "object '" + n + "' listed twice";
      seen.push_back(n);
      if (!e["position"].is_object() || !e["position"].contains("X") ||
          !e["position"].contains("Y") || !e["position"]["X"].is_number() ||
          !e["position"]["Y"].is_number())
        return "position for '" + n + "' must be {\"X\": int, \"Y\": int}";
      if (e["position"]["X"].get<double>() < 0 || e["position"]["Y"].get<double>() < 0)
        return "coordinates for '" + n + "' must be positive";
      if (!e["rotation"].is_number_integer() ||
          !valid_theta(e["rotation"].get<int>()))
        return "rotation for '" + n + "' must be one of 0, 90, 180, 270";
    }
    if (seen.size() != group.size()) return "reply does not place every group member";
    return "";
  });

  std::map<std::string, Pose> poses;
  for (const auto& e : value) {
    Pose p;
    p.x = e["position"]["X"].get<double>();
    p.y = e["position"]["Y"].get<double>();
    p.theta = e["rotation"].get<int>();
    poses[e["object_name"].get<std::string>()] = p;
  }
  return poses;
}

EvalVerdict evaluate(const Scene& scene, const Layout& layout,
                     const std::string& render_png_base64,
                     const std::vector<ConstraintSet>& constraints,
                     const AgentContext& ctx, AgentBackend& backend) {
  EvalVerdict verdict;
  std::vector<QuestionRef> questions = build_questions(layout, constraints);

  json objects_in_image = json::array();
  for (const auto& [name, obj] : layout.items()) objects_in_image.push_back(name);

  if (!questions.empty()) {
    std::ostringstream qtext;
    for (std::size_t i = 0; i < questions.size(); ++i)
      qtext << (i + 1) << ". " << questions[i].text << "\n";

    AgentRequest req;
    req.expect = "evaluator_semantic";
    req.messages.push_back(
        {"user",
         fill_template(ctx.prompts.evaluator_semantic,
                       {{"room_type", scene.room_type},
                        {"room_size", room_size_text(scene.room)},
                        {"objects_in_image", objects_in_image.dump()},
                        {"questions", qtext.str()}}),
         render_png_base64});
    req.task = {{"layout", layout_to_json(layout)},
                {"constraints", constraints_to_json(constraints)},
                {"questions", task_questions(questions)},
                {"params", {{"near_gap_max", ctx.params.near_gap_max},
                            {"align_tol", ctx.params.align_tol},
                            {"facing_cone_deg", ctx.params.facing_cone_deg},
                            {"front_depth_max", ctx.params.front_depth_max}}}};

    json answers = call_with_repair(backend, req, ctx, [&](const json& v) -> std::string {
      if (v.size() != questions.size()) {
        return "expected " + std::to_string(questions.size()) + " answers, got " +
               std::to_string(v.size());
      }
      return "";
    });

    for (std::size_t i = 0; i < questions.size(); ++i) {
      std::string a = lower(trim(answers[i]["answer"].get<std::string>()));
      if (a != "no") continue;
      const QuestionRef& q = questions[i];
      FailedConstraint f;
      f.subject = q.subject;
      f.kind = q.kind;
      f.targets = {q.target};
      f.feedback = q.kind ? relation_feedback(q.subject, *q.kind, q.target)
                          : facing_feedback(q.subject, q.target);
      f.reason = answers[i].value("reason", "");
      verdict.failed_semantic.push_back(std::move(f));
    }
    verdict.s_sem = !verdict.failed_semantic.empty();
  }

  {
    AgentRequest req;
    req.expect = "evaluator_physical";
    req.messages.push_back(
        {"user",
         fill_template(ctx.prompts.evaluator_physical,
                       {{"room_type", scene.room_type}}),
         render_png_base64});
    json wall_flags = json::object();
    for (const auto& c : constraints) wall_flags[c.subject] = c.against_wall;
    req.task = {{"layout", layout_to_json(layout)}, {"against_wall", wall_flags}};

    json v = call_with_repair(backend, req, ctx,
                              [](const json&) { return std::string(); });
    verdict.s_phy = v.get<bool>();
  }
  return verdict;
}

Layout semantic_refine(const Scene& scene, const Layout& layout,
                       const std::vector<FailedConstraint>& failed,
                       const std::vector<ConstraintSet>& constraints,
                       const AgentContext& ctx, AgentBackend& backend) {
  if (failed.empty())
    throw std::invalid_argument("semantic_refine: empty failed-constraint list");

  std::vector<std::string> implicated;
  for (const auto& f : failed) {
    implicated.push_back(f.subject);
    for (const auto& t : f.targets) implicated.push_back(t);
  }

  std::ostringstream result_text;
  for (std::size_t i = 0; i < failed.size(); ++i) {
    if (i) result_text << "; ";
    result_text << failed[i].feedback;
  }

  json failed_json = json::array();
  for (const auto& f : failed) {
    failed_json.push_back({{"subject", f.subject},
                           {"kind", f.kind ? json(relation_to_string(*f.kind)) : json(nullptr)},
                           {"targets", f.targets},
                           {"feedback", f.feedback}});
  }

  AgentRequest req;
  req.expect = "srt";
  req.messages.push_back(
      {"user",
       fill_template(ctx.prompts.srt,
                     {{"room_type", scene.room_type},
                      {"room_size", room_size_text(scene.room)},
                      {"objects_in_image", layout_to_json(layout)["objects"].dump()},
                      {"result", result_text.str()}}),
       ""});
  req.task = {{"room", {{"width", scene.room.width}, {"depth", scene.room.depth}}},
              {"layout", layout_to_json(layout)},
              {"failed", failed_json},
              {"constraints", constraints_to_json(constraints)},
              {"spacing", ctx.grid_spacing},
              {"params", {{"near_gap_max", ctx.params.near_gap_max},
                          {"align_tol", ctx.params.align_tol},
                          {"facing_cone_deg", ctx.params.facing_cone_deg},
                          {"front_depth_max", ctx.params.front_depth_max}}}};

  json value = call_with_repair(backend, req, ctx, [&](const json& v) -> std::string {
    for (const auto& e : v) {
      std::string n = e["object_name"].get<std::string>();
      if (std::find(implicated.begin(), implicated.end(), n) == implicated.end())
        return "object '" + n + "' is not implicated by any failed constraint";
      if (!layout.contains(n)) return "object '" + n + "' is not placed";
      if (!e["rotation"].is_number_integer() ||
          !valid_theta(e["rotation"].get<int>()))
        return "rotation for '" + n + "' must be one of 0, 90, 180, 270";
      if (e["position"]["X"].get<double>() < 0 || e["position"]["Y"].get<double>() < 0)
        return "coordinates for '" + n + "' must be positive";
    }
    return "";
  });

  Layout out = layout;
  for (const auto& e : value) {
    Pose p;
    p.x = e["position"]["X"].get<double>();
    p.y = e["position"]["Y"].get<double>();
    p.theta = e["rotation"].get<int>();
    out.set_pose(e["object_name"].get<std::string>(), p);
  }
  return out;
}

}  // namespace disco
