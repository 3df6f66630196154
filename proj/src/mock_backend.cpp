#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "disco/agents.hpp"
#include "disco/geometry.hpp"
#include "disco/grid_refine.hpp"
#include "disco/relations.hpp"

// Deterministic offline heuristics standing in for the VLM agents. They are
// scaffolding for tests and offline runs: replies go through the same JSON
// parsing and validation as remote-model output.

namespace disco {

namespace {

std::string category_of(const std::string& name) {
  std::size_t dash = name.rfind('-');
  if (dash == std::string::npos) return name;
  for (std::size_t i = dash + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  if (dash + 1 == name.size()) return name;
  return name.substr(0, dash);
}

int index_of(const std::string& name) {
  std::size_t dash = name.rfind('-');
  if (dash == std::string::npos || dash + 1 == name.size()) return 0;
  for (std::size_t i = dash + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
  return std::stoi(name.substr(dash + 1));
}

const std::set<std::string>& wall_categories() {
  static const std::set<std::string> s = {
      "bed",          "bunk bed",       "crib",          "sofa",
      "wardrobe",     "dresser",        "cabinet",       "bookshelf",
      "desk",         "teacher desk",   "tv stand",      "sideboard",
      "floor lamp",   "plant stand",    "bathtub",       "toilet",
      "sink",         "vanity",         "shower",        "towel rack",
      "washing machine", "refrigerator", "stove",        "kitchen counter",
      "cupboard",     "buffet counter", "piano",         "whiteboard",
      "blackboard",   "locker",         "treadmill",     "weight rack",
      "dumbbell rack", "exercise bike", "changing table", "mirror",
  };
  return s;
}

struct RelationRule {
  RelationKind kind;
  std::vector<std::string> target_categories;
  bool face;
};

const std::map<std::string, RelationRule>& relation_rules() {
  static const std::map<std::string, RelationRule> rules = {
      {"chair",
       {RelationKind::Around, {"dining table", "table", "student desk", "desk"}, true}},
      {"high chair", {RelationKind::Around, {"dining table", "table"}, true}},
      {"armchair", {RelationKind::Near, {"coffee table", "sofa"}, true}},
      {"stool", {RelationKind::Around, {"kitchen island", "kitchen counter", "table"}, true}},
      {"bar stool", {RelationKind::Around, {"kitchen island", "buffet counter", "table"}, true}},
      {"bench", {RelationKind::Near, {"dining table", "table"}, true}},
      {"nightstand", {RelationKind::SideOf, {"bed"}, false}},
      {"coffee table", {RelationKind::InFrontOf, {"sofa"}, false}},
      {"tv stand", {RelationKind::Opposite, {"sofa"}, false}},
      {"side table", {RelationKind::SideOf, {"sofa", "armchair", "bed"}, false}},
      {"floor lamp", {RelationKind::Near, {"sofa", "armchair", "bed"}, false}},
      {"exercise bike", {RelationKind::AlignedWith, {"treadmill"}, false}},
      {"yoga mat", {RelationKind::Near, {"treadmill", "weight rack"}, false}},
      {"toy box", {RelationKind::Near, {"bed", "crib"}, false}},
      {"rocking chair", {RelationKind::Near, {"crib"}, true}},
      {"bar cart", {RelationKind::Near, {"dining table", "buffet counter"}, false}},
      {"laundry basket", {RelationKind::Near, {"washing machine", "bathtub"}, false}},
      {"student desk", {RelationKind::AlignedWith, {"student desk"}, false}},
      {"teacher desk", {RelationKind::Opposite, {"blackboard", "whiteboard"}, false}},
  };
  return rules;
}

std::string fenced(const json& v) { return "```json\n" + v.dump(2) + "\n```"; }

Pose rounded(const Pose& p) {
  return {static_cast<double>(std::llround(p.x)),
          static_cast<double>(std::llround(p.y)), p.theta};
}

/// 90-degree multiple whose facing direction best points from `from` at `to`.
int snap_theta(const Vec2& from, const Vec2& to) {
  double dx = to.x - from.x, dy = to.y - from.y;
  if (dx == 0 && dy == 0) return 0;
  int best = 0;
  double best_dot = -1e300;
  for (int t : {0, 90, 180, 270}) {
    Vec2 f = facing_vector(t);
    double d = f.x * dx + f.y * dy;
    if (d > best_dot) {
      best_dot = d;
      best = t;
    }
  }
  return best;
}

json pose_entry(const AssetSpec& a, const Pose& p) {
  return {{"object_name", a.object_name},
          {"size", {{"x", a.footprint_w}, {"y", a.footprint_d}, {"z", a.height}}},
          {"position", {{"X", static_cast<long long>(std::llround(p.x))},
                        {"Y", static_cast<long long>(std::llround(p.y))}}},
          {"rotation", p.theta}};
}

std::vector<ConstraintSet> constraints_from_task(const json& task) {
  std::vector<ConstraintSet> cs;
  for (const auto& c : task.at("constraints")) cs.push_back(constraint_from_json(c));
  return cs;
}

RelationParams params_from_task(const json& task) {
  RelationParams p;
  if (!task.contains("params")) return p;
  const json& j = task["params"];
  p.near_gap_max = j.value("near_gap_max", p.near_gap_max);
  p.align_tol = j.value("align_tol", p.align_tol);
  p.facing_cone_deg = j.value("facing_cone_deg", p.facing_cone_deg);
  p.front_depth_max = j.value("front_depth_max", p.front_depth_max);
  return p;
}

std::vector<std::string> around_co_members(const std::vector<ConstraintSet>& cs,
                                           const std::string& subject,
                                           const std::string& target) {
  std::vector<std::string> co;
  for (const auto& c : cs) {
    if (c.subject == subject) continue;
    for (const auto& [k, t] : c.relations)
      if (k == RelationKind::Around && t == target) co.push_back(c.subject);
  }
  return co;
}

// ---------------------------------------------------------------------------
// Planner

std::string mock_plan(const json& task) {
  struct AssetInfo {
    std::string name;
    std::string category;
    double area;
  };
  std::vector<AssetInfo> assets;
  std::vector<std::string> names;
  for (const auto& a : task.at("assets")) {
    std::string n = a.at("object_name").get<std::string>();
    assets.push_back({n, category_of(n),
                      a.at("size").at("x").get<double>() *
                          a.at("size").at("y").get<double>()});
    names.push_back(n);
  }

  auto find_target = [&](const std::string& subject,
                         const std::vector<std::string>& categories)
      -> std::optional<std::string> {
    int idx = index_of(subject);
    for (const auto& cat : categories) {
      std::optional<std::string> first;
      for (const auto& a : assets) {
        if (a.category != cat || a.name == subject) continue;
        if (!first) first = a.name;
        if (index_of(a.name) == idx) return a.name;
      }
      if (first) return first;
    }
    return std::nullopt;
  };

  json constraints = json::object();
  std::map<std::string, std::string> relation_target;
  for (const auto& a : assets) {
    bool wall = wall_categories().count(a.category) > 0;
    json c = {{"against_wall", wall},
              {"relative_position", nullptr},
              {"relative_object", nullptr},
              {"rotation", nullptr}};
    auto rule = relation_rules().find(a.category);
    if (rule != relation_rules().end()) {
      auto target = find_target(a.name, rule->second.target_categories);
      if (target) {
        c["relative_position"] =
            json::array({relation_phrase(rule->second.kind) + " " + *target});
        c["relative_object"] = json::array({*target});
        relation_target[a.name] = *target;
        if (rule->second.face && !wall) c["rotation"] = *target;
      }
    }
    constraints[a.name] = c;
  }

  // Group by relation links plus same-category symmetry, then order groups
  // by their largest footprint so room-defining assets are placed first.
  std::map<std::string, int> comp;
  int n = static_cast<int>(assets.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  auto idx_of_name = [&](const std::string& nm) {
    for (int i = 0; i < n; ++i)
      if (assets[i].name == nm) return i;
    return -1;
  };
  for (int i = 0; i < n; ++i) {
    auto it = relation_target.find(assets[i].name);
    if (it != relation_target.end()) unite(i, idx_of_name(it->second));
    for (int j = 0; j < i; ++j)
      if (assets[j].category == assets[i].category) unite(i, j);
  }

  struct Group {
    std::vector<std::string> members;
    double max_area = 0;
  };
  std::map<int, Group> by_root;
  for (int i = 0; i < n; ++i) {
    Group& g = by_root[find(i)];
    g.members.push_back(assets[i].name);
    g.max_area = std::max(g.max_area, assets[i].area);
  }
  std::vector<Group> groups;
  for (auto& [root, g] : by_root) groups.push_back(std::move(g));
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    if (a.max_area != b.max_area) return a.max_area > b.max_area;
    return a.members.front() < b.members.front();
  });

  json groups_json = json::object();
  for (std::size_t i = 0; i < groups.size(); ++i)
    groups_json["group" + std::to_string(i + 1)] = groups[i].members;

  return fenced({{"constraints", constraints}, {"groups", groups_json}});
}

// ---------------------------------------------------------------------------
// Designer

struct DesignWorld {
  Room room;
  Layout layout;  // live working layout
  std::vector<ConstraintSet> constraints;
  double spacing = 10;

  const ConstraintSet* constraint_for(const std::string& name) const {
    for (const auto& c : constraints)
      if (c.subject == name) return &c;
    return nullptr;
  }

  bool placeable(const AssetSpec& a, const Pose& p) const {
    return is_valid_placement(a, p, layout, room, false);
  }

  std::vector<Vec2> interior_points() const {
    std::vector<Vec2> pts;
    for (double y = spacing; y < room.depth - 1e-9; y += spacing)
      for (double x = spacing; x < room.width - 1e-9; x += spacing)
        pts.push_back({x, y});
    return pts;
  }
};

bool predicate_holds(const DesignWorld& w, const AssetSpec& a, const Pose& p,
                     RelationKind kind, const std::string& target,
                     const RelationParams& params) {
  Layout probe = w.layout;
  if (probe.contains(a.object_name)) probe.remove(a.object_name);
  probe.add(a, p);
  std::vector<std::string> co =
      kind == RelationKind::Around
          ? around_co_members(w.constraints, a.object_name, target)
          : std::vector<std::string>{};
  return eval_relation(kind, a.object_name, target, probe, params, co);
}

std::optional<Pose> place_against_wall(const DesignWorld& w, const AssetSpec& a,
                                       const ConstraintSet* c,
                                       const RelationParams& params) {
  struct Cand {
    WallId wall;
    Pose pose;
    double t;  // along-wall coordinate, for determinism
  };
  std::vector<Cand> valid;
  std::map<WallId, std::vector<int>> run_ok;  // per wall, validity bitmap

  for (WallId wall : kWalls) {
    double extent = (wall == WallId::Bottom || wall == WallId::Top)
                        ? w.room.width
                        : w.room.depth;
    int theta = wall2rotation(wall);
    for (double t = 0; t <= extent + 1e-9; t += w.spacing) {
      Vec2 g;
      switch (wall) {
        case WallId::Bottom: g = {t, 0}; break;
        case WallId::Top: g = {t, w.room.depth}; break;
        case WallId::Left: g = {0, t}; break;
        case WallId::Right: g = {w.room.width, t}; break;
      }
      Pose p = rounded(pull_to_wall(g, a, Pose{0, 0, theta}));
      bool ok = w.placeable(a, p);
      run_ok[wall].push_back(ok ? 1 : 0);
      if (ok) valid.push_back({wall, p, t});
    }
  }
  if (valid.empty()) return std::nullopt;

  // A relation to an already-placed target steers the wall choice.
  if (c) {
    for (const auto& [kind, target] : c->relations) {
      if (!w.layout.contains(target)) continue;
      const PlacedObject& tgt = w.layout.at(target);
      const Cand* best = nullptr;
      double best_d = 0;
      bool best_pred = false;
      for (const auto& cand : valid) {
        bool pred = predicate_holds(w, a, cand.pose, kind, target, params);
        double d = std::hypot(cand.pose.x - tgt.pose.x, cand.pose.y - tgt.pose.y);
        if (!best || (pred && !best_pred) ||
            (pred == best_pred && d < best_d - 1e-12)) {
          best = &cand;
          best_d = d;
          best_pred = pred;
        }
      }
      return best->pose;
    }
  }

  // Otherwise take the middle of the longest free run over all walls.
  WallId best_wall = WallId::Bottom;
  int best_len = -1, best_start = 0;
  for (WallId wall : kWalls) {
    const auto& bits = run_ok[wall];
    int i = 0, m = static_cast<int>(bits.size());
    while (i < m) {
      if (!bits[i]) {
        ++i;
        continue;
      }
      int j = i;
      while (j < m && bits[j]) ++j;
      if (j - i > best_len) {
        best_len = j - i;
        best_wall = wall;
        best_start = i;
      }
      i = j;
    }
  }
  int mid = best_start + (best_len - 1) / 2;
  for (const auto& cand : valid)
    if (cand.wall == best_wall &&
        std::abs(cand.t - mid * w.spacing) < w.spacing / 2)
      return cand.pose;
  return valid.front().pose;
}

/// Rotation that makes the relation satisfiable from grid point `g`:
/// facing constraints win, otherwise the kind dictates the orientation.
int relation_theta(const Vec2& g, RelationKind kind, const PlacedObject& tgt,
                   const std::optional<std::string>& facing, const Layout& layout) {
  if (facing && layout.contains(*facing)) {
    const Pose& fp = layout.at(*facing).pose;
    return snap_theta(g, {fp.x, fp.y});
  }
  switch (kind) {
    case RelationKind::InFrontOf:
      return snap_theta(g, {tgt.pose.x, tgt.pose.y});
    case RelationKind::Opposite:
      return (tgt.pose.theta + 180) % 360;
    case RelationKind::AlignedWith:
      return tgt.pose.theta;
    default:
      return 0;
  }
}

std::optional<Pose> place_by_relation(const DesignWorld& w, const AssetSpec& a,
                                      const ConstraintSet& c,
                                      const RelationParams& params) {
  for (const auto& [kind, target] : c.relations) {
    if (!w.layout.contains(target)) continue;
    const PlacedObject& tgt = w.layout.at(target);
    Vec2 tc{tgt.pose.x, tgt.pose.y};
    std::vector<Vec2> pts = w.interior_points();
    std::sort(pts.begin(), pts.end(), [&](const Vec2& l, const Vec2& r) {
      double dl = std::hypot(l.x - tc.x, l.y - tc.y);
      double dr = std::hypot(r.x - tc.x, r.y - tc.y);
      if (dl != dr) return dl < dr;
      if (l.y != r.y) return l.y < r.y;
      return l.x < r.x;
    });
    std::optional<Pose> fallback;
    for (const Vec2& g : pts) {
      int theta = relation_theta(g, kind, tgt, c.facing, w.layout);
      Pose p = rounded({g.x, g.y, theta});
      if (!w.placeable(a, p)) continue;
      if (predicate_holds(w, a, p, kind, target, params)) return p;
      if (!fallback) fallback = p;
    }
    if (fallback) return fallback;
  }
  return std::nullopt;
}

std::optional<Pose> place_centered(const DesignWorld& w, const AssetSpec& a,
                                   const ConstraintSet* c) {
  Vec2 center{w.room.width / 2, w.room.depth / 2};
  std::vector<Vec2> pts = w.interior_points();
  pts.push_back(center);
  std::sort(pts.begin(), pts.end(), [&](const Vec2& l, const Vec2& r) {
    double dl = std::hypot(l.x - center.x, l.y - center.y);
    double dr = std::hypot(r.x - center.x, r.y - center.y);
    if (dl != dr) return dl < dr;
    if (l.y != r.y) return l.y < r.y;
    return l.x < r.x;
  });
  for (const Vec2& g : pts) {
    int theta = 0;
    if (c && c->facing && w.layout.contains(*c->facing))
      theta = snap_theta(g, {w.layout.at(*c->facing).pose.x,
                             w.layout.at(*c->facing).pose.y});
    Pose p = rounded({g.x, g.y, theta});
    if (w.placeable(a, p)) return p;
  }
  return std::nullopt;
}

std::string mock_design(const json& task) {
  DesignWorld w;
  w.room = {task.at("room").at("width").get<double>(),
            task.at("room").at("depth").get<double>()};
  w.layout = layout_from_json(task.at("layout"));
  w.constraints = constraints_from_task(task);
  w.spacing = task.value("spacing", 10.0);
  RelationParams params = params_from_task(task);

  std::vector<AssetSpec> group;
  for (const auto& a : task.at("group_assets")) {
    AssetSpec spec;
    spec.object_name = a.at("object_name").get<std::string>();
    spec.footprint_w = a.at("size").at("x").get<double>();
    spec.footprint_d = a.at("size").at("y").get<double>();
    spec.height = a.at("size").value("z", 0.0);
    group.push_back(spec);
  }

  std::map<std::string, Pose> placed;
  std::vector<AssetSpec> pending = group;

  // Place members whose relation targets are already in the layout first;
  // room-defining wall or free-standing members unblock the rest.
  while (!pending.empty()) {
    std::size_t pick = pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const ConstraintSet* c = w.constraint_for(pending[i].object_name);
      bool ready = true;
      if (c)
        for (const auto& [kind, target] : c->relations)
          if (!w.layout.contains(target) &&
              std::find_if(pending.begin(), pending.end(), [&](const AssetSpec& p) {
                return p.object_name == target;
              }) != pending.end())
            ready = false;
      if (ready) {
        pick = i;
        break;
      }
    }
    if (pick == pending.size()) pick = 0;  // relation cycle; force progress

    AssetSpec a = pending[pick];
    pending.erase(pending.begin() + pick);
    const ConstraintSet* c = w.constraint_for(a.object_name);

    std::optional<Pose> pose;
    if (c && c->against_wall) pose = place_against_wall(w, a, c, params);
    if (!pose && c && !c->relations.empty()) pose = place_by_relation(w, a, *c, params);
    if (!pose) pose = place_centered(w, a, c);
    if (!pose) pose = Pose{w.room.width / 2, w.room.depth / 2, 0};  // last resort

    placed[a.object_name] = *pose;
    w.layout.add(a, *pose);
  }

  json reply = json::array();
  for (const auto& a : group) reply.push_back(pose_entry(a, placed.at(a.object_name)));
  return fenced(reply);
}

// ---------------------------------------------------------------------------
// Evaluator

std::string mock_eval_semantic(const json& task) {
  Layout layout = layout_from_json(task.at("layout"));
  std::vector<ConstraintSet> constraints = constraints_from_task(task);
  RelationParams params = params_from_task(task);

  json reply = json::array();
  for (const auto& q : task.at("questions")) {
    std::string subject = q.at("subject").get<std::string>();
    std::string target = q.at("target").get<std::string>();
    bool ok;
    if (q.at("kind").is_null()) {
      ok = eval_facing(subject, target, layout, params);
    } else {
      RelationKind kind = relation_from_string(q.at("kind").get<std::string>());
      ok = eval_relation(kind, subject, target, layout, params,
                         around_co_members(constraints, subject, target));
    }
    reply.push_back({{"question", q.at("question")},
                     {"objects", json::array({subject, target})},
                     {"reason", ok ? "the placement satisfies the constraint"
                                   : "the placement violates the constraint"},
                     {"answer", ok ? "yes" : "no"}});
  }
  return fenced(reply);
}

std::string mock_eval_physical(const json& task) {
  Layout layout = layout_from_json(task.at("layout"));
  const json& flags = task.at("against_wall");
  for (const auto& [name, obj] : layout.items()) {
    bool wall = flags.contains(name) && flags[name].get<bool>();
    if (!is_valid_placement(obj.asset, obj.pose, layout, layout.room(), wall))
      return "True";
  }
  return "False";
}

// ---------------------------------------------------------------------------
// Semantic Refinement Tool

std::string mock_srt(const json& task) {
  Room room{task.at("room").at("width").get<double>(),
            task.at("room").at("depth").get<double>()};
  Layout layout = layout_from_json(task.at("layout"));
  std::vector<ConstraintSet> constraints = constraints_from_task(task);
  RelationParams params = params_from_task(task);
  double spacing = task.value("spacing", 10.0);

  DesignWorld w{room, layout, constraints, spacing};
  std::set<std::string> modified;

  for (const auto& f : task.at("failed")) {
    std::string subject = f.at("subject").get<std::string>();
    if (!w.layout.contains(subject)) continue;
    std::string target = f.at("targets").at(0).get<std::string>();
    if (!w.layout.contains(target)) continue;
    const PlacedObject& s = w.layout.at(subject);
    const PlacedObject& t = w.layout.at(target);

    if (f.at("kind").is_null()) {
      // Facing: the minimal fix is a rotation snap, position unchanged.
      Pose p = s.pose;
      p.theta = snap_theta({s.pose.x, s.pose.y}, {t.pose.x, t.pose.y});
      if (p.theta != s.pose.theta) {
        w.layout.set_pose(subject, p);
        modified.insert(subject);
      }
      continue;
    }

    RelationKind kind = relation_from_string(f.at("kind").get<std::string>());
    std::vector<std::string> co = around_co_members(constraints, subject, target);
    if (eval_relation(kind, subject, target, w.layout, params, co)) continue;

    const ConstraintSet* c = w.constraint_for(subject);
    Vec2 cur{s.pose.x, s.pose.y};

    // Candidate positions: wall-flush points for wall objects, interior
    // grid points otherwise; nearest first so the adjustment is minimal.
    std::vector<Pose> cands;
    if (c && c->against_wall) {
      for (WallId wall : kWalls) {
        double extent = (wall == WallId::Bottom || wall == WallId::Top)
                            ? room.width
                            : room.depth;
        int theta = wall2rotation(wall);
        for (double tt = 0; tt <= extent + 1e-9; tt += spacing) {
          Vec2 g;
          switch (wall) {
            case WallId::Bottom: g = {tt, 0}; break;
            case WallId::Top: g = {tt, room.depth}; break;
            case WallId::Left: g = {0, tt}; break;
            case WallId::Right: g = {room.width, tt}; break;
          }
          cands.push_back(rounded(pull_to_wall(g, s.asset, Pose{0, 0, theta})));
        }
      }
    } else {
      bool free_theta = !(c && c->facing) && kind != RelationKind::InFrontOf &&
                        kind != RelationKind::Opposite &&
                        kind != RelationKind::AlignedWith;
      for (const Vec2& g : w.interior_points()) {
        int theta = free_theta
                        ? s.pose.theta
                        : relation_theta(g, kind, t, c ? c->facing : std::nullopt,
                                         w.layout);
        cands.push_back(rounded({g.x, g.y, theta}));
      }
    }
    std::sort(cands.begin(), cands.end(), [&](const Pose& l, const Pose& r) {
      double dl = std::hypot(l.x - cur.x, l.y - cur.y);
      double dr = std::hypot(r.x - cur.x, r.y - cur.y);
      if (dl != dr) return dl < dr;
      if (l.y != r.y) return l.y < r.y;
      return l.x < r.x;
    });

    const Pose* chosen = nullptr;
    const Pose* loose = nullptr;  // predicate holds but collides
    for (const Pose& p : cands) {
      if (outside_area(footprint(s.asset, p), room) > 1e-9) continue;
      if (!predicate_holds(w, s.asset, p, kind, target, params)) continue;
      if (is_valid_placement(s.asset, p, w.layout, room, false)) {
        chosen = &p;
        break;
      }
      if (!loose) loose = &p;
    }
    if (!chosen) chosen = loose;
    if (chosen && !(*chosen == s.pose)) {
      w.layout.set_pose(subject, *chosen);
      modified.insert(subject);
    }
  }

  json reply = json::array();
  for (const auto& [name, obj] : w.layout.items())
    if (modified.count(name)) reply.push_back(pose_entry(obj.asset, obj.pose));
  return fenced(reply);
}

}  // namespace

std::string MockBackend::complete(const AgentRequest& request) {
  if (request.expect == "planner") return mock_plan(request.task);
  if (request.expect == "designer") return mock_design(request.task);
  if (request.expect == "evaluator_semantic") return mock_eval_semantic(request.task);
  if (request.expect == "evaluator_physical") return mock_eval_physical(request.task);
  if (request.expect == "srt") return mock_srt(request.task);
  throw std::invalid_argument("mock backend: unknown expect '" + request.expect + "'");
}

}  // namespace disco
