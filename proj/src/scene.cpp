#include "disco/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace disco {

namespace {

const std::map<std::string, RelationKind> kRelationNames = {
    {"near", RelationKind::Near},
    {"side of", RelationKind::SideOf},
    {"side_of", RelationKind::SideOf},
    {"in front of", RelationKind::InFrontOf},
    {"in_front_of", RelationKind::InFrontOf},
    {"aligned with", RelationKind::AlignedWith},
    {"aligned_with", RelationKind::AlignedWith},
    {"opposite", RelationKind::Opposite},
    {"around", RelationKind::Around},
};

long long round_cm(double v) { return std::llround(v); }

}  // namespace

RelationKind relation_from_string(const std::string& s) {
  auto it = kRelationNames.find(s);
  if (it == kRelationNames.end())
    throw std::invalid_argument("unknown relation kind: '" + s + "'");
  return it->second;
}

std::string relation_to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Near: return "near";
    case RelationKind::SideOf: return "side_of";
    case RelationKind::InFrontOf: return "in_front_of";
    case RelationKind::AlignedWith: return "aligned_with";
    case RelationKind::Opposite: return "opposite";
    case RelationKind::Around: return "around";
  }
  throw std::logic_error("bad RelationKind");
}

std::string relation_phrase(RelationKind k) {
  switch (k) {
    case RelationKind::Near: return "near";
    case RelationKind::SideOf: return "side of";
    case RelationKind::InFrontOf: return "in front of";
    case RelationKind::AlignedWith: return "aligned with";
    case RelationKind::Opposite: return "opposite";
    case RelationKind::Around: return "around";
  }
  throw std::logic_error("bad RelationKind");
}

bool Layout::contains(const std::string& name) const {
  return find(name) != nullptr;
}

const PlacedObject* Layout::find(const std::string& name) const {
  for (const auto& [n, obj] : items_)
    if (n == name) return &obj;
  return nullptr;
}

const PlacedObject& Layout::at(const std::string& name) const {
  const PlacedObject* p = find(name);
  if (!p) throw std::out_of_range("object not placed: " + name);
  return *p;
}

void Layout::add(const AssetSpec& asset, const Pose& pose) {
  if (contains(asset.object_name))
    throw std::invalid_argument("duplicate object_name: " + asset.object_name);
  if (!valid_theta(pose.theta))
    throw std::invalid_argument("invalid theta for " + asset.object_name);
  items_.emplace_back(asset.object_name, PlacedObject{asset, pose});
}

void Layout::set_pose(const std::string& name, const Pose& pose) {
  if (!valid_theta(pose.theta))
    throw std::invalid_argument("invalid theta for " + name);
  for (auto& [n, obj] : items_) {
    if (n == name) {
      obj.pose = pose;
      return;
    }
  }
  throw std::out_of_range("object not placed: " + name);
}

void Layout::remove(const std::string& name) {
  for (auto it = items_.begin(); it != items_.end(); ++it) {
    if (it->first == name) {
      items_.erase(it);
      return;
    }
  }
  throw std::out_of_range("object not placed: " + name);
}

bool Layout::operator==(const Layout& other) const {
  if (room_.width != other.room_.width || room_.depth != other.room_.depth)
    return false;
  if (items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto& [na, a] = items_[i];
    const auto& [nb, b] = other.items_[i];
    if (na != nb || !(a.pose == b.pose)) return false;
    if (a.asset.footprint_w != b.asset.footprint_w ||
        a.asset.footprint_d != b.asset.footprint_d)
      return false;
  }
  return true;
}

Layout integrate_group(const Layout& base,
                       const std::vector<std::pair<AssetSpec, Pose>>& proposal) {
  Layout out = base;
  for (const auto& [asset, pose] : proposal) out.add(asset, pose);
  return out;
}

const AssetSpec& Scene::asset(const std::string& name) const {
  for (const auto& a : assets)
    if (a.object_name == name) return a;
  throw std::out_of_range("unknown asset: " + name);
}

Layout Scene::make_layout() const {
  Layout l(room);
  for (const auto& [name, pose] : layout) l.add(asset(name), pose);
  return l;
}

Scene parse_scene(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed scene document: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("scene document must be an object");

  Scene s;
  s.room_type = doc.value("room_type", "");
  s.prompt = doc.value("prompt", "");
  if (!doc.contains("room") || !doc["room"].is_object())
    throw std::runtime_error("scene missing 'room'");
  s.room.width = doc["room"].value("width", 0.0);
  s.room.depth = doc["room"].value("depth", 0.0);
  if (s.room.width <= 0 || s.room.depth <= 0)
    throw std::runtime_error("room dimensions must be positive");

  if (!doc.contains("assets") || !doc["assets"].is_array())
    throw std::runtime_error("scene missing 'assets'");
  for (const auto& a : doc["assets"]) {
    AssetSpec spec;
    spec.object_name = a.at("object_name").get<std::string>();
    const auto& sz = a.at("size");
    spec.footprint_w = sz.at("x").get<double>();
    spec.footprint_d = sz.at("y").get<double>();
    spec.height = sz.value("z", 0.0);
    if (spec.footprint_w <= 0 || spec.footprint_d <= 0)
      throw std::runtime_error("nonpositive footprint for " + spec.object_name);
    for (const auto& prev : s.assets)
      if (prev.object_name == spec.object_name)
        throw std::runtime_error("duplicate object_name: " + spec.object_name);
    s.assets.push_back(spec);
  }

  if (doc.contains("layout")) {
    if (!doc["layout"].is_array()) throw std::runtime_error("'layout' must be an array");
    s.has_layout = true;
    for (const auto& p : doc["layout"]) {
      std::string name = p.at("object_name").get<std::string>();
      Pose pose;
      pose.x = p.at("position").at("X").get<double>();
      pose.y = p.at("position").at("Y").get<double>();
      pose.theta = p.at("rotation").get<int>();
      if (!valid_theta(pose.theta))
        throw std::runtime_error("invalid rotation for " + name);
      s.asset(name);  // must reference a declared asset
      for (const auto& prev : s.layout)
        if (prev.first == name)
          throw std::runtime_error("duplicate layout entry: " + name);
      s.layout.emplace_back(name, pose);
    }
  }

  for (auto& [key, value] : doc.items()) {
    if (key == "room_type" || key == "prompt" || key == "room" ||
        key == "assets" || key == "layout")
      continue;
    s.extras[key] = value;
  }
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string scene_to_string(const Scene& scene) {
  if (scene.room.width <= 0 || scene.room.depth <= 0)
    throw std::runtime_error("room dimensions must be positive");
  ordered_json doc;
  doc["room_type"] = scene.room_type;
  doc["prompt"] = scene.prompt;
  doc["room"] = {{"width", round_cm(scene.room.width)},
                 {"depth", round_cm(scene.room.depth)}};
  doc["assets"] = ordered_json::array();
  for (const auto& a : scene.assets) {
    doc["assets"].push_back(
        {{"object_name", a.object_name},
         {"size", {{"x", round_cm(a.footprint_w)},
                   {"y", round_cm(a.footprint_d)},
                   {"z", round_cm(a.height)}}}});
  }
  if (scene.has_layout) {
    doc["layout"] = ordered_json::array();
    for (const auto& [name, pose] : scene.layout) {
      if (!valid_theta(pose.theta))
        throw std::runtime_error("invalid rotation for " + name);
      doc["layout"].push_back(
          {{"object_name", name},
           {"position", {{"X", round_cm(pose.x)}, {"Y", round_cm(pose.y)}}},
           {"rotation", pose.theta}});
    }
  }
  for (auto& [key, value] : scene.extras.items()) doc[key] = value;
  return doc.dump(2) + "\n";
}

void save_scene(const Scene& scene, const std::string& path) {
  std::string text = scene_to_string(scene);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void apply_layout(Scene& scene, const Layout& layout) {
  scene.layout.clear();
  scene.has_layout = true;
  for (const auto& [name, obj] : layout.items())
    scene.layout.emplace_back(name, obj.pose);
}

json pose_to_json(const Pose& p) {
  // Exact values: trace replay relies on bit-identical poses. Scene files
  // round to integer centimeters separately.
  return {{"position", {{"X", p.x}, {"Y", p.y}}}, {"rotation", p.theta}};
}

Pose pose_from_json(const json& j) {
  Pose p;
  p.x = j.at("position").at("X").get<double>();
  p.y = j.at("position").at("Y").get<double>();
  p.theta = j.at("rotation").get<int>();
  if (!valid_theta(p.theta)) throw std::runtime_error("invalid rotation in pose");
  return p;
}

json layout_to_json(const Layout& layout) {
  json objs = json::array();
  for (const auto& [name, obj] : layout.items()) {
    json e = pose_to_json(obj.pose);
    e["object_name"] = name;
    e["size"] = {{"x", obj.asset.footprint_w},
                 {"y", obj.asset.footprint_d},
                 {"z", obj.asset.height}};
    objs.push_back(e);
  }
  return {{"room", {{"width", layout.room().width},
                    {"depth", layout.room().depth}}},
          {"objects", objs}};
}

Layout layout_from_json(const json& j) {
  Layout l(Room{j.at("room").at("width").get<double>(),
                j.at("room").at("depth").get<double>()});
  for (const auto& e : j.at("objects")) {
    AssetSpec a;
    a.object_name = e.at("object_name").get<std::string>();
    a.footprint_w = e.at("size").at("x").get<double>();
    a.footprint_d = e.at("size").at("y").get<double>();
    a.height = e.at("size").value("z", 0.0);
    l.add(a, pose_from_json(e));
  }
  return l;
}

json constraint_to_json(const ConstraintSet& c) {
  json rels = json::array();
  for (const auto& [kind, target] : c.relations)
    rels.push_back({{"relation", relation_to_string(kind)}, {"target", target}});
  json out = {{"subject", c.subject},
              {"against_wall", c.against_wall},
              {"relations", rels}};
  if (c.facing)
    out["facing"] = *c.facing;
  else
    out["facing"] = nullptr;
  return out;
}

ConstraintSet constraint_from_json(const json& j) {
  ConstraintSet c;
  c.subject = j.at("subject").get<std::string>();
  c.against_wall = j.at("against_wall").get<bool>();
  for (const auto& r : j.at("relations"))
    c.relations.emplace_back(relation_from_string(r.at("relation").get<std::string>()),
                             r.at("target").get<std::string>());
  if (j.contains("facing") && !j["facing"].is_null())
    c.facing = j["facing"].get<std::string>();
  return c;
}

}  // namespace disco
