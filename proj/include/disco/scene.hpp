#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace disco {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Axis-aligned rectangular room, origin at the bottom-left corner.
struct Room {
  double width = 0;  // X extent, cm
  double depth = 0;  // Y extent, cm
};

/// A furniture item with a rectangular footprint. Height is carried for
/// I/O fidelity only; all solving happens in the floor plane.
struct AssetSpec {
  std::string object_name;
  double footprint_w = 0;  // local X extent at theta=0, cm
  double footprint_d = 0;  // local Y extent at theta=0, cm
  double height = 0;       // cm
};

/// Planar placement: footprint center plus clockwise rotation from +Y.
/// theta=0 faces up, 90 right, 180 down, 270 left.
struct Pose {
  double x = 0;
  double y = 0;
  int theta = 0;

  bool operator==(const Pose&) const = default;
};

inline bool valid_theta(int theta) {
  return theta == 0 || theta == 90 || theta == 180 || theta == 270;
}

enum class RelationKind { Near, SideOf, InFrontOf, AlignedWith, Opposite, Around };

RelationKind relation_from_string(const std::string& s);
std::string relation_to_string(RelationKind k);
/// Prose form used in feedback and questions ("near", "in front of", ...).
std::string relation_phrase(RelationKind k);

/// Per-asset placement constraints derived by the planner.
struct ConstraintSet {
  std::string subject;
  bool against_wall = false;
  std::vector<std::pair<RelationKind, std::string>> relations;
  std::optional<std::string> facing;
};

/// Ordered disjoint groups of object names; order is placement order.
struct GroupPlan {
  std::vector<std::vector<std::string>> groups;
};

struct PlacedObject {
  AssetSpec asset;
  Pose pose;
};

/// The evolving scene layout. Insertion order is preserved and meaningful
/// for determinism; lookups are by object_name. Value semantics throughout.
class Layout {
 public:
  Layout() = default;
  explicit Layout(Room room) : room_(room) {}

  const Room& room() const { return room_; }
  void set_room(Room r) { room_ = r; }

  bool contains(const std::string& name) const;
  const PlacedObject* find(const std::string& name) const;
  const PlacedObject& at(const std::string& name) const;

  /// Throws on duplicate name.
  void add(const AssetSpec& asset, const Pose& pose);
  void set_pose(const std::string& name, const Pose& pose);
  void remove(const std::string& name);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const std::vector<std::pair<std::string, PlacedObject>>& items() const {
    return items_;
  }

  bool operator==(const Layout& other) const;

 private:
  Room room_;
  std::vector<std::pair<std::string, PlacedObject>> items_;
};

/// Union of base and a group proposal; base is untouched.
/// Throws on any name collision.
Layout integrate_group(const Layout& base,
                       const std::vector<std::pair<AssetSpec, Pose>>& proposal);

/// The on-disk scene document. Unknown top-level fields are kept in
/// `extras` so load/save round-trips foreign data.
struct Scene {
  std::string room_type;
  std::string prompt;
  Room room;
  std::vector<AssetSpec> assets;
  std::vector<std::pair<std::string, Pose>> layout;  // may be empty
  bool has_layout = false;
  ordered_json extras = ordered_json::object();

  const AssetSpec& asset(const std::string& name) const;
  Layout make_layout() const;
};

Scene load_scene(const std::string& path);
Scene parse_scene(const std::string& text);
void save_scene(const Scene& scene, const std::string& path);
std::string scene_to_string(const Scene& scene);

/// Replaces scene.layout with the poses of `layout` (insertion order).
void apply_layout(Scene& scene, const Layout& layout);

// JSON helpers shared by trace and agent payloads.
json layout_to_json(const Layout& layout);
Layout layout_from_json(const json& j);
json pose_to_json(const Pose& p);
Pose pose_from_json(const json& j);
json constraint_to_json(const ConstraintSet& c);
ConstraintSet constraint_from_json(const json& j);

}  // namespace disco
