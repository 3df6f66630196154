#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "disco/geometry.hpp"
#include "disco/scene.hpp"

namespace disco {

/// Uniform discretization of the floor plus per-wall point sets.
/// Interior points are strictly inside the room; wall points lie on their
/// wall segment and include both corners.
struct GridSet {
  double spacing = 10;
  std::vector<Vec2> interior;
  std::map<WallId, std::vector<Vec2>> per_wall;
};

GridSet build_grid(const Room& room, double spacing);

/// Conjunction of the three placement criteria: zero IoU against every
/// other object, full containment, and (when against_wall) back face flush
/// with the nearest wall while facing inward. The object itself is excluded
/// from the collision check by name.
bool is_valid_placement(const AssetSpec& asset, const Pose& pose,
                        const Layout& layout, const Room& room,
                        bool against_wall);

struct RefineReport {
  struct Move {
    std::string object_name;
    Pose old_pose;
    Pose new_pose;
    std::string reason;  // "wall" | "oob" | "collision"
  };
  std::vector<Move> moved;
  std::vector<std::string> deleted;
  std::size_t grid_points_scanned = 0;
};

/// Test instrumentation: observers fired as the three phases execute.
/// `before` is the live layout state just before the move is applied.
struct RefineHooks {
  std::function<void(int phase, const std::string& name, const Layout& before,
                     const Pose& old_pose, const Pose& new_pose)>
      on_move;
  std::function<void(int phase, const std::string& name, const Layout& before)>
      on_delete;
  std::function<void(int phase, const Layout& after)> on_phase_end;
};

/// Grid-matching repair: wall alignment, out-of-bounds correction, then
/// collision resolution. Every surviving object passes is_valid_placement.
/// Objects that cannot be placed anywhere are deleted and reported.
std::pair<Layout, RefineReport> refine(const Layout& layout,
                                       const std::vector<ConstraintSet>& constraints,
                                       const GridSet& grid,
                                       const RefineHooks* hooks = nullptr);

}  // namespace disco
