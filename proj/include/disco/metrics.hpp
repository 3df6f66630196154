#pragma once

#include <string>
#include <vector>

#include "disco/relations.hpp"
#include "disco/scene.hpp"

namespace disco {

struct SceneScore {
  double collision_rate = 0;  // percent of object pairs with IoU > 0
  double oob_rate = 0;        // percent, mean per-object outside fraction
  double pos_proxy = 100;     // percent of relation constraints satisfied
  double rot_proxy = 100;     // percent of facing constraints satisfied
  bool vacuous_pos = false;   // no relation constraints to check
  bool vacuous_rot = false;   // no facing constraints to check
  int deleted_count = 0;

  json to_json() const;
};

double collision_rate(const Layout& layout);
double oob_rate(const Layout& layout);

SceneScore score_scene(const Layout& layout,
                       const std::vector<ConstraintSet>& constraints,
                       const RelationParams& params);

}  // namespace disco
