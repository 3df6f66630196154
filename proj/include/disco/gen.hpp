#pragma once

#include <cstdint>
#include <vector>

#include "disco/scene.hpp"

namespace disco {

struct GenOptions {
  int count = 1;           // >= 1
  double min_side = 300;   // cm
  double max_side = 800;   // cm
  int min_assets = 5;
  int max_assets = 20;
  std::uint64_t seed = 1;
};

/// Procedural scenes across nine room categories with plausible furniture
/// footprints. Fully deterministic for a given option set; asset area is
/// budgeted against the floor area so every scene is packable.
std::vector<Scene> generate_scenes(const GenOptions& options);

}  // namespace disco
