#include "disco/gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace disco {

namespace {

// std::uniform_int_distribution output is implementation-defined; plain
// modulo keeps generated corpora identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t index(std::size_t n) { return engine_() % n; }
  bool chance(int percent) { return range(1, 100) <= percent; }

 private:
  std::mt19937_64 engine_;
};

struct CatalogItem {
  const char* category;
  double w, d, h;  // cm
  int max_count;
  bool core;  // placed before optional items
};

struct RoomCategory {
  const char* room_type;
  std::vector<CatalogItem> items;
};

const std::vector<RoomCategory>& room_categories() {
  static const std::vector<RoomCategory> cats = {
      {"bathroom",
       {{"bathtub", 160, 70, 60, 1, true},
        {"toilet", 40, 70, 75, 1, true},
        {"sink", 60, 45, 85, 1, true},
        {"washing machine", 60, 60, 85, 1, false},
        {"cabinet", 80, 40, 180, 2, false},
        {"towel rack", 60, 20, 120, 2, false},
        {"laundry basket", 40, 40, 55, 2, false},
        {"mirror", 60, 10, 90, 1, false},
        {"plant stand", 35, 35, 90, 2, false}}},
      {"bedroom",
       {{"bed", 140, 190, 50, 1, true},
        {"nightstand", 45, 45, 55, 2, true},
        {"wardrobe", 100, 55, 200, 1, false},
        {"dresser", 100, 50, 85, 1, false},
        {"desk", 110, 55, 75, 1, false},
        {"chair", 45, 45, 90, 1, false},
        {"bookshelf", 80, 30, 180, 1, false},
        {"floor lamp", 35, 35, 160, 2, false},
        {"plant stand", 35, 35, 90, 1, false}}},
      {"dining room",
       {{"dining table", 150, 90, 75, 1, true},
        {"chair", 45, 45, 90, 6, true},
        {"sideboard", 120, 45, 85, 1, false},
        {"cabinet", 90, 45, 180, 1, false},
        {"bar cart", 50, 40, 80, 1, false},
        {"bench", 110, 35, 45, 1, false},
        {"plant stand", 35, 35, 90, 2, false},
        {"floor lamp", 35, 35, 160, 1, false}}},
      {"kitchen",
       {{"kitchen counter", 180, 60, 90, 2, true},
        {"refrigerator", 70, 70, 180, 1, true},
        {"stove", 60, 60, 90, 1, true},
        {"kitchen island", 150, 80, 90, 1, false},
        {"stool", 40, 40, 65, 4, false},
        {"sink", 60, 50, 90, 1, false},
        {"cupboard", 80, 40, 200, 2, false},
        {"plant stand", 35, 35, 90, 1, false}}},
      {"living room",
       {{"sofa", 200, 90, 80, 1, true},
        {"coffee table", 110, 60, 45, 1, true},
        {"tv stand", 160, 45, 55, 1, true},
        {"armchair", 80, 80, 85, 2, false},
        {"side table", 45, 45, 55, 2, false},
        {"bookshelf", 90, 30, 180, 1, false},
        {"floor lamp", 35, 35, 160, 2, false},
        {"plant stand", 35, 35, 90, 2, false}}},
      {"buffet restaurant",
       {{"buffet counter", 200, 60, 90, 1, true},
        {"dining table", 130, 80, 75, 2, true},
        {"chair", 45, 45, 90, 8, true},
        {"bar stool", 40, 40, 75, 4, false},
        {"bar cart", 50, 40, 80, 2, false},
        {"sideboard", 120, 45, 85, 1, false},
        {"plant stand", 35, 35, 90, 2, false}}},
      {"classroom",
       {{"blackboard", 200, 10, 120, 1, true},
        {"teacher desk", 130, 65, 75, 1, true},
        {"student desk", 60, 40, 75, 8, true},
        {"chair", 40, 40, 80, 8, true},
        {"locker", 100, 50, 180, 2, false},
        {"bookshelf", 90, 30, 180, 2, false}}},
      {"children room",
       {{"crib", 120, 70, 90, 1, true},
        {"bed", 90, 180, 50, 1, true},
        {"toy box", 60, 40, 45, 2, false},
        {"rocking chair", 60, 70, 90, 1, false},
        {"changing table", 90, 50, 90, 1, false},
        {"wardrobe", 100, 55, 200, 1, false},
        {"desk", 100, 50, 70, 1, false},
        {"chair", 40, 40, 75, 1, false},
        {"bookshelf", 70, 30, 150, 1, false}}},
      {"home gym",
       {{"treadmill", 180, 80, 140, 1, true},
        {"weight rack", 150, 50, 120, 1, true},
        {"exercise bike", 110, 50, 130, 1, false},
        {"yoga mat", 180, 60, 1, 2, false},
        {"dumbbell rack", 100, 40, 80, 1, false},
        {"mirror", 150, 10, 180, 1, false},
        {"workout bench", 120, 40, 45, 1, false},
        {"plant stand", 35, 35, 90, 1, false}}},
  };
  return cats;
}

const std::vector<const char*>& prompt_templates() {
  static const std::vector<const char*> tmpls = {
      "A %s.",
      "A cozy %s with everyday furniture.",
      "Design a practical %s that is easy to move around in.",
      "A modern %s arranged for comfortable daily use.",
      "Lay out a tidy %s with all the essentials against sensible walls.",
  };
  return tmpls;
}

std::string format_prompt(const char* tmpl, const std::string& room_type) {
  std::string s(tmpl);
  std::size_t pos = s.find("%s");
  if (pos != std::string::npos) s.replace(pos, 2, room_type);
  return s;
}

Scene generate_one(Rng& rng, const GenOptions& opt) {
  const RoomCategory& cat = room_categories()[rng.index(room_categories().size())];

  int lo = static_cast<int>(opt.min_side) / 10;
  int hi = static_cast<int>(opt.max_side) / 10;
  double width = rng.range(lo, hi) * 10.0;
  double depth = rng.range(lo, hi) * 10.0;

  // Grow the room until the mandatory items fit a conservative area budget.
  double core_area = 0;
  for (const auto& it : cat.items)
    if (it.core) core_area += it.w * it.d * it.max_count;
  const double budget_fraction = 0.35;
  while (core_area > budget_fraction * width * depth &&
         (width < opt.max_side || depth < opt.max_side)) {
    if (width <= depth && width < opt.max_side)
      width += 50;
    else
      depth += 50;
  }
  width = std::min(width, opt.max_side);
  depth = std::min(depth, opt.max_side);

  int target = rng.range(opt.min_assets, opt.max_assets);
  double budget = budget_fraction * width * depth;

  Scene scene;
  scene.room_type = cat.room_type;
  scene.room = {width, depth};
  scene.prompt = format_prompt(
      prompt_templates()[rng.index(prompt_templates().size())], cat.room_type);

  std::map<std::string, int> counts;
  double used = 0;
  auto try_add = [&](const CatalogItem& it) -> bool {
    if (counts[it.category] >= it.max_count) return false;
    if (used + it.w * it.d > budget) return false;
    AssetSpec a;
    a.object_name = std::string(it.category) + "-" +
                    std::to_string(counts[it.category]);
    a.footprint_w = it.w;
    a.footprint_d = it.d;
    a.height = it.h;
    scene.assets.push_back(a);
    ++counts[it.category];
    used += it.w * it.d;
    return true;
  };

  // Core items first (one each), then optional rounds until the target
  // count or the area budget is exhausted.
  for (const auto& it : cat.items)
    if (it.core) try_add(it);

  bool progress = true;
  while (static_cast<int>(scene.assets.size()) < target && progress) {
    progress = false;
    for (const auto& it : cat.items) {
      if (static_cast<int>(scene.assets.size()) >= target) break;
      if (!it.core && rng.chance(60) && try_add(it)) progress = true;
      else if (it.core && counts[it.category] < it.max_count &&
               rng.chance(50) && try_add(it))
        progress = true;
    }
    // A full silent round means nothing else fits; retry once without the
    // coin flips so small remaining items are still considered.
    if (!progress) {
      for (const auto& it : cat.items) {
        if (static_cast<int>(scene.assets.size()) >= target) break;
        if (try_add(it)) progress = true;
      }
      if (progress) continue;
      break;
    }
  }

  // Pad with small filler items when the budget stopped us under the
  // minimum; these always fit physically.
  static const CatalogItem filler = {"plant stand", 35, 35, 90, 100, false};
  while (static_cast<int>(scene.assets.size()) < opt.min_assets) {
    AssetSpec a;
    a.object_name = std::string(filler.category) + "-" +
                    std::to_string(counts[filler.category]);
    a.footprint_w = filler.w;
    a.footprint_d = filler.d;
    a.height = filler.h;
    scene.assets.push_back(a);
    ++counts[filler.category];
  }
  return scene;
}

}  // namespace

std::vector<Scene> generate_scenes(const GenOptions& options) {
  if (options.count < 1) throw std::invalid_argument("count must be >= 1");
  if (options.min_side < 50 || options.max_side < options.min_side)
    throw std::invalid_argument("invalid room size range");
  if (options.min_assets < 1 || options.max_assets < options.min_assets)
    throw std::invalid_argument("invalid asset count range");

  Rng rng(options.seed);
  std::vector<Scene> scenes;
  scenes.reserve(options.count);
  for (int i = 0; i < options.count; ++i) scenes.push_back(generate_one(rng, options));
  return scenes;
}

}  // namespace disco
