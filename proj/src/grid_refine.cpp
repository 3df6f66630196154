#include "disco/grid_refine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disco {

namespace {

constexpr double kAreaEps = 1e-9;   // cm^2
constexpr double kCoordEps = 1e-9;  // cm

double dist2(const Vec2& a, const Vec2& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Sort grid points by distance to `from`; ties by (y, x) ascending.
std::vector<Vec2> sorted_by_distance(std::vector<Vec2> pts, const Vec2& from) {
  std::sort(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& b) {
    double da = dist2(a, from), db = dist2(b, from);
    if (da != db) return da < db;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  return pts;
}

bool flush_with_wall(const AssetSpec& asset, const Pose& pose, const Room& room) {
  auto [wall, dist] = nearest_wall({pose.x, pose.y}, room);
  if (pose.theta != wall2rotation(wall)) return false;
  Vec2 bc = back_center(asset, pose);
  switch (wall) {
    case WallId::Bottom: return std::abs(bc.y) <= kCoordEps;
    case WallId::Right: return std::abs(bc.x - room.width) <= kCoordEps;
    case WallId::Top: return std::abs(bc.y - room.depth) <= kCoordEps;
    case WallId::Left: return std::abs(bc.x) <= kCoordEps;
  }
  return false;
}

}  // namespace

GridSet build_grid(const Room& room, double spacing) {
  if (spacing <= 0) throw std::invalid_argument("grid spacing must be positive");
  if (spacing > std::min(room.width, room.depth))
    throw std::invalid_argument("grid spacing exceeds room extent");

  GridSet g;
  g.spacing = spacing;

  std::vector<double> xs, ys;
  for (double x = spacing; x < room.width - kCoordEps; x += spacing) xs.push_back(x);
  for (double y = spacing; y < room.depth - kCoordEps; y += spacing) ys.push_back(y);
  for (double y : ys)
    for (double x : xs) g.interior.push_back({x, y});

  auto segment = [&](double extent) {
    std::vector<double> ts;
    for (double t = 0; t < extent - kCoordEps; t += spacing) ts.push_back(t);
    ts.push_back(extent);
    return ts;
  };
  for (double t : segment(room.width)) {
    g.per_wall[WallId::Bottom].push_back({t, 0});
    g.per_wall[WallId::Top].push_back({t, room.depth});
  }
  for (double t : segment(room.depth)) {
    g.per_wall[WallId::Left].push_back({0, t});
    g.per_wall[WallId::Right].push_back({room.width, t});
  }
  return g;
}

bool is_valid_placement(const AssetSpec& asset, const Pose& pose,
                        const Layout& layout, const Room& room,
                        bool against_wall) {
  Rect fp = footprint(asset, pose);
  if (outside_area(fp, room) > kAreaEps) return false;
  for (const auto& [name, other] : layout.items()) {
    if (name == asset.object_name) continue;
    if (intersection_area(fp, footprint(other.asset, other.pose)) > kAreaEps)
      return false;
  }
  if (against_wall && !flush_with_wall(asset, pose, room)) return false;
  return true;
}

std::pair<Layout, RefineReport> refine(const Layout& input,
                                       const std::vector<ConstraintSet>& constraints,
                                       const GridSet& grid,
                                       const RefineHooks* hooks) {
  Layout layout = input;
  const Room& room = layout.room();
  RefineReport report;

  std::map<std::string, bool> wall_flag;
  for (const auto& c : constraints) wall_flag[c.subject] = c.against_wall;
  auto flagged = [&](const std::string& name) {
    auto it = wall_flag.find(name);
    return it != wall_flag.end() && it->second;
  };

  auto names_in_order = [&]() {
    std::vector<std::string> names;
    for (const auto& [n, obj] : layout.items()) names.push_back(n);
    return names;
  };

  auto apply_move = [&](int phase, const std::string& name, const Pose& np,
                        const char* reason) {
    Pose old = layout.at(name).pose;
    if (hooks && hooks->on_move) hooks->on_move(phase, name, layout, old, np);
    layout.set_pose(name, np);
    report.moved.push_back({name, old, np, reason});
  };
  auto apply_delete = [&](int phase, const std::string& name) {
    if (hooks && hooks->on_delete) hooks->on_delete(phase, name, layout);
    layout.remove(name);
    report.deleted.push_back(name);
  };

  // Phase 1: wall alignment. Objects already flush and otherwise valid are
  // left alone so that repairing is idempotent.
  for (const auto& name : names_in_order()) {
    if (!flagged(name)) continue;
    const PlacedObject& obj = layout.at(name);
    if (is_valid_placement(obj.asset, obj.pose, layout, room, true)) continue;

    auto [wall, dist] = nearest_wall({obj.pose.x, obj.pose.y}, room);
    Pose turned{obj.pose.x, obj.pose.y, wall2rotation(wall)};
    Vec2 bc = back_center(obj.asset, turned);

    bool placed_ok = false;
    for (const Vec2& g : sorted_by_distance(grid.per_wall.at(wall), bc)) {
      Pose cand = pull_to_wall(g, obj.asset, turned);
      ++report.grid_points_scanned;
      if (is_valid_placement(obj.asset, cand, layout, room, true)) {
        apply_move(1, name, cand, "wall");
        placed_ok = true;
        break;
      }
    }
    if (!placed_ok) apply_delete(1, name);
  }
  if (hooks && hooks->on_phase_end) hooks->on_phase_end(1, layout);

  // Phase 2: out-of-bounds correction.
  for (const auto& name : names_in_order()) {
    const PlacedObject& obj = layout.at(name);
    if (outside_area(footprint(obj.asset, obj.pose), room) <= kAreaEps) continue;

    bool placed_ok = false;
    for (const Vec2& g :
         sorted_by_distance(grid.interior, {obj.pose.x, obj.pose.y})) {
      Pose cand{g.x, g.y, obj.pose.theta};
      ++report.grid_points_scanned;
      if (is_valid_placement(obj.asset, cand, layout, room, flagged(name))) {
        apply_move(2, name, cand, "oob");
        placed_ok = true;
        break;
      }
    }
    if (!placed_ok) apply_delete(2, name);
  }
  if (hooks && hooks->on_phase_end) hooks->on_phase_end(2, layout);

  // Phase 3: collision resolution. Pairs are re-detected after every move
  // since a move can resolve or create overlaps among pending pairs.
  for (;;) {
    struct PairHit {
      double iou_val;
      std::string a, b;  // a < b lexicographically
    };
    std::vector<PairHit> hits;
    const auto& items = layout.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        Rect fa = footprint(items[i].second.asset, items[i].second.pose);
        Rect fb = footprint(items[j].second.asset, items[j].second.pose);
        if (intersection_area(fa, fb) > kAreaEps) {
          std::string a = items[i].first, b = items[j].first;
          if (b < a) std::swap(a, b);
          hits.push_back({iou(fa, fb), a, b});
        }
      }
    }
    if (hits.empty()) break;
    std::sort(hits.begin(), hits.end(), [](const PairHit& l, const PairHit& r) {
      if (l.iou_val != r.iou_val) return l.iou_val > r.iou_val;
      if (l.a != r.a) return l.a < r.a;
      return l.b < r.b;
    });
    const PairHit& top = hits.front();

    const PlacedObject& oa = layout.at(top.a);
    const PlacedObject& ob = layout.at(top.b);
    double area_a = oa.asset.footprint_w * oa.asset.footprint_d;
    double area_b = ob.asset.footprint_w * ob.asset.footprint_d;
    // Smaller footprint moves; equal areas move the later name.
    std::string mover;
    if (area_a < area_b)
      mover = top.a;
    else if (area_b < area_a)
      mover = top.b;
    else
      mover = std::max(top.a, top.b);

    const PlacedObject& m = layout.at(mover);
    Vec2 cur{m.pose.x, m.pose.y};
    bool placed_ok = false;

    if (flagged(mover)) {
      // Wall objects slide along wall grid points, staying flush.
      auto [wall, dist] = nearest_wall(cur, room);
      Pose turned{m.pose.x, m.pose.y, wall2rotation(wall)};
      Vec2 bc = back_center(m.asset, turned);
      for (const Vec2& g : sorted_by_distance(grid.per_wall.at(wall), bc)) {
        Pose cand = pull_to_wall(g, m.asset, turned);
        ++report.grid_points_scanned;
        if (is_valid_placement(m.asset, cand, layout, room, true)) {
          apply_move(3, mover, cand, "collision");
          placed_ok = true;
          break;
        }
      }
    } else {
      for (const Vec2& g : sorted_by_distance(grid.interior, cur)) {
        Pose cand{g.x, g.y, m.pose.theta};
        ++report.grid_points_scanned;
        if (is_valid_placement(m.asset, cand, layout, room, false)) {
          apply_move(3, mover, cand, "collision");
          placed_ok = true;
          break;
        }
      }
    }
    if (!placed_ok) apply_delete(3, mover);
  }
  if (hooks && hooks->on_phase_end) hooks->on_phase_end(3, layout);

  return {layout, report};
}

}  // namespace disco
