#include "disco/metrics.hpp"

#include "disco/geometry.hpp"

namespace disco {

double collision_rate(const Layout& layout) {
  const auto& items = layout.items();
  std::size_t n = items.size();
  if (n < 2) return 0;
  std::size_t colliding = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rect fa = footprint(items[i].second.asset, items[i].second.pose);
    for (std::size_t j = i + 1; j < n; ++j) {
      Rect fb = footprint(items[j].second.asset, items[j].second.pose);
      ++pairs;
      if (iou(fa, fb) > 0) ++colliding;
    }
  }
  return 100.0 * static_cast<double>(colliding) / static_cast<double>(pairs);
}

double oob_rate(const Layout& layout) {
  const auto& items = layout.items();
  if (items.empty()) return 0;
  double total = 0;
  for (const auto& [name, obj] : items) {
    Rect fp = footprint(obj.asset, obj.pose);
    total += outside_area(fp, layout.room()) / fp.area();
  }
  return 100.0 * total / static_cast<double>(items.size());
}

SceneScore score_scene(const Layout& layout,
                       const std::vector<ConstraintSet>& constraints,
                       const RelationParams& params) {
  SceneScore s;
  s.collision_rate = collision_rate(layout);
  s.oob_rate = oob_rate(layout);

  std::size_t rel_total = 0, rel_ok = 0, rot_total = 0, rot_ok = 0;
  for (const auto& c : constraints) {
    for (const auto& [kind, target] : c.relations) {
      ++rel_total;
      if (!layout.contains(c.subject) || !layout.contains(target)) continue;
      std::vector<std::string> co;
      if (kind == RelationKind::Around) {
        for (const auto& other : constraints) {
          if (other.subject == c.subject) continue;
          for (const auto& [k2, t2] : other.relations)
            if (k2 == RelationKind::Around && t2 == target)
              co.push_back(other.subject);
        }
      }
      if (eval_relation(kind, c.subject, target, layout, params, co)) ++rel_ok;
    }
    if (c.facing) {
      ++rot_total;
      if (layout.contains(c.subject) && layout.contains(*c.facing) &&
          eval_facing(c.subject, *c.facing, layout, params))
        ++rot_ok;
    }
  }
  s.vacuous_pos = rel_total == 0;
  s.vacuous_rot = rot_total == 0;
  s.pos_proxy = rel_total == 0 ? 100.0 : 100.0 * rel_ok / rel_total;
  s.rot_proxy = rot_total == 0 ? 100.0 : 100.0 * rot_ok / rot_total;
  return s;
}

json SceneScore::to_json() const {
  return {{"collision_rate", collision_rate}, {"oob_rate", oob_rate},
          {"pos_proxy", pos_proxy},           {"rot_proxy", rot_proxy},
          {"vacuous_pos", vacuous_pos},       {"vacuous_rot", vacuous_rot},
          {"deleted_count", deleted_count}};
}

}  // namespace disco
