#include "disco/relations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace disco {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct LocalOffset {
  double dx;  // along the subject's right axis
  double dy;  // along the subject's facing axis
};

LocalOffset local_offset(const PlacedObject& subject, const Vec2& point) {
  Vec2 f = facing_vector(subject.pose.theta);
  Vec2 r{f.y, -f.x};  // right = facing rotated 90 deg clockwise
  double ox = point.x - subject.pose.x;
  double oy = point.y - subject.pose.y;
  return {ox * r.x + oy * r.y, ox * f.x + oy * f.y};
}

bool near_pred(const PlacedObject& a, const PlacedObject& b,
               const RelationParams& params) {
  return rect_gap(footprint(a.asset, a.pose), footprint(b.asset, b.pose)) <=
         params.near_gap_max;
}

const PlacedObject& placed(const Layout& layout, const std::string& name) {
  const PlacedObject* p = layout.find(name);
  if (!p) throw std::invalid_argument("unplaced object referenced: " + name);
  return *p;
}

int quadrant(const LocalOffset& o) {
  return (o.dx >= 0 ? 1 : 0) + (o.dy >= 0 ? 2 : 0);
}

}  // namespace

bool eval_facing(const std::string& subject, const std::string& target,
                 const Layout& layout, const RelationParams& params) {
  const PlacedObject& s = placed(layout, subject);
  const PlacedObject& t = placed(layout, target);
  Vec2 f = facing_vector(s.pose.theta);
  double ox = t.pose.x - s.pose.x;
  double oy = t.pose.y - s.pose.y;
  double len = std::hypot(ox, oy);
  if (len == 0) return true;  // coincident centers
  double cosang = (ox * f.x + oy * f.y) / len;
  return cosang >= std::cos(params.facing_cone_deg * kPi / 180.0) - 1e-12;
}

bool eval_relation(RelationKind kind, const std::string& subject,
                   const std::string& target, const Layout& layout,
                   const RelationParams& params,
                   const std::vector<std::string>& co_members) {
  const PlacedObject& s = placed(layout, subject);
  const PlacedObject& t = placed(layout, target);

  switch (kind) {
    case RelationKind::Near:
      return near_pred(s, t, params);

    case RelationKind::SideOf: {
      LocalOffset o = local_offset(s, {t.pose.x, t.pose.y});
      return std::abs(o.dx) > 1e-9 && near_pred(s, t, params);
    }

    case RelationKind::InFrontOf: {
      LocalOffset o = local_offset(s, {t.pose.x, t.pose.y});
      double front_half = s.asset.footprint_d / 2;
      double half_width = s.asset.footprint_w / 2;
      return o.dy > 0 && o.dy - front_half <= params.front_depth_max &&
             std::abs(o.dx) <= half_width + params.align_tol;
    }

    case RelationKind::AlignedWith: {
      int dtheta = std::abs(s.pose.theta - t.pose.theta) % 180;
      if (dtheta != 0) return false;
      return std::abs(s.pose.x - t.pose.x) <= params.align_tol ||
             std::abs(s.pose.y - t.pose.y) <= params.align_tol;
    }

    case RelationKind::Opposite: {
      if ((s.pose.theta - t.pose.theta + 360) % 360 != 180) return false;
      LocalOffset st = local_offset(s, {t.pose.x, t.pose.y});
      LocalOffset ts = local_offset(t, {s.pose.x, s.pose.y});
      return st.dy > 0 && ts.dy > 0;
    }

    case RelationKind::Around: {
      // Collect the around-group: subject plus any co-members that are placed.
      std::vector<const PlacedObject*> members = {&s};
      for (const auto& name : co_members) {
        if (name == subject) continue;
        const PlacedObject* m = layout.find(name);
        if (m) members.push_back(m);
      }
      for (const PlacedObject* m : members)
        if (!near_pred(*m, t, params)) return false;
      if (members.size() == 1) return true;  // degrades to near
      std::set<int> quads;
      for (const PlacedObject* m : members)
        quads.insert(quadrant(local_offset(t, {m->pose.x, m->pose.y})));
      return quads.size() >= 2;
    }
  }
  throw std::logic_error("bad RelationKind");
}

std::string relation_feedback(const std::string& subject, RelationKind kind,
                              const std::string& target) {
  return "The " + subject + " is not " + relation_phrase(kind) + " the " + target;
}

std::string facing_feedback(const std::string& subject, const std::string& target) {
  return "The " + subject + " is not facing the " + target;
}

std::string relation_question(const std::string& subject, RelationKind kind,
                              const std::string& target) {
  return "Is the " + subject + " placed " + relation_phrase(kind) + " the " +
         target + "?";
}

std::string facing_question(const std::string& subject, const std::string& target) {
  return "Is the " + subject + " facing the " + target + "?";
}

std::vector<FailedConstraint> unsatisfied_constraints(
    const Layout& layout, const std::vector<ConstraintSet>& constraints,
    const RelationParams& params) {
  std::vector<FailedConstraint> failed;

  for (const auto& c : constraints) {
    if (!layout.contains(c.subject)) continue;

    for (const auto& [kind, target] : c.relations) {
      if (!layout.contains(target)) continue;
      std::vector<std::string> co;
      if (kind == RelationKind::Around) {
        for (const auto& other : constraints) {
          if (other.subject == c.subject) continue;
          for (const auto& [k2, t2] : other.relations)
            if (k2 == RelationKind::Around && t2 == target)
              co.push_back(other.subject);
        }
      }
      if (!eval_relation(kind, c.subject, target, layout, params, co)) {
        FailedConstraint f;
        f.subject = c.subject;
        f.kind = kind;
        f.targets = {target};
        f.feedback = relation_feedback(c.subject, kind, target);
        f.reason = "predicate '" + relation_to_string(kind) + "' is false";
        failed.push_back(std::move(f));
      }
    }

    if (c.facing && layout.contains(*c.facing) &&
        !eval_facing(c.subject, *c.facing, layout, params)) {
      FailedConstraint f;
      f.subject = c.subject;
      f.targets = {*c.facing};
      f.feedback = facing_feedback(c.subject, *c.facing);
      f.reason = "target center is outside the facing cone";
      failed.push_back(std::move(f));
    }
  }
  return failed;
}

}  // namespace disco
