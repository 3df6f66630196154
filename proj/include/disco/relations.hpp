#pragma once

#include <optional>
#include <string>
#include <vector>

#include "disco/geometry.hpp"
#include "disco/scene.hpp"

namespace disco {

/// Thresholds behind the relation predicates; all configurable.
struct RelationParams {
  double near_gap_max = 60;     // cm, max edge-to-edge gap for `near`
  double align_tol = 10;        // cm
  double facing_cone_deg = 45;  // half-angle
  double front_depth_max = 150; // cm, max distance past the front face
};

/// One violated constraint, with the feedback text handed to the SRT.
struct FailedConstraint {
  std::string subject;
  std::optional<RelationKind> kind;  // empty for a facing failure
  std::vector<std::string> targets;
  std::string feedback;  // e.g. "The chair-0 is not facing the table-0"
  std::string reason;
};

/// Deterministic truth value of one relation. `co_members` lists the other
/// subjects sharing an `around` constraint on the same target; ignored for
/// the other kinds.
bool eval_relation(RelationKind kind, const std::string& subject,
                   const std::string& target, const Layout& layout,
                   const RelationParams& params,
                   const std::vector<std::string>& co_members = {});

/// True iff the target center lies within the subject's facing cone.
bool eval_facing(const std::string& subject, const std::string& target,
                 const Layout& layout, const RelationParams& params);

/// Evaluates every relation/facing constraint whose participants are all
/// placed and returns the violated ones. Constraints referencing unplaced
/// objects are skipped (they belong to a later group).
std::vector<FailedConstraint> unsatisfied_constraints(
    const Layout& layout, const std::vector<ConstraintSet>& constraints,
    const RelationParams& params);

std::string relation_feedback(const std::string& subject, RelationKind kind,
                              const std::string& target);
std::string facing_feedback(const std::string& subject, const std::string& target);
std::string relation_question(const std::string& subject, RelationKind kind,
                              const std::string& target);
std::string facing_question(const std::string& subject, const std::string& target);

}  // namespace disco
