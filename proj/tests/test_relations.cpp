#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "disco/relations.hpp"

using namespace disco;

namespace {

constexpr double kPi = 3.14159265358979323846;

Layout two_objects(Pose a, Pose b, AssetSpec sa = {"a", 40, 40, 0},
                   AssetSpec sb = {"b", 40, 40, 0}) {
  Layout l(Room{1000, 1000});
  sa.object_name = "a";
  sb.object_name = "b";
  l.add(sa, a);
  l.add(sb, b);
  return l;
}

}  // namespace

TEST_CASE("near uses edge gap") {
  RelationParams p;
  // chair 40x40 at (100,100), table 100x100: edge gap 30 -> near.
  Layout l = two_objects({100, 100, 0}, {200, 100, 0}, {"", 40, 40, 0},
                         {"", 100, 100, 0});
  // gap = (200-50) - (100+20) = 30
  CHECK(eval_relation(RelationKind::Near, "a", "b", l, p));

  Layout far = two_objects({100, 100, 0}, {300, 100, 0}, {"", 40, 40, 0},
                           {"", 100, 100, 0});
  // gap = 250 - 120 = 130 > 60
  CHECK_FALSE(eval_relation(RelationKind::Near, "a", "b", far, p));

  // Overlap counts as distance zero.
  Layout over = two_objects({100, 100, 0}, {110, 100, 0});
  CHECK(eval_relation(RelationKind::Near, "a", "b", over, p));
}

TEST_CASE("near symmetry on random layouts") {
  RelationParams p;
  std::mt19937_64 rng(3);
  auto real = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
  };
  for (int i = 0; i < 200; ++i) {
    Layout l = two_objects(
        {real(0, 900), real(0, 900), static_cast<int>(rng() % 4) * 90},
        {real(0, 900), real(0, 900), static_cast<int>(rng() % 4) * 90},
        {"", real(10, 150), real(10, 150), 0}, {"", real(10, 150), real(10, 150), 0});
    CHECK(eval_relation(RelationKind::Near, "a", "b", l, p) ==
          eval_relation(RelationKind::Near, "b", "a", l, p));
  }
}

TEST_CASE("near monotone in the gap threshold") {
  std::mt19937_64 rng(9);
  auto real = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
  };
  for (int i = 0; i < 100; ++i) {
    Layout l = two_objects({real(0, 900), real(0, 900), 0},
                           {real(0, 900), real(0, 900), 0});
    RelationParams small, big;
    small.near_gap_max = real(1, 200);
    big.near_gap_max = small.near_gap_max + real(0, 300);
    if (eval_relation(RelationKind::Near, "a", "b", l, small))
      CHECK(eval_relation(RelationKind::Near, "a", "b", l, big));
  }
}

TEST_CASE("side_of requires lateral offset and nearness") {
  RelationParams p;
  // Nightstand beside a bed: subject faces +Y, target to its right.
  Layout beside = two_objects({100, 100, 0}, {150, 100, 0});
  CHECK(eval_relation(RelationKind::SideOf, "a", "b", beside, p));

  // Directly in front (no lateral offset in the subject frame).
  Layout ahead = two_objects({100, 100, 0}, {100, 160, 0});
  CHECK_FALSE(eval_relation(RelationKind::SideOf, "a", "b", ahead, p));

  // Lateral but too far away.
  Layout far = two_objects({100, 100, 0}, {400, 100, 0});
  CHECK_FALSE(eval_relation(RelationKind::SideOf, "a", "b", far, p));

  // The subject frame rotates with theta: same world offset, subject at 90
  // now sees the target dead ahead.
  Layout rot = two_objects({100, 100, 90}, {150, 100, 0});
  CHECK_FALSE(eval_relation(RelationKind::SideOf, "a", "b", rot, p));
}

TEST_CASE("in_front_of definition") {
  RelationParams p;
  // Coffee table (target) in front of a sofa (subject) facing +Y.
  AssetSpec sofa{"", 200, 90, 0};
  Layout ok = two_objects({300, 100, 0}, {300, 220, 0}, sofa, {"", 110, 60, 0});
  CHECK(eval_relation(RelationKind::InFrontOf, "a", "b", ok, p));

  // Behind the subject.
  Layout behind = two_objects({300, 300, 0}, {300, 200, 0}, sofa, {"", 110, 60, 0});
  CHECK_FALSE(eval_relation(RelationKind::InFrontOf, "a", "b", behind, p));

  // Too far past the front face (> front_depth_max beyond half depth).
  Layout deep = two_objects({300, 100, 0}, {300, 400, 0}, sofa, {"", 110, 60, 0});
  CHECK_FALSE(eval_relation(RelationKind::InFrontOf, "a", "b", deep, p));

  // Too far sideways (> half width + align_tol = 110).
  Layout side = two_objects({300, 100, 0}, {420, 220, 0}, sofa, {"", 110, 60, 0});
  CHECK_FALSE(eval_relation(RelationKind::InFrontOf, "a", "b", side, p));
}

TEST_CASE("aligned_with definition") {
  RelationParams p;
  // Two nightstands, equal y centers, both theta 0.
  Layout eq = two_objects({100, 100, 0}, {400, 100, 0});
  CHECK(eval_relation(RelationKind::AlignedWith, "a", "b", eq, p));

  // 180-degree flip still counts as aligned.
  Layout flip = two_objects({100, 100, 0}, {400, 100, 180});
  CHECK(eval_relation(RelationKind::AlignedWith, "a", "b", flip, p));

  // Perpendicular rotations never align.
  Layout perp = two_objects({100, 100, 0}, {400, 100, 90});
  CHECK_FALSE(eval_relation(RelationKind::AlignedWith, "a", "b", perp, p));

  // Offset beyond align_tol on both axes.
  Layout off = two_objects({100, 100, 0}, {400, 140, 0});
  CHECK_FALSE(eval_relation(RelationKind::AlignedWith, "a", "b", off, p));

  // Within tolerance on one axis.
  Layout tol = two_objects({100, 100, 0}, {400, 108, 0});
  CHECK(eval_relation(RelationKind::AlignedWith, "a", "b", tol, p));
}

TEST_CASE("opposite definition") {
  RelationParams p;
  // Two sofas facing each other across the room.
  Layout facing = two_objects({200, 100, 0}, {200, 500, 180});
  CHECK(eval_relation(RelationKind::Opposite, "a", "b", facing, p));

  // Both facing the same way.
  Layout same = two_objects({200, 100, 0}, {200, 500, 0});
  CHECK_FALSE(eval_relation(RelationKind::Opposite, "a", "b", same, p));

  // 180 apart but back to back (each in the other's rear half-plane).
  Layout backs = two_objects({200, 500, 0}, {200, 100, 180});
  CHECK_FALSE(eval_relation(RelationKind::Opposite, "a", "b", backs, p));
}

TEST_CASE("around with co-members and quadrant spread") {
  RelationParams p;
  Layout l(Room{1000, 1000});
  l.add({"table-0", 100, 100, 0}, {500, 500, 0});
  l.add({"chair-0", 40, 40, 0}, {420, 420, 0});
  l.add({"chair-1", 40, 40, 0}, {580, 580, 0});

  // Two members in different quadrants, both near.
  CHECK(eval_relation(RelationKind::Around, "chair-0", "table-0", l, p,
                      {"chair-1"}));

  // Single member degrades to near.
  CHECK(eval_relation(RelationKind::Around, "chair-0", "table-0", l, p));

  // A distant co-member breaks the group.
  l.add({"chair-2", 40, 40, 0}, {50, 50, 0});
  CHECK_FALSE(eval_relation(RelationKind::Around, "chair-0", "table-0", l, p,
                            {"chair-1", "chair-2"}));

  // All members piled in a single quadrant.
  Layout piled(Room{1000, 1000});
  piled.add({"table-0", 100, 100, 0}, {500, 500, 0});
  piled.add({"chair-0", 40, 40, 0}, {420, 420, 0});
  piled.add({"chair-1", 40, 40, 0}, {440, 420, 0});
  CHECK_FALSE(eval_relation(RelationKind::Around, "chair-0", "table-0", piled,
                            p, {"chair-1"}));
}

TEST_CASE("facing cone") {
  RelationParams p;
  Layout ahead = two_objects({100, 100, 0}, {100, 200, 0});
  CHECK(eval_facing("a", "b", ahead, p));

  Layout away = two_objects({100, 100, 180}, {100, 200, 0});
  CHECK_FALSE(eval_facing("a", "b", away, p));

  // 44 degrees off-axis is inside the 45-degree cone, 46 is out.
  double d = 100;
  Layout at44 = two_objects(
      {100, 100, 0},
      {100 + d * std::sin(44 * kPi / 180), 100 + d * std::cos(44 * kPi / 180), 0});
  CHECK(eval_facing("a", "b", at44, p));
  Layout at46 = two_objects(
      {100, 100, 0},
      {100 + d * std::sin(46 * kPi / 180), 100 + d * std::cos(46 * kPi / 180), 0});
  CHECK_FALSE(eval_facing("a", "b", at46, p));
}

TEST_CASE("unplaced references are errors for direct evaluation") {
  RelationParams p;
  Layout l(Room{500, 500});
  l.add({"a", 40, 40, 0}, {100, 100, 0});
  CHECK_THROWS_AS(eval_relation(RelationKind::Near, "a", "ghost", l, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_facing("ghost", "a", l, p), std::invalid_argument);
}

TEST_CASE("unsatisfied_constraints filters exactly the violated ones") {
  RelationParams p;
  Layout l(Room{1000, 1000});
  l.add({"table-0", 100, 100, 0}, {500, 500, 0});
  l.add({"chair-0", 40, 40, 0}, {500, 420, 180});  // near, facing away
  l.add({"lamp-0", 30, 30, 0}, {50, 50, 0});       // far from the table

  std::vector<ConstraintSet> cs(3);
  cs[0].subject = "chair-0";
  cs[0].relations = {{RelationKind::Near, "table-0"}};
  cs[0].facing = "table-0";
  cs[1].subject = "lamp-0";
  cs[1].relations = {{RelationKind::Near, "table-0"}};
  cs[2].subject = "table-0";

  auto failed = unsatisfied_constraints(l, cs, p);
  REQUIRE(failed.size() == 2);
  CHECK(failed[0].subject == "chair-0");
  CHECK_FALSE(failed[0].kind.has_value());
  CHECK(failed[0].feedback == "The chair-0 is not facing the table-0");
  CHECK(failed[1].subject == "lamp-0");
  CHECK(failed[1].kind == RelationKind::Near);
  CHECK(failed[1].feedback == "The lamp-0 is not near the table-0");

  // Brute-force cross-check: the list is exactly the predicate filter.
  int violated = 0;
  if (!eval_relation(RelationKind::Near, "chair-0", "table-0", l, p)) ++violated;
  if (!eval_facing("chair-0", "table-0", l, p)) ++violated;
  if (!eval_relation(RelationKind::Near, "lamp-0", "table-0", l, p)) ++violated;
  CHECK(violated == static_cast<int>(failed.size()));
}

TEST_CASE("unsatisfied_constraints skips unplaced participants") {
  RelationParams p;
  Layout l(Room{1000, 1000});
  l.add({"chair-0", 40, 40, 0}, {100, 100, 0});
  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "chair-0";
  cs[0].relations = {{RelationKind::Near, "table-0"}};  // table not placed yet
  cs[0].facing = "table-0";
  CHECK(unsatisfied_constraints(l, cs, p).empty());
}

TEST_CASE("satisfied layout yields an empty failure list") {
  RelationParams p;
  Layout l(Room{1000, 1000});
  l.add({"table-0", 100, 100, 0}, {500, 500, 0});
  l.add({"chair-0", 40, 40, 0}, {500, 420, 0});
  std::vector<ConstraintSet> cs(1);
  cs[0].subject = "chair-0";
  cs[0].relations = {{RelationKind::Near, "table-0"}};
  cs[0].facing = "table-0";
  CHECK(unsatisfied_constraints(l, cs, p).empty());
}

TEST_CASE("predicates invariant under whole-layout translation") {
  RelationParams p;
  std::mt19937_64 rng(21);
  auto real = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
  };
  for (int i = 0; i < 100; ++i) {
    Pose pa{real(100, 400), real(100, 400), static_cast<int>(rng() % 4) * 90};
    Pose pb{real(100, 400), real(100, 400), static_cast<int>(rng() % 4) * 90};
    double tx = real(0, 300), ty = real(0, 300);
    Layout base = two_objects(pa, pb);
    Layout moved = two_objects({pa.x + tx, pa.y + ty, pa.theta},
                               {pb.x + tx, pb.y + ty, pb.theta});
    for (RelationKind k :
         {RelationKind::Near, RelationKind::SideOf, RelationKind::InFrontOf,
          RelationKind::AlignedWith, RelationKind::Opposite, RelationKind::Around}) {
      CHECK(eval_relation(k, "a", "b", base, p) ==
            eval_relation(k, "a", "b", moved, p));
    }
    CHECK(eval_facing("a", "b", base, p) == eval_facing("a", "b", moved, p));
  }
}
