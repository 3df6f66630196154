#pragma once

#include <array>
#include <string>

#include "disco/scene.hpp"

namespace disco {

struct Vec2 {
  double x = 0;
  double y = 0;

  bool operator==(const Vec2&) const = default;
};

/// Axis-aligned rectangle in room coordinates.
struct Rect {
  double min_x = 0;
  double min_y = 0;
  double max_x = 0;
  double max_y = 0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {(min_x + max_x) / 2, (min_y + max_y) / 2}; }
};

enum class WallId { Bottom = 0, Right = 1, Top = 2, Left = 3 };

constexpr std::array<WallId, 4> kWalls = {WallId::Bottom, WallId::Right,
                                          WallId::Top, WallId::Left};

std::string wall_to_string(WallId w);

/// Unit facing vector for a clockwise-from-+Y rotation.
Vec2 facing_vector(int theta);

/// Footprint rectangle of an asset at a pose. Extents swap for 90/270.
Rect footprint(const AssetSpec& asset, const Pose& pose);

/// Intersection over union; edge-touching rects give 0.
/// Two degenerate rects give 0 by convention.
double iou(const Rect& a, const Rect& b);

double intersection_area(const Rect& a, const Rect& b);

/// Footprint area lying outside the room rectangle.
double outside_area(const Rect& r, const Room& room);

/// Minimum edge-to-edge distance between two rects; 0 when they overlap.
double rect_gap(const Rect& a, const Rect& b);

/// Wall minimizing perpendicular distance to p (clamped into the room).
/// Ties break in canonical order bottom < right < top < left.
std::pair<WallId, double> nearest_wall(const Vec2& p, const Room& room);

/// Rotation that puts an object's back against the wall, facing inward:
/// bottom->0, left->90, top->180, right->270.
int wall2rotation(WallId w);

/// Midpoint of the footprint edge opposite the facing direction.
Vec2 back_center(const AssetSpec& asset, const Pose& pose);

/// Translates the pose so its back_center lands on g (a point on a wall);
/// theta is kept as-is.
Pose pull_to_wall(const Vec2& g, const AssetSpec& asset, const Pose& pose);

}  // namespace disco
