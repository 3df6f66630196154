#include "disco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disco {

std::string wall_to_string(WallId w) {
  switch (w) {
    case WallId::Bottom: return "bottom";
    case WallId::Right: return "right";
    case WallId::Top: return "top";
    case WallId::Left: return "left";
  }
  throw std::logic_error("bad WallId");
}

Vec2 facing_vector(int theta) {
  switch (theta) {
    case 0: return {0, 1};
    case 90: return {1, 0};
    case 180: return {0, -1};
    case 270: return {-1, 0};
  }
  throw std::invalid_argument("theta must be one of 0/90/180/270");
}

Rect footprint(const AssetSpec& asset, const Pose& pose) {
  double hx = asset.footprint_w / 2;
  double hy = asset.footprint_d / 2;
  if (pose.theta == 90 || pose.theta == 270) std::swap(hx, hy);
  return {pose.x - hx, pose.y - hy, pose.x + hx, pose.y + hy};
}

double intersection_area(const Rect& a, const Rect& b) {
  double w = std::min(a.max_x, b.max_x) - std::max(a.min_x, b.min_x);
  double h = std::min(a.max_y, b.max_y) - std::max(a.min_y, b.min_y);
  if (w <= 0 || h <= 0) return 0;
  return w * h;
}

double iou(const Rect& a, const Rect& b) {
  double inter = intersection_area(a, b);
  double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0;
  return inter / uni;
}

double outside_area(const Rect& r, const Room& room) {
  Rect rr{0, 0, room.width, room.depth};
  return r.area() - intersection_area(r, rr);
}

double rect_gap(const Rect& a, const Rect& b) {
  double dx = std::max({a.min_x - b.max_x, b.min_x - a.max_x, 0.0});
  double dy = std::max({a.min_y - b.max_y, b.min_y - a.max_y, 0.0});
  return std::hypot(dx, dy);
}

std::pair<WallId, double> nearest_wall(const Vec2& p, const Room& room) {
  double x = std::clamp(p.x, 0.0, room.width);
  double y = std::clamp(p.y, 0.0, room.depth);
  // Canonical order doubles as the tie-break.
  std::array<double, 4> d = {y, room.width - x, room.depth - y, x};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (d[i] < d[best]) best = i;
  return {kWalls[best], d[best]};
}

int wall2rotation(WallId w) {
  switch (w) {
    case WallId::Bottom: return 0;
    case WallId::Left: return 90;
    case WallId::Top: return 180;
    case WallId::Right: return 270;
  }
  throw std::logic_error("bad WallId");
}

Vec2 back_center(const AssetSpec& asset, const Pose& pose) {
  Vec2 f = facing_vector(pose.theta);
  // Half extent along the facing axis is always d/2 in local terms.
  double half = asset.footprint_d / 2;
  return {pose.x - f.x * half, pose.y - f.y * half};
}

Pose pull_to_wall(const Vec2& g, const AssetSpec& asset, const Pose& pose) {
  Vec2 f = facing_vector(pose.theta);
  double half = asset.footprint_d / 2;
  return {g.x + f.x * half, g.y + f.y * half, pose.theta};
}

}  // namespace disco
