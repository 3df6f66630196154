#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "disco/geometry.hpp"

using namespace disco;

namespace {

// Hand-rolled bounded draw so test vectors are stable across platforms.
struct TestRng {
  std::mt19937_64 e;
  explicit TestRng(std::uint64_t seed) : e(seed) {}
  double real(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(e() >> 11) / 9007199254740992.0);
  }
  int pick_theta() { return static_cast<int>(e() % 4) * 90; }
};

// Monte-Carlo area-fraction oracle over rect a.
double mc_fraction_inside(const Rect& a, const Rect& b, int samples,
                          std::uint64_t seed) {
  TestRng rng(seed);
  int hit = 0;
  for (int i = 0; i < samples; ++i) {
    double x = rng.real(a.min_x, a.max_x);
    double y = rng.real(a.min_y, a.max_y);
    if (x >= b.min_x && x <= b.max_x && y >= b.min_y && y <= b.max_y) ++hit;
  }
  return static_cast<double>(hit) / samples;
}

}  // namespace

TEST_CASE("footprint extents and rotation") {
  AssetSpec a{"sofa-0", 100, 60, 80};

  Rect r0 = footprint(a, {200, 150, 0});
  CHECK(r0.min_x == 150);
  CHECK(r0.min_y == 120);
  CHECK(r0.max_x == 250);
  CHECK(r0.max_y == 180);

  Rect r90 = footprint(a, {200, 150, 90});
  CHECK(r90.min_x == 170);
  CHECK(r90.min_y == 100);
  CHECK(r90.max_x == 230);
  CHECK(r90.max_y == 200);

  Rect r180 = footprint(a, {200, 150, 180});
  CHECK(r180.min_x == r0.min_x);
  CHECK(r180.max_y == r0.max_y);
}

TEST_CASE("footprint area invariant under rotation") {
  TestRng rng(11);
  for (int i = 0; i < 200; ++i) {
    AssetSpec a{"x", rng.real(5, 300), rng.real(5, 300), 10};
    Pose p{rng.real(0, 500), rng.real(0, 500), rng.pick_theta()};
    CHECK(footprint(a, p).area() == doctest::Approx(a.footprint_w * a.footprint_d));
  }
}

TEST_CASE("iou basic cases") {
  Rect a{50, 50, 150, 150};
  CHECK(iou(a, a) == 1.0);

  Rect b{150, 50, 250, 150};  // shares an edge with a
  CHECK(iou(a, b) == 0.0);

  // 100x100 at (100,100) against 100x60 rotated to 60x100 at (150,100):
  // intersection 30x100 = 3000, union 13000.
  AssetSpec sq{"a", 100, 100, 0};
  AssetSpec slab{"b", 100, 60, 0};
  Rect ra = footprint(sq, {100, 100, 0});
  Rect rb = footprint(slab, {150, 100, 90});
  double v = iou(ra, rb);
  CHECK(v == doctest::Approx(3000.0 / 13000.0).epsilon(1e-12));

  // Monte-Carlo cross-check: fraction of a's area inside b.
  double frac = mc_fraction_inside(ra, rb, 1000000, 42);
  double inter_mc = frac * ra.area();
  double union_area = ra.area() + rb.area() - inter_mc;
  CHECK(inter_mc / union_area == doctest::Approx(v).epsilon(1e-2));
}

TEST_CASE("iou symmetry and degenerate convention") {
  TestRng rng(7);
  for (int i = 0; i < 200; ++i) {
    Rect a{rng.real(0, 100), rng.real(0, 100), 0, 0};
    a.max_x = a.min_x + rng.real(1, 100);
    a.max_y = a.min_y + rng.real(1, 100);
    Rect b{rng.real(0, 100), rng.real(0, 100), 0, 0};
    b.max_x = b.min_x + rng.real(1, 100);
    b.max_y = b.min_y + rng.real(1, 100);
    CHECK(iou(a, b) == iou(b, a));
  }
  Rect line{10, 10, 10, 50};
  CHECK(iou(line, line) == 0.0);  // degenerate pair defined as 0
}

TEST_CASE("outside_area") {
  Room room{400, 300};
  Rect inside{10, 10, 110, 110};
  CHECK(outside_area(inside, room) == 0.0);

  Rect half{350, 100, 450, 200};  // half its width past x=400
  CHECK(outside_area(half, room) == 5000.0);

  // Corner straddle vs Monte-Carlo oracle.
  Rect corner{350, 250, 470, 380};
  Rect room_rect{0, 0, room.width, room.depth};
  double mc = (1.0 - mc_fraction_inside(corner, room_rect, 1000000, 3)) * corner.area();
  CHECK(outside_area(corner, room) == doctest::Approx(mc).epsilon(1e-2));

  TestRng rng(5);
  for (int i = 0; i < 100; ++i) {
    Rect r{rng.real(-100, 400), rng.real(-100, 300), 0, 0};
    r.max_x = r.min_x + rng.real(1, 200);
    r.max_y = r.min_y + rng.real(1, 200);
    double out = outside_area(r, room);
    CHECK(out >= 0.0);
    CHECK(out <= r.area() + 1e-9);
    bool contained = r.min_x >= 0 && r.min_y >= 0 && r.max_x <= room.width &&
                     r.max_y <= room.depth;
    CHECK((out == 0.0) == contained);
  }
}

TEST_CASE("nearest_wall examples and tie-break") {
  Room room{400, 300};
  auto [w1, d1] = nearest_wall({50, 150}, room);
  CHECK(w1 == WallId::Left);
  CHECK(d1 == 50.0);

  auto [w2, d2] = nearest_wall({200, 150}, room);  // bottom/top tie at 150
  CHECK(w2 == WallId::Bottom);
  CHECK(d2 == 150.0);
}

TEST_CASE("nearest_wall against 4-way minimum oracle") {
  Room room{437, 291};
  TestRng rng(13);
  for (int i = 0; i < 100; ++i) {
    Vec2 p{rng.real(0, room.width), rng.real(0, room.depth)};
    auto [w, d] = nearest_wall(p, room);
    // Independent per-wall perpendicular distances in canonical order.
    double dist[4] = {p.y, room.width - p.x, room.depth - p.y, p.x};
    double best = std::min({dist[0], dist[1], dist[2], dist[3]});
    CHECK(d == doctest::Approx(best));
    CHECK(dist[static_cast<int>(w)] == doctest::Approx(best));
    for (int k = 0; k < static_cast<int>(w); ++k) CHECK(dist[k] > best - 1e-12);
  }
}

TEST_CASE("wall2rotation mapping and inward facing") {
  CHECK(wall2rotation(WallId::Bottom) == 0);
  CHECK(wall2rotation(WallId::Left) == 90);
  CHECK(wall2rotation(WallId::Top) == 180);
  CHECK(wall2rotation(WallId::Right) == 270);

  // Pulled against each wall, the object faces the room-center half-plane.
  Room room{400, 300};
  AssetSpec a{"x", 80, 40, 0};
  Vec2 center{room.width / 2, room.depth / 2};
  const Vec2 wall_points[4] = {{200, 0}, {400, 150}, {200, 300}, {0, 150}};
  for (WallId w : kWalls) {
    int theta = wall2rotation(w);
    Pose p = pull_to_wall(wall_points[static_cast<int>(w)], a, {0, 0, theta});
    Vec2 f = facing_vector(theta);
    double dot = f.x * (center.x - p.x) + f.y * (center.y - p.y);
    CHECK(dot > 0);
  }
}

TEST_CASE("back_center") {
  AssetSpec a{"x", 80, 40, 0};
  Vec2 b0 = back_center(a, {100, 50, 0});
  CHECK(b0.x == 100);
  CHECK(b0.y == 30);

  Vec2 b90 = back_center(a, {100, 50, 90});  // faces +X, back on -X side
  CHECK(b90.x == 80);
  CHECK(b90.y == 50);

  // Back center lies on the footprint boundary for all thetas.
  TestRng rng(17);
  for (int i = 0; i < 100; ++i) {
    AssetSpec s{"x", rng.real(10, 200), rng.real(10, 200), 0};
    Pose p{rng.real(0, 400), rng.real(0, 400), rng.pick_theta()};
    Vec2 bc = back_center(s, p);
    Rect r = footprint(s, p);
    bool on_boundary =
        (std::abs(bc.x - r.min_x) < 1e-9 || std::abs(bc.x - r.max_x) < 1e-9 ||
         std::abs(bc.y - r.min_y) < 1e-9 || std::abs(bc.y - r.max_y) < 1e-9) &&
        bc.x >= r.min_x - 1e-9 && bc.x <= r.max_x + 1e-9 &&
        bc.y >= r.min_y - 1e-9 && bc.y <= r.max_y + 1e-9;
    CHECK(on_boundary);
  }
}

TEST_CASE("pull_to_wall") {
  AssetSpec a{"x", 80, 40, 0};

  Pose bottom = pull_to_wall({120, 0}, a, {0, 0, 0});
  CHECK(bottom.x == 120);
  CHECK(bottom.y == 20);
  CHECK(bottom.theta == 0);

  Pose right = pull_to_wall({400, 150}, a, {0, 0, 270});
  CHECK(right.x == 380);
  CHECK(right.y == 150);
  CHECK(right.theta == 270);

  // back_center(result) == g, and the footprint is flush along the normal.
  Room room{400, 300};
  TestRng rng(29);
  for (int i = 0; i < 100; ++i) {
    WallId w = kWalls[rng.e() % 4];
    AssetSpec s{"x", rng.real(10, 120), rng.real(10, 120), 0};
    int theta = wall2rotation(w);
    double t = rng.real(0, (w == WallId::Bottom || w == WallId::Top)
                               ? room.width
                               : room.depth);
    Vec2 g;
    switch (w) {
      case WallId::Bottom: g = {t, 0}; break;
      case WallId::Top: g = {t, room.depth}; break;
      case WallId::Left: g = {0, t}; break;
      case WallId::Right: g = {room.width, t}; break;
    }
    Pose p = pull_to_wall(g, s, {0, 0, theta});
    Vec2 bc = back_center(s, p);
    CHECK(bc.x == doctest::Approx(g.x).epsilon(1e-12));
    CHECK(bc.y == doctest::Approx(g.y).epsilon(1e-12));
    Rect r = footprint(s, p);
    switch (w) {  // flush: zero protrusion along the wall normal
      case WallId::Bottom: CHECK(r.min_y == doctest::Approx(0.0)); break;
      case WallId::Top: CHECK(r.max_y == doctest::Approx(room.depth)); break;
      case WallId::Left: CHECK(r.min_x == doctest::Approx(0.0)); break;
      case WallId::Right: CHECK(r.max_x == doctest::Approx(room.width)); break;
    }
  }
}

TEST_CASE("rect_gap") {
  Rect a{0, 0, 100, 100};
  Rect b{130, 0, 200, 100};
  CHECK(rect_gap(a, b) == 30.0);
  Rect c{130, 140, 200, 200};
  CHECK(rect_gap(a, c) == doctest::Approx(std::hypot(30.0, 40.0)));
  Rect d{50, 50, 150, 150};
  CHECK(rect_gap(a, d) == 0.0);
}
