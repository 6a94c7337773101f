#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "actrack/motion.hpp"
#include "actrack/synth.hpp"

using namespace actrack;

namespace {

// curr(x, y) = prev(x - dx, y - dy); uncovered pixels keep a flat value.
Image shifted(const Image& prev, int dx, int dy) {
  Image out(prev.width(), prev.height(), prev.channels(), 0);
  for (int y = 0; y < prev.height(); ++y) {
    for (int x = 0; x < prev.width(); ++x) {
      const int sx = x - dx, sy = y - dy;
      if (sx >= 0 && sy >= 0 && sx < prev.width() && sy < prev.height()) {
        for (int c = 0; c < prev.channels(); ++c) out.at(x, y, c) = prev.at(sx, sy, c);
      }
    }
  }
  return out;
}

double interior_fraction(const MotionField& f, int dx, int dy) {
  int hit = 0, total = 0;
  const int margin = (f.search_radius + f.block_size - 1) / f.block_size;
  for (int by = margin; by < f.grid_h - margin; ++by) {
    for (int bx = margin; bx < f.grid_w - margin; ++bx) {
      ++total;
      if (f.dx(bx, by) == dx && f.dy(bx, by) == dy) ++hit;
    }
  }
  return total ? static_cast<double>(hit) / total : 0.0;
}

}  // namespace

TEST_CASE("grid dimensions round up") {
  const MotionField f = make_motion_field(320, 240, 16, 8);
  CHECK(f.grid_w == 20);
  CHECK(f.grid_h == 15);
  const MotionField g = make_motion_field(100, 50, 16, 8);
  CHECK(g.grid_w == 7);
  CHECK(g.grid_h == 4);
  CHECK(g.mvx.size() == 28);
}

TEST_CASE("static input gives the zero field") {
  const Image tex = synth::make_texture(160, 120, 1, 3);
  const MotionField f = estimate_motion(tex, tex);
  for (float v : f.mvx) CHECK(v == 0.0f);
  for (float v : f.mvy) CHECK(v == 0.0f);
  const Image flat(64, 64, 1, 50);
  const MotionField g = estimate_motion(flat, flat);
  for (float v : g.mvx) CHECK(v == 0.0f);
}

TEST_CASE("global translation is recovered") {
  const Image tex = synth::make_texture(320, 240, 1, 11);
  CHECK(interior_fraction(estimate_motion(tex, shifted(tex, 4, 0)), 4, 0) >= 0.9);
  CHECK(interior_fraction(estimate_motion(tex, shifted(tex, -3, 2)), -3, 2) >= 0.9);
  CHECK(interior_fraction(estimate_motion(tex, shifted(tex, 8, -8)), 8, -8) >= 0.9);
}

TEST_CASE("rgb input is matched on luma") {
  const Image tex = synth::make_texture(128, 96, 3, 12);
  CHECK(interior_fraction(estimate_motion(tex, shifted(tex, 4, 0)), 4, 0) >= 0.9);
}

TEST_CASE("vectors never exceed the search radius") {
  const Image a = synth::make_texture(96, 96, 1, 1);
  const Image b = synth::make_texture(96, 96, 1, 2);
  const MotionField f = estimate_motion(a, b, 16, 5);
  for (std::size_t i = 0; i < f.mvx.size(); ++i) {
    CHECK(std::abs(f.mvx[i]) <= 5.0f);
    CHECK(std::abs(f.mvy[i]) <= 5.0f);
  }
}

TEST_CASE("estimation is deterministic") {
  const Image a = synth::make_texture(96, 96, 1, 1);
  const Image b = synth::make_texture(96, 96, 1, 2);
  CHECK(estimate_motion(a, b) == estimate_motion(a, b));
}

TEST_CASE("mismatched frames are rejected") {
  CHECK_THROWS_AS(estimate_motion(Image(10, 10, 1), Image(12, 10, 1)), std::invalid_argument);
  CHECK_THROWS_AS(estimate_motion(Image(10, 10, 1), Image(10, 10, 1), 0, 4), std::invalid_argument);
}

TEST_CASE("render maps vectors around mid gray") {
  MotionField f = make_motion_field(64, 32, 16, 8);
  auto [x0, y0] = render_motion(f, 64, 32);
  for (auto v : x0.data()) CHECK(v == 128);
  for (auto v : y0.data()) CHECK(v == 128);
  for (auto& v : f.mvx) v = 8.0f;
  f.dy(1, 0) = -8.0f;
  auto [x1, y1] = render_motion(f, 64, 32);
  for (auto v : x1.data()) CHECK(v == 255);
  CHECK(y1.at(20, 5) == 0);
  CHECK(y1.at(0, 0) == 128);
}

TEST_CASE("rendered motion marks the moving blocks") {
  synth::Scenario sc = synth::preset("linear", 3, 1);
  sc.background = synth::Background::Constant;
  const synth::Scene scene = synth::generate(sc);
  const MotionField f = estimate_motion(scene.frames[1], scene.frames[2]);
  auto [xi, yi] = render_motion(f, 320, 240);
  const BoundingBox gt = scene.ground_truth[2].box;
  int inside = 0, outside = 0;
  for (int by = 0; by < f.grid_h; ++by) {
    for (int bx = 0; bx < f.grid_w; ++bx) {
      const bool moving = xi.at(bx * 16, by * 16) != 128 || yi.at(bx * 16, by * 16) != 128;
      const BoundingBox blk{bx * 16.0, by * 16.0, bx * 16.0 + 16, by * 16.0 + 16};
      const bool overlaps = iou(blk, gt) > 0.0;
      if (moving && overlaps) ++inside;
      if (moving && !overlaps) ++outside;
    }
  }
  CHECK(inside > 0);
  CHECK(outside == 0);
  const auto blobs = motion_blobs(f, true, 320, 240);
  REQUIRE_FALSE(blobs.empty());
  CHECK(iou(blobs[0], gt) > 0.3);
}
