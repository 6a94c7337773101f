#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "actrack/boxes.hpp"

using namespace actrack;

namespace {

BoundingBox random_box(std::mt19937& gen) {
  std::uniform_real_distribution<double> pos(-50.0, 150.0);
  std::uniform_real_distribution<double> size(0.0, 80.0);
  const double x = pos(gen), y = pos(gen);
  return {x, y, x + size(gen), y + size(gen)};
}

bool near(const BoundingBox& a, const BoundingBox& b) {
  return a.x_min == doctest::Approx(b.x_min) && a.y_min == doctest::Approx(b.y_min) &&
         a.x_max == doctest::Approx(b.x_max) && a.y_max == doctest::Approx(b.y_max);
}

}  // namespace

TEST_CASE("iou of identical, disjoint and half-shifted boxes") {
  CHECK(iou({0, 0, 10, 10}, {0, 0, 10, 10}) == 1.0);
  CHECK(iou({0, 0, 10, 10}, {20, 20, 30, 30}) == 0.0);
  // 50 px overlap over a 150 px union
  CHECK(iou({0, 0, 10, 10}, {5, 0, 15, 10}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("iou edge cases") {
  CHECK(iou({0, 0, 10, 10}, {10, 0, 20, 10}) == 0.0);  // touching edge
  CHECK(iou({0, 0, 0, 0}, {0, 0, 0, 0}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {2, 2, 4, 4}) == doctest::Approx(4.0 / 100.0));
}

TEST_CASE("iou is symmetric and bounded on random pairs") {
  std::mt19937 gen(7);
  for (int i = 0; i < 2000; ++i) {
    const BoundingBox a = random_box(gen), b = random_box(gen);
    const double v = iou(a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v == iou(b, a));
  }
}

TEST_CASE("mean fuse") {
  CHECK(mean_fuse({0, 0, 10, 10}, {10, 0, 20, 10}) == BoundingBox{5, 0, 15, 10});
  CHECK(mean_fuse({0, 0, 4, 4}, {2, 2, 6, 6}) == BoundingBox{1, 1, 5, 5});
  const BoundingBox a{3.5, 1, 9, 12};
  CHECK(mean_fuse(a, a) == a);
}

TEST_CASE("max fuse takes each corner coordinate separately") {
  CHECK(max_fuse({0, 0, 10, 10}, {0, 0, 10, 10}) == BoundingBox{0, 0, 10, 10});
  CHECK(max_fuse({0, 0, 10, 10}, {2, 1, 12, 9}) == BoundingBox{2, 1, 12, 10});
  CHECK(max_fuse({0, 0, 4, 4}, {1, 1, 3, 3}) == BoundingBox{1, 1, 4, 4});
}

TEST_CASE("fused boxes stay valid") {
  std::mt19937 gen(11);
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox a = random_box(gen), b = random_box(gen);
    CHECK(mean_fuse(a, b).valid());
    CHECK(max_fuse(a, b).valid());
  }
}

TEST_CASE("center form round trip") {
  const BoundingBox b{100, 100, 140, 160};
  const CenterBox c = to_center(b);
  CHECK(c == CenterBox{120, 130, 40, 60});
  CHECK(to_corner(c) == b);
  std::mt19937 gen(3);
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox r = random_box(gen);
    CHECK(near(to_corner(to_center(r)), r));
  }
}

TEST_CASE("validation rejects inverted and non-finite boxes") {
  CHECK_THROWS_AS(require_valid({10, 0, 0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(require_valid({0, 0, std::nan(""), 10}), std::invalid_argument);
  CHECK_NOTHROW(require_valid({0, 0, 0, 0}));
  CHECK_FALSE(BoundingBox{0, 5, 1, 4}.valid());
}

TEST_CASE("clip") {
  CHECK(clip({-5, -5, 10, 300}, 320, 240) == BoundingBox{0, 0, 10, 240});
  const BoundingBox out = clip({400, 10, 420, 20}, 320, 240);
  CHECK(out.valid());
  CHECK(out.area() == 0.0);
}
