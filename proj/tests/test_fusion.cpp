#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "actrack/fusion.hpp"
#include "oracles.hpp"

using namespace actrack;

namespace {

Detection det(BoundingBox b, std::string cls = "A", double score = 0.9) {
  return {0, std::move(cls), score, b};
}

std::vector<BoundingBox> boxes_of(const std::vector<Detection>& v) {
  std::vector<BoundingBox> out;
  for (const auto& d : v) out.push_back(d.box);
  return out;
}

}  // namespace

TEST_CASE("motion fusion examples") {
  const FusionConfig cfg;
  CHECK(boxes_of(fuse_motion(std::vector{det({0, 0, 10, 10})}, std::vector{det({0, 0, 10, 10})},
                             cfg)) == std::vector<BoundingBox>{{0, 0, 10, 10}});
  CHECK(boxes_of(fuse_motion(std::vector{det({0, 0, 10, 10})},
                             std::vector{det({20, 20, 30, 30})}, cfg)) ==
        std::vector<BoundingBox>{{0, 0, 10, 10}});
  CHECK(boxes_of(fuse_motion(std::vector{det({0, 0, 10, 10})}, std::vector{det({2, 0, 12, 10})},
                             cfg)) == std::vector<BoundingBox>{{1, 0, 11, 10}});
}

TEST_CASE("empty Y-motion returns the X-motion list") {
  const std::vector<Detection> mvx = {det({0, 0, 10, 10}, "m", 0.4), det({30, 30, 40, 50})};
  CHECK(fuse_motion(mvx, {}, FusionConfig{}) == mvx);
  CHECK(fuse_motion({}, mvx, FusionConfig{}).empty());
}

TEST_CASE("Y basis swaps the roles of the motion streams") {
  FusionConfig cfg;
  cfg.motion_basis = MotionBasis::YOverX;
  const std::vector<Detection> mvy = {det({0, 0, 10, 10}), det({50, 50, 60, 60})};
  const auto out = fuse_motion({}, mvy, cfg);
  CHECK(out == mvy);
}

TEST_CASE("final fusion examples") {
  FusionConfig cfg;
  const std::vector<Detection> app = {det({0, 0, 10, 10}, "A", 0.9)};
  CHECK(fuse_streams(app, {}, cfg) == app);
  const std::vector<Detection> motion = {det({2, 0, 12, 10}, "motion", 0.5)};
  const auto mean = fuse_streams(app, motion, cfg);
  REQUIRE(mean.size() == 1);
  CHECK(mean[0].box == BoundingBox{1, 0, 11, 10});
  CHECK(mean[0].class_id == "A");
  CHECK(mean[0].score == doctest::Approx(0.7));
  cfg.method = FusionMethod::Max;
  const auto mx = fuse_streams(app, motion, cfg);
  CHECK(mx[0].box == BoundingBox{2, 0, 12, 10});
}

TEST_CASE("threshold is exclusive") {
  FusionConfig cfg;
  cfg.iou_threshold = 0.5;
  // IOU exactly 1/3 against the 0.5 threshold, then against 1/3 itself
  const std::vector<Detection> app = {det({0, 0, 10, 10})};
  const std::vector<Detection> motion = {det({5, 0, 15, 10})};
  CHECK(fuse_streams(app, motion, cfg) == app);
  cfg.iou_threshold = 1.0 / 3.0;
  CHECK(fuse_streams(app, motion, cfg) == app);
  cfg.iou_threshold = 0.33;
  CHECK(fuse_streams(app, motion, cfg)[0].box == BoundingBox{2.5, 0, 12.5, 10});
}

TEST_CASE("ties resolve to the first candidate") {
  const std::vector<Detection> motion = {det({2, 0, 12, 10}), det({-2, 0, 8, 10})};
  const BestMatch m = best_match({0, 0, 10, 10}, motion);
  CHECK(m.index == 0);
  CHECK(best_match({0, 0, 10, 10}, {}).index == -1);
}

TEST_CASE("output length and order follow the appearance stream") {
  std::mt19937 gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto app = oracle::random_stream(gen, 10, "A");
    const auto mot = oracle::random_stream(gen, 10, "motion");
    const auto out = fuse_streams(app, mot, FusionConfig{});
    REQUIRE(out.size() == app.size());
    for (std::size_t k = 0; k < out.size(); ++k) CHECK(out[k].class_id == app[k].class_id);
  }
}

TEST_CASE("fusion agrees with the exhaustive matcher") {
  std::mt19937 gen(99);
  for (int i = 0; i < 200; ++i) {
    const auto app = oracle::random_stream(gen, 10, "A");
    const auto mvx = oracle::random_stream(gen, 10, "m");
    const auto mvy = oracle::random_stream(gen, 10, "m");
    for (bool use_max : {false, true}) {
      FusionConfig cfg;
      cfg.method = use_max ? FusionMethod::Max : FusionMethod::Mean;
      const auto motion = oracle::fuse(mvx, mvy, cfg.iou_threshold, false);
      CHECK(fuse_motion(mvx, mvy, cfg) == motion);
      CHECK(fuse_frame(app, mvx, mvy, cfg) == oracle::fuse(app, motion, cfg.iou_threshold, use_max));
    }
  }
}

TEST_CASE("config validation") {
  FusionConfig cfg;
  cfg.iou_threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.iou_threshold = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(parse_fusion_method("max") == FusionMethod::Max);
  CHECK_THROWS_AS(parse_fusion_method("median"), std::invalid_argument);
}
