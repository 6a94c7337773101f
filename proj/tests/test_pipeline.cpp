#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "actrack/eval.hpp"
#include "actrack/pipeline.hpp"
#include "actrack/synth.hpp"
#include "temp_dir.hpp"

using namespace actrack;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Fixture {
  explicit Fixture(const std::string& scenario, int frames = 0) : dir(scenario) {
    scene = synth::generate(synth::preset(scenario, frames, 3));
    write_frames(dir / "frames", scene.frames);
    write_ground_truth(dir / "gt.jsonl", scene.ground_truth);
    write_detections(dir / "app.jsonl", synth::corrupt_detections(scene.ground_truth, 2, 0, 1, true));
    write_detections(dir / "mvx.jsonl", synth::corrupt_detections(scene.ground_truth, 4, 0.1, 2, true));
    write_detections(dir / "mvy.jsonl", synth::corrupt_detections(scene.ground_truth, 4, 0.1, 3, true));
  }

  pipeline::PipelineConfig config(const std::string& out) const {
    pipeline::PipelineConfig pc;
    pc.frames_dir = dir / "frames";
    pc.appearance = dir / "app.jsonl";
    pc.mvx = dir / "mvx.jsonl";
    pc.mvy = dir / "mvy.jsonl";
    pc.out_dir = dir / out;
    return pc;
  }

  TempDir dir;
  synth::Scene scene;
};

}  // namespace

TEST_CASE("sequence fusion covers the appearance frames") {
  FrameDetections app, mvx, mvy;
  app[0] = {{0, "a", 0.8, {0, 0, 10, 10}}};
  app[2] = {{2, "a", 0.6, {-5, 0, 10, 10}}};
  mvx[0] = {{0, "m", 1.0, {2, 0, 12, 10}}};
  mvx[1] = {{1, "m", 1.0, {2, 0, 12, 10}}};
  const FrameDetections out = pipeline::fuse_sequence(app, mvx, mvy, FusionConfig{}, 100, 100);
  REQUIRE(out.size() == 2);
  CHECK(out.at(0)[0].box == BoundingBox{1, 0, 11, 10});
  CHECK(out.at(0)[0].score == doctest::Approx(0.9));
  CHECK(out.at(2)[0].box == BoundingBox{0, 0, 10, 10});  // clipped
}

TEST_CASE("motion detections come from moving blocks") {
  MotionField f = make_motion_field(64, 64, 16, 8);
  f.dx(1, 1) = 3;
  f.dx(2, 1) = 3;
  const auto d = pipeline::motion_detections(f, true, 7, 64, 64);
  REQUIRE(d.size() == 1);
  CHECK(d[0].frame == 7);
  CHECK(d[0].box == BoundingBox{16, 16, 48, 32});
  CHECK(pipeline::motion_detections(f, false, 7, 64, 64).empty());
}

TEST_CASE("tracker follows detections through a linear scene") {
  Fixture fx("linear", 40);
  const auto tracks = pipeline::track_sequence(read_frames(fx.dir / "frames"),
                                               read_detections(fx.dir / "app.jsonl"),
                                               pipeline::TrackOptions{});
  const auto r = eval::evaluate_tracks(tracks, fx.scene.ground_truth, 0);
  CHECK(r.frames_tracked == 40);
  CHECK(r.mean_iou >= 0.7);
  for (const auto& t : tracks) CHECK(t.target_id == 0);
}

TEST_CASE("one target per actor in a two-actor scene") {
  Fixture fx("multi", 30);
  const auto tracks = pipeline::track_sequence(read_frames(fx.dir / "frames"),
                                               read_detections(fx.dir / "app.jsonl"),
                                               pipeline::TrackOptions{});
  std::set<int> ids;
  for (const auto& t : tracks) ids.insert(t.target_id);
  CHECK(ids == std::set<int>{0, 1});
  for (int id : {0, 1}) CHECK(eval::evaluate_tracks(tracks, fx.scene.ground_truth, id).mean_iou >= 0.5);
}

TEST_CASE("target cap is respected") {
  pipeline::TrackOptions opt;
  opt.max_targets = 1;
  pipeline::SequenceTracker st(opt);
  const Image frame = synth::make_texture(100, 100, 1, 1);
  const std::vector<Detection> d = {{0, "a", 1, {0, 0, 20, 20}}, {0, "b", 1, {50, 50, 70, 70}}};
  CHECK(st.step(0, frame, d).size() == 1);
  CHECK(st.target_count() == 1);
}

TEST_CASE("pipeline writes its outputs and is reproducible") {
  Fixture fx("linear", 30);
  const auto a = pipeline::run_pipeline(fx.config("run_a"));
  const auto b = pipeline::run_pipeline(fx.config("run_b"));
  for (const char* f : {"fused.jsonl", "tracks.jsonl", "speed.json", "speed.txt"}) {
    CHECK(fs::exists(fx.dir / "run_a" / f));
  }
  CHECK(slurp(fx.dir / "run_a" / "fused.jsonl") == slurp(fx.dir / "run_b" / "fused.jsonl"));
  CHECK(slurp(fx.dir / "run_a" / "tracks.jsonl") == slurp(fx.dir / "run_b" / "tracks.jsonl"));
  CHECK(a.tracks == b.tracks);
  CHECK(a.speed.fps > 0.0);
  REQUIRE(a.speed.stages.size() == 3);
  CHECK(a.speed.stages[0].name == "decode");
}

TEST_CASE("live motion and sidecar motion") {
  Fixture fx("linear", 12);
  auto pc = fx.config("live");
  pc.mvx.clear();
  pc.mvy.clear();
  pc.live_motion = true;
  const auto live = pipeline::run_pipeline(pc);
  CHECK(live.speed.stages.size() == 4);
  CHECK_FALSE(live.tracks.empty());

  std::map<int, MotionField> fields;
  const FrameSequence seq = read_frames(fx.dir / "frames");
  for (std::size_t f = 1; f < seq.size(); ++f) {
    fields.emplace(static_cast<int>(f), estimate_motion(seq.load(f - 1), seq.load(f)));
  }
  write_mv_sidecar(fx.dir / "mv.txt", fields);
  auto ps = fx.config("side");
  ps.mvx.clear();
  ps.mvy.clear();
  ps.mv_sidecar = fx.dir / "mv.txt";
  const auto side = pipeline::run_pipeline(ps);
  CHECK(side.fused == live.fused);
}

TEST_CASE("external detector command") {
  Fixture fx("linear", 10);
  std::ofstream(fx.dir / "det.sh") << "#!/bin/sh\ncp '" << (fx.dir / "app.jsonl").string() << "' \"$2\"\n";
  fs::permissions(fx.dir / "det.sh", fs::perms::owner_all);
  auto pc = fx.config("ext");
  pc.appearance.clear();
  pc.detector_command = (fx.dir / "det.sh").string();
  const auto out = pipeline::run_pipeline(pc);
  CHECK(out.fused.size() == 10);
  auto bad = fx.config("bad");
  bad.appearance.clear();
  bad.detector_command = "false";
  CHECK_THROWS(pipeline::run_pipeline(bad));
}
