#include "actrack/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "actrack/motion.hpp"

namespace actrack::pipeline {

namespace fs = std::filesystem;

namespace {

const std::vector<Detection>& frame_or_empty(const FrameDetections& m, int frame) {
  static const std::vector<Detection> empty;
  const auto it = m.find(frame);
  return it == m.end() ? empty : it->second;
}

std::vector<Detection> fuse_one(const std::vector<Detection>& appearance,
                                const std::vector<Detection>& mvx,
                                const std::vector<Detection>& mvy, const FusionConfig& cfg,
                                int width, int height) {
  std::vector<Detection> fused = fuse_frame(appearance, mvx, mvy, cfg);
  if (width > 0 && height > 0) {
    for (auto& d : fused) d.box = clip(d.box, width, height);
  }
  return fused;
}

}  // namespace

FrameDetections fuse_sequence(const FrameDetections& appearance, const FrameDetections& mvx,
                              const FrameDetections& mvy, const FusionConfig& cfg, int width,
                              int height) {
  cfg.validate();
  FrameDetections out;
  for (const auto& [frame, dets] : appearance) {
    out[frame] = fuse_one(dets, frame_or_empty(mvx, frame), frame_or_empty(mvy, frame), cfg,
                          width, height);
  }
  return out;
}

SequenceTracker::SequenceTracker(TrackOptions options) : options_(std::move(options)) {
  options_.tracker.validate();
}

std::vector<TrackRecord> SequenceTracker::step(int frame_index, const Image& frame,
                                               const std::vector<Detection>& detections) {
  std::vector<TrackStep> steps = track_multi(states_, frame, options_.tracker);
  std::vector<double> fitness(states_.size());
  std::vector<bool> occluded(states_.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    fitness[i] = steps[i].fitness;
    occluded[i] = steps[i].occluded;
  }

  const double fw = frame.width();
  const double fh = frame.height();
  for (const Detection& d : detections) {
    if (static_cast<int>(states_.size()) >= options_.max_targets) break;
    const BoundingBox box = clip(d.box, fw, fh);
    bool claimed = false;
    for (const TrackerState& s : states_) {
      if (iou(box, to_corner(s.position)) > options_.spawn_iou) claimed = true;
      // A lost target may be about to reappear anywhere in its search window.
      if (s.occluded || s.lost_frames > 0) {
        const CenterBox c = to_center(box);
        const BoundingBox window = to_corner(s.search_space);
        if (c.cx >= window.x_min && c.cx <= window.x_max && c.cy >= window.y_min &&
            c.cy <= window.y_max) {
          claimed = true;
        }
      }
      if (claimed) break;
    }
    if (claimed) continue;
    if (std::lround(box.width()) < 1 || std::lround(box.height()) < 1) continue;
    states_.push_back(init_tracker(frame, box, options_.tracker, next_id_++));
    info_.push_back({d.class_id, d.score});
    fitness.push_back(1.0);
    occluded.push_back(false);
  }

  std::vector<TrackRecord> records;
  records.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    TrackRecord r;
    r.frame = frame_index;
    r.class_id = info_[i].class_id;
    r.score = info_[i].score;
    r.box = clip(to_corner(states_[i].position), fw, fh);
    r.target_id = states_[i].target_id;
    r.fitness = std::clamp(fitness[i], 0.0, 1.0);
    r.occluded = occluded[i];
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TrackRecord> track_sequence(const FrameSequence& frames, const FrameDetections& fused,
                                        const TrackOptions& options) {
  SequenceTracker tracker(options);
  std::vector<TrackRecord> out;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const Image frame = frames.load(f);
    const int index = static_cast<int>(f);
    auto records = tracker.step(index, frame, frame_or_empty(fused, index));
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

std::vector<Detection> motion_detections(const MotionField& field, bool use_x, int frame_index,
                                         int width, int height) {
  std::vector<Detection> out;
  for (const BoundingBox& b : motion_blobs(field, use_x, width, height)) {
    out.push_back(Detection{frame_index, "motion", 1.0, b});
  }
  return out;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

}  // namespace

PipelineOutput run_pipeline(const PipelineConfig& config) {
  config.fusion.validate();
  const FrameSequence frames = read_frames(config.frames_dir);
  fs::create_directories(config.out_dir);

  FrameDetections appearance;
  if (!config.detector_command.empty()) {
    const fs::path produced = config.out_dir / "appearance.detector.jsonl";
    const std::string cmd = config.detector_command + " " + shell_quote(config.frames_dir.string()) +
                            " " + shell_quote(produced.string());
    if (std::system(cmd.c_str()) != 0) {
      throw std::runtime_error("detector command failed: " + config.detector_command);
    }
    appearance = read_detections(produced);
  } else {
    appearance = read_detections(config.appearance);
  }

  const bool use_sidecar = !config.mv_sidecar.empty();
  const bool live = config.live_motion || use_sidecar;
  FrameDetections mvx_file, mvy_file;
  if (!live) {
    if (!config.mvx.empty()) mvx_file = read_detections(config.mvx);
    if (!config.mvy.empty()) mvy_file = read_detections(config.mvy);
  }
  std::map<int, MotionField> sidecar;
  if (use_sidecar) {
    sidecar = read_mv_sidecar(config.mv_sidecar, frames.width(), frames.height(),
                              config.block_size, config.search_radius);
  }

  PipelineOutput out;
  SequenceTracker tracker(config.track);
  std::vector<std::string> stage_names = {"decode"};
  if (live) stage_names.push_back("motion vectors");
  stage_names.push_back("fusion");
  stage_names.push_back("tracking");
  std::vector<std::vector<double>> timings(stage_names.size());

  std::optional<Image> previous;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const int index = static_cast<int>(f);
    std::size_t stage = 0;

    auto t0 = std::chrono::steady_clock::now();
    Image frame = frames.load(f);
    timings[stage++].push_back(elapsed_ms(t0));

    std::vector<Detection> live_mvx, live_mvy;
    if (live) {
      t0 = std::chrono::steady_clock::now();
      std::optional<MotionField> field;
      if (use_sidecar) {
        const auto it = sidecar.find(index);
        if (it != sidecar.end()) field = it->second;
      } else if (previous) {
        field = estimate_motion(*previous, frame, config.block_size, config.search_radius);
      }
      if (field) {
        live_mvx = motion_detections(*field, true, index, frames.width(), frames.height());
        live_mvy = motion_detections(*field, false, index, frames.width(), frames.height());
      }
      timings[stage++].push_back(elapsed_ms(t0));
    }

    t0 = std::chrono::steady_clock::now();
    const auto& app = frame_or_empty(appearance, index);
    std::vector<Detection> fused;
    if (!app.empty()) {
      fused = fuse_one(app, live ? live_mvx : frame_or_empty(mvx_file, index),
                       live ? live_mvy : frame_or_empty(mvy_file, index), config.fusion,
                       frames.width(), frames.height());
    }
    timings[stage++].push_back(elapsed_ms(t0));

    t0 = std::chrono::steady_clock::now();
    auto records = tracker.step(index, frame, fused);
    timings[stage++].push_back(elapsed_ms(t0));

    if (!app.empty()) out.fused[index] = std::move(fused);
    out.tracks.insert(out.tracks.end(), records.begin(), records.end());
    if (live && !use_sidecar) previous = std::move(frame);
  }

  out.speed = eval::summarize_timings(stage_names, timings, 10);
  write_detections(config.out_dir / "fused.jsonl", out.fused);
  write_tracks(config.out_dir / "tracks.jsonl", out.tracks);
  {
    std::ofstream js(config.out_dir / "speed.json");
    js << eval::to_json(out.speed) << '\n';
    std::ofstream txt(config.out_dir / "speed.txt");
    txt << eval::format_speed_table(out.speed);
  }
  return out;
}

}  // namespace actrack::pipeline
