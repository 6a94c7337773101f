#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "actrack/eval.hpp"
#include "actrack/fusion.hpp"
#include "actrack/media_io.hpp"
#include "actrack/tracker.hpp"

namespace actrack::pipeline {

/// Fuses every frame that has appearance detections. Boxes are clipped to
/// width x height when both are positive.
FrameDetections fuse_sequence(const FrameDetections& appearance, const FrameDetections& mvx,
                              const FrameDetections& mvy, const FusionConfig& cfg, int width = 0,
                              int height = 0);

struct TrackOptions {
  TrackerConfig tracker;
  /// A detection starts a new target when its IOU with every tracked box is
  /// at or below this value.
  double spawn_iou = 0.3;
  int max_targets = 16;
};

/// Frame-by-frame multi-target tracking driven by fused detections.
class SequenceTracker {
 public:
  explicit SequenceTracker(TrackOptions options);

  /// Advances existing targets on this frame, then starts targets for
  /// unclaimed detections. Returns one record per target, by target id.
  std::vector<TrackRecord> step(int frame_index, const Image& frame,
                                const std::vector<Detection>& detections);

  std::size_t target_count() const { return states_.size(); }

 private:
  struct TargetInfo {
    std::string class_id;
    double score = 0.0;
  };

  TrackOptions options_;
  std::vector<TrackerState> states_;
  std::vector<TargetInfo> info_;
  int next_id_ = 0;
};

std::vector<TrackRecord> track_sequence(const FrameSequence& frames, const FrameDetections& fused,
                                        const TrackOptions& options);

/// Motion-stream detections derived from a block motion field.
std::vector<Detection> motion_detections(const MotionField& field, bool use_x, int frame_index,
                                         int width, int height);

struct PipelineConfig {
  std::filesystem::path frames_dir;
  std::filesystem::path appearance;
  std::filesystem::path mvx;
  std::filesystem::path mvy;
  /// Derive the motion streams from block matching instead of files.
  bool live_motion = false;
  /// Motion fields from an external source (codec MVs); implies live_motion.
  std::filesystem::path mv_sidecar;
  int block_size = 16;
  int search_radius = 8;
  /// External detector run as `<cmd> <frames_dir> <output.jsonl>` to
  /// produce the appearance stream.
  std::string detector_command;
  FusionConfig fusion;
  TrackOptions track;
  std::filesystem::path out_dir;
};

struct PipelineOutput {
  FrameDetections fused;
  std::vector<TrackRecord> tracks;
  eval::SpeedReport speed;
};

/// Writes fused.jsonl, tracks.jsonl, speed.json and speed.txt into out_dir.
PipelineOutput run_pipeline(const PipelineConfig& config);

}  // namespace actrack::pipeline
