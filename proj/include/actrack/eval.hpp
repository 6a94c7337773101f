#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "actrack/fusion.hpp"
#include "actrack/media_io.hpp"

namespace actrack::eval {

struct ClassCounts {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  int ground_truth = 0;
};

/// Frame-level detection metrics ("frame-AP"): all-points interpolated AP.
struct DetEvalReport {
  double delta = 0.5;
  std::map<std::string, double> average_precision;
  std::map<std::string, ClassCounts> counts;
  /// Classes that appear in predictions but not in the ground truth. They
  /// score AP 0 and do not enter the mAP.
  std::vector<std::string> classes_without_ground_truth;
  double mean_ap = 0.0;
};

/// Precision/recall points in descending-score order.
struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

/// Area under the monotone (upper envelope) precision-recall curve.
double interpolated_ap(const std::vector<PrPoint>& curve);

DetEvalReport evaluate_detections(const std::vector<Detection>& predictions,
                                  const std::vector<GroundTruthRecord>& ground_truth, double delta);

struct TrackEvalReport {
  int target_id = 0;
  int frames_tracked = 0;
  int frames_total = 0;
  double mean_iou = 0.0;
  /// Longest recovery, in frames, after the target became visible again.
  int reacquisition_latency = 0;
  /// One entry per invisible-to-visible transition.
  std::vector<int> reacquisition_events;
  bool all_reacquired = true;
};

/// Frames without a track record count as IOU 0.
TrackEvalReport evaluate_tracks(const std::vector<TrackRecord>& tracks,
                                const std::vector<GroundTruthRecord>& ground_truth, int target_id,
                                double iou_floor = 0.5);

struct StageTiming {
  std::string name;
  double median_ms = 0.0;
};

struct SpeedReport {
  std::vector<StageTiming> stages;
  double total_ms = 0.0;
  double fps = 0.0;
  std::size_t frames_measured = 0;
};

struct Stage {
  std::string name;
  std::function<void(std::size_t frame)> run;
};

/// Runs every stage on frames 0..n_frames-1 in order and reports per-stage
/// median wall-clock time over the frames after the warm-up.
SpeedReport measure_speed(const std::vector<Stage>& stages, std::size_t n_frames,
                          std::size_t warmup = 10);

/// Builds a report from already collected per-frame timings (ms).
SpeedReport summarize_timings(const std::vector<std::string>& names,
                              const std::vector<std::vector<double>>& per_stage_ms,
                              std::size_t warmup);

std::string to_json(const DetEvalReport& r, const std::string& method = "");
std::string to_json(const TrackEvalReport& r);
std::string to_json(const SpeedReport& r);

/// Plain-text table, one row per method and one AP column per delta.
std::string format_map_table(const std::vector<std::pair<std::string, std::vector<DetEvalReport>>>& rows);
std::string format_speed_table(const SpeedReport& r);

}  // namespace actrack::eval
