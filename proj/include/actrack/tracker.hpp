#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "actrack/boxes.hpp"
#include "actrack/image.hpp"
#include "actrack/random.hpp"

namespace actrack {

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
  friend bool operator==(const Velocity&, const Velocity&) = default;
};

/// Per-channel 256-bin histogram; each channel's bins sum to 1.
using Histogram = std::vector<double>;

Histogram build_histogram(const Image& patch);

/// Histogram intersection averaged over channels, in [0,1].
double histogram_intersection(const Histogram& a, const Histogram& b);

struct TrackerConfig {
  double ft_threshold = 0.90;
  std::size_t n_packs = 5;
  std::size_t n_coyotes = 8;
  std::size_t iterations_per_frame = 40;
  double expansion_factor = 2.0;
  /// Search window never grows past this multiple of the target size.
  double max_expansion = 8.0;
  /// Width/height search range as a fraction of the template size.
  double size_tolerance = 0.2;
  bool freeze_size = false;
  /// A frame's swarm stops as soon as a window reaches this fitness.
  double early_exit_fitness = 0.98;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrackerState {
  int target_id = 0;
  int frame_width = 0;
  int frame_height = 0;
  Image template_patch;
  CenterBox position;
  Velocity velocity;
  CenterBox search_space;
  bool occluded = false;
  int occluded_frames = 0;
  /// Frames since the position was last accepted (0 right after acceptance).
  int lost_frames = 0;
  double best_fitness = 1.0;
  double histogram_similarity = 1.0;
  Histogram model_histogram;
  int model_frames = 0;
  Rng rng;
};

TrackerState init_tracker(const Image& frame, const BoundingBox& box, const TrackerConfig& cfg,
                          int target_id = 0);

/// Predicted search window for the next frame: the last accepted center moved
/// by the velocity once per frame since acceptance, kept inside the frame.
CenterBox advance_search_space(const TrackerState& state);

/// Euclidean distance between equally sized patches over all channels.
double patch_distance(const Image& candidate, const Image& templ);

/// 1 - min(1, rms / range), rms = distance / sqrt(sample count).
double fitness_from_distance(double distance, std::size_t samples, double range = 255.0);

/// Integer pixel window scored for a candidate, clipped to the frame.
PixelRect window_rect(const CenterBox& window, int frame_width, int frame_height);

/// Similarity in [0,1] between the candidate window and the target template.
double fitness(const CenterBox& candidate_window, const Image& frame, const TrackerState& state);

/// Marks the target lost and grows the search window.
void handle_occlusion(TrackerState& state, const TrackerConfig& cfg);

struct TrackStep {
  int target_id = 0;
  BoundingBox box;
  double fitness = 0.0;
  bool occluded = false;
};

TrackStep track_frame(TrackerState& state, const Image& frame, const TrackerConfig& cfg);

/// One swarm per target; targets are advanced concurrently.
std::vector<TrackStep> track_multi(std::span<TrackerState> states, const Image& frame,
                                   const TrackerConfig& cfg);

}  // namespace actrack
