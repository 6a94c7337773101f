#pragma once

#include <span>
#include <string>
#include <vector>

#include "actrack/boxes.hpp"

namespace actrack {

/// One stream's output for one box in one frame.
struct Detection {
  int frame = 0;
  std::string class_id;
  double score = 0.0;
  BoundingBox box;

  friend bool operator==(const Detection&, const Detection&) = default;
};

enum class FusionMethod { Mean, Max };

/// Which motion stream drives the X/Y motion match. XOverY iterates the
/// X-motion boxes and looks up their best Y-motion partner.
enum class MotionBasis { XOverY, YOverX };

struct FusionConfig {
  double iou_threshold = 0.3;
  FusionMethod method = FusionMethod::Mean;
  MotionBasis motion_basis = MotionBasis::XOverY;

  void validate() const;
};

FusionMethod parse_fusion_method(const std::string& s);
std::string to_string(FusionMethod m);

/// Index of the candidate with maximal IOU against box, lowest index on ties,
/// together with that IOU. Returns {-1, 0} for an empty candidate list.
struct BestMatch {
  int index = -1;
  double iou = 0.0;
};
BestMatch best_match(const BoundingBox& box, std::span<const Detection> candidates);

/// Combines the two motion streams. Each basis box is averaged with its best
/// partner when their IOU exceeds the threshold and passes through otherwise.
std::vector<Detection> fuse_motion(std::span<const Detection> mvx, std::span<const Detection> mvy,
                                   const FusionConfig& cfg);

/// Final appearance/motion fusion. Output has exactly one entry per appearance
/// box, keeps the appearance class, and averages scores when a match is fused.
std::vector<Detection> fuse_streams(std::span<const Detection> appearance,
                                    std::span<const Detection> motion, const FusionConfig& cfg);

/// fuse_motion followed by fuse_streams for one frame.
std::vector<Detection> fuse_frame(std::span<const Detection> appearance,
                                  std::span<const Detection> mvx, std::span<const Detection> mvy,
                                  const FusionConfig& cfg);

}  // namespace actrack
