#include "actrack/fusion.hpp"

#include <stdexcept>

namespace actrack {

void FusionConfig::validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw std::invalid_argument("iou threshold must be in (0,1), got " +
                                std::to_string(iou_threshold));
  }
}

FusionMethod parse_fusion_method(const std::string& s) {
  if (s == "mean") return FusionMethod::Mean;
  if (s == "max") return FusionMethod::Max;
  throw std::invalid_argument("unknown fusion method '" + s + "' (expected mean or max)");
}

std::string to_string(FusionMethod m) { return m == FusionMethod::Mean ? "mean" : "max"; }

BestMatch best_match(const BoundingBox& box, std::span<const Detection> candidates) {
  BestMatch best;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const double v = iou(box, candidates[j].box);
    if (best.index < 0 || v > best.iou) {
      best.index = static_cast<int>(j);
      best.iou = v;
    }
  }
  return best;
}

namespace {

std::vector<Detection> match_and_fuse(std::span<const Detection> basis,
                                      std::span<const Detection> others, double threshold,
                                      FusionMethod method) {
  std::vector<Detection> out;
  out.reserve(basis.size());
  for (const Detection& d : basis) {
    const BestMatch m = best_match(d.box, others);
    if (m.index < 0 || !(m.iou > threshold)) {
      out.push_back(d);
      continue;
    }
    const Detection& partner = others[static_cast<std::size_t>(m.index)];
    Detection fused = d;
    fused.box = method == FusionMethod::Max ? max_fuse(d.box, partner.box)
                                            : mean_fuse(d.box, partner.box);
    fused.score = (d.score + partner.score) / 2.0;
    out.push_back(std::move(fused));
  }
  return out;
}

}  // namespace

std::vector<Detection> fuse_motion(std::span<const Detection> mvx, std::span<const Detection> mvy,
                                   const FusionConfig& cfg) {
  cfg.validate();
  if (cfg.motion_basis == MotionBasis::YOverX) {
    return match_and_fuse(mvy, mvx, cfg.iou_threshold, FusionMethod::Mean);
  }
  return match_and_fuse(mvx, mvy, cfg.iou_threshold, FusionMethod::Mean);
}

std::vector<Detection> fuse_streams(std::span<const Detection> appearance,
                                    std::span<const Detection> motion, const FusionConfig& cfg) {
  cfg.validate();
  return match_and_fuse(appearance, motion, cfg.iou_threshold, cfg.method);
}

std::vector<Detection> fuse_frame(std::span<const Detection> appearance,
                                  std::span<const Detection> mvx, std::span<const Detection> mvy,
                                  const FusionConfig& cfg) {
  const std::vector<Detection> motion = fuse_motion(mvx, mvy, cfg);
  return fuse_streams(appearance, motion, cfg);
}

}  // namespace actrack
