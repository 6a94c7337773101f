#pragma once

#include <utility>
#include <vector>

#include "actrack/boxes.hpp"
#include "actrack/image.hpp"

namespace actrack {

/// Block-level displacement field. Vector (dx, dy) of a block means its
/// content sat at (x - dx, y - dy) in the previous frame.
struct MotionField {
  int block_size = 16;
  int search_radius = 8;
  int grid_w = 0;
  int grid_h = 0;
  std::vector<float> mvx;  // grid_h rows of grid_w
  std::vector<float> mvy;

  float& dx(int bx, int by) { return mvx[static_cast<std::size_t>(by) * grid_w + bx]; }
  float& dy(int bx, int by) { return mvy[static_cast<std::size_t>(by) * grid_w + bx]; }
  float dx(int bx, int by) const { return mvx[static_cast<std::size_t>(by) * grid_w + bx]; }
  float dy(int bx, int by) const { return mvy[static_cast<std::size_t>(by) * grid_w + bx]; }

  friend bool operator==(const MotionField&, const MotionField&) = default;
};

MotionField make_motion_field(int frame_width, int frame_height, int block_size, int search_radius);

/// Full-search SAD block matching of curr against prev. RGB input is
/// converted to luma. Ties prefer the smallest |dx|+|dy|, then dy, then dx.
MotionField estimate_motion(const Image& prev, const Image& curr, int block_size = 16,
                            int search_radius = 8);

/// Block-constant gray images of the X and Y components:
/// 128 + v * 128 / search_radius, rounded and clamped to [0,255].
std::pair<Image, Image> render_motion(const MotionField& field, int frame_width, int frame_height);

/// Boxes around 4-connected groups of blocks whose component is non-zero.
/// A crude stand-in detector for rendered motion frames.
std::vector<BoundingBox> motion_blobs(const MotionField& field, bool use_x, int frame_width,
                                      int frame_height, int min_blocks = 1);

}  // namespace actrack
