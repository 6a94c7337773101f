#include "actrack/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace actrack {

MotionField make_motion_field(int frame_width, int frame_height, int block_size,
                              int search_radius) {
  if (block_size < 1) throw std::invalid_argument("motion: block size must be >= 1");
  if (search_radius < 0) throw std::invalid_argument("motion: search radius must be >= 0");
  MotionField f;
  f.block_size = block_size;
  f.search_radius = search_radius;
  f.grid_w = (frame_width + block_size - 1) / block_size;
  f.grid_h = (frame_height + block_size - 1) / block_size;
  f.mvx.assign(static_cast<std::size_t>(f.grid_w) * f.grid_h, 0.0f);
  f.mvy.assign(f.mvx.size(), 0.0f);
  return f;
}

namespace {

bool better_tie(int dx, int dy, int best_dx, int best_dy) {
  const int l1 = std::abs(dx) + std::abs(dy);
  const int best_l1 = std::abs(best_dx) + std::abs(best_dy);
  if (l1 != best_l1) return l1 < best_l1;
  if (dy != best_dy) return dy < best_dy;
  return dx < best_dx;
}

}  // namespace

MotionField estimate_motion(const Image& prev_in, const Image& curr_in, int block_size,
                            int search_radius) {
  if (prev_in.width() != curr_in.width() || prev_in.height() != curr_in.height()) {
    throw std::invalid_argument("motion: frame size mismatch");
  }
  const Image prev = to_gray(prev_in);
  const Image curr = to_gray(curr_in);
  const int w = curr.width();
  const int h = curr.height();
  MotionField field = make_motion_field(w, h, block_size, search_radius);

  for (int by = 0; by < field.grid_h; ++by) {
    for (int bx = 0; bx < field.grid_w; ++bx) {
      const int x0 = bx * block_size;
      const int y0 = by * block_size;
      const int bw = std::min(block_size, w - x0);
      const int bh = std::min(block_size, h - y0);
      // The reference block (x0 - dx, y0 - dy) must lie inside prev.
      const int dx_lo = std::max(-search_radius, x0 + bw - w);
      const int dx_hi = std::min(search_radius, x0);
      const int dy_lo = std::max(-search_radius, y0 + bh - h);
      const int dy_hi = std::min(search_radius, y0);

      long best_sad = std::numeric_limits<long>::max();
      int best_dx = 0;
      int best_dy = 0;
      for (int dy = dy_lo; dy <= dy_hi; ++dy) {
        for (int dx = dx_lo; dx <= dx_hi; ++dx) {
          long sad = 0;
          for (int y = 0; y < bh && sad <= best_sad; ++y) {
            const std::uint8_t* c = curr.row(y0 + y) + x0;
            const std::uint8_t* p = prev.row(y0 + y - dy) + (x0 - dx);
            for (int x = 0; x < bw; ++x) sad += std::abs(static_cast<int>(c[x]) - static_cast<int>(p[x]));
          }
          if (sad < best_sad || (sad == best_sad && better_tie(dx, dy, best_dx, best_dy))) {
            best_sad = sad;
            best_dx = dx;
            best_dy = dy;
          }
        }
      }
      field.dx(bx, by) = static_cast<float>(best_dx);
      field.dy(bx, by) = static_cast<float>(best_dy);
    }
  }
  return field;
}

namespace {

std::uint8_t encode_component(float v, int radius) {
  if (radius <= 0) return 128;
  const long level = std::lround(128.0 + static_cast<double>(v) * 128.0 / radius);
  return static_cast<std::uint8_t>(std::clamp(level, 0L, 255L));
}

}  // namespace

std::pair<Image, Image> render_motion(const MotionField& field, int frame_width,
                                      int frame_height) {
  Image xs(frame_width, frame_height, 1, 128);
  Image ys(frame_width, frame_height, 1, 128);
  for (int y = 0; y < frame_height; ++y) {
    const int by = std::min(y / field.block_size, field.grid_h - 1);
    for (int x = 0; x < frame_width; ++x) {
      const int bx = std::min(x / field.block_size, field.grid_w - 1);
      xs.at(x, y) = encode_component(field.dx(bx, by), field.search_radius);
      ys.at(x, y) = encode_component(field.dy(bx, by), field.search_radius);
    }
  }
  return {std::move(xs), std::move(ys)};
}

std::vector<BoundingBox> motion_blobs(const MotionField& field, bool use_x, int frame_width,
                                      int frame_height, int min_blocks) {
  const int gw = field.grid_w;
  const int gh = field.grid_h;
  const auto moving = [&](int bx, int by) {
    return (use_x ? field.dx(bx, by) : field.dy(bx, by)) != 0.0f;
  };
  std::vector<char> seen(static_cast<std::size_t>(gw) * gh, 0);
  std::vector<BoundingBox> boxes;
  std::vector<std::pair<int, int>> stack;
  for (int by = 0; by < gh; ++by) {
    for (int bx = 0; bx < gw; ++bx) {
      const std::size_t i = static_cast<std::size_t>(by) * gw + bx;
      if (seen[i] || !moving(bx, by)) continue;
      int min_x = bx, max_x = bx, min_y = by, max_y = by, count = 0;
      seen[i] = 1;
      stack.assign(1, {bx, by});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++count;
        min_x = std::min(min_x, cx);
        max_x = std::max(max_x, cx);
        min_y = std::min(min_y, cy);
        max_y = std::max(max_y, cy);
        const int nbr[4][2] = {{cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1}, {cx, cy + 1}};
        for (const auto& n : nbr) {
          if (n[0] < 0 || n[1] < 0 || n[0] >= gw || n[1] >= gh) continue;
          const std::size_t j = static_cast<std::size_t>(n[1]) * gw + n[0];
          if (seen[j] || !moving(n[0], n[1])) continue;
          seen[j] = 1;
          stack.push_back({n[0], n[1]});
        }
      }
      if (count < min_blocks) continue;
      const int bs = field.block_size;
      boxes.push_back({static_cast<double>(min_x * bs), static_cast<double>(min_y * bs),
                       static_cast<double>(std::min((max_x + 1) * bs, frame_width)),
                       static_cast<double>(std::min((max_y + 1) * bs, frame_height))});
    }
  }
  return boxes;
}

}  // namespace actrack
