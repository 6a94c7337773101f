#include "actrack/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace actrack {

bool BoundingBox::valid() const {
  return std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) &&
         std::isfinite(y_max) && x_min <= x_max && y_min <= y_max;
}

void require_valid(const BoundingBox& b, const char* what) {
  if (!b.valid()) {
    throw std::invalid_argument(std::string(what) + " is not a valid box: " + to_string(b));
  }
}

CenterBox to_center(const BoundingBox& b) {
  return {(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0, b.width(), b.height()};
}

BoundingBox to_corner(const CenterBox& c) {
  return {c.cx - c.w / 2.0, c.cy - c.h / 2.0, c.cx + c.w / 2.0, c.cy + c.h / 2.0};
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

BoundingBox mean_fuse(const BoundingBox& a, const BoundingBox& b) {
  return {(a.x_min + b.x_min) / 2.0, (a.y_min + b.y_min) / 2.0, (a.x_max + b.x_max) / 2.0,
          (a.y_max + b.y_max) / 2.0};
}

BoundingBox max_fuse(const BoundingBox& a, const BoundingBox& b) {
  return {std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min), std::max(a.x_max, b.x_max),
          std::max(a.y_max, b.y_max)};
}

BoundingBox clip(const BoundingBox& b, double width, double height) {
  return {std::clamp(b.x_min, 0.0, width), std::clamp(b.y_min, 0.0, height),
          std::clamp(b.x_max, 0.0, width), std::clamp(b.y_max, 0.0, height)};
}

std::string to_string(const BoundingBox& b) {
  std::ostringstream os;
  os << '(' << b.x_min << ',' << b.y_min << ',' << b.x_max << ',' << b.y_max << ')';
  return os.str();
}

}  // namespace actrack
