#pragma once

#include <string>

namespace actrack {

/// Axis-aligned rectangle in pixel coordinates, origin top-left, y down.
/// Corner form is canonical; CenterBox is a view used by the tracker.
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool valid() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct CenterBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const CenterBox&, const CenterBox&) = default;
};

CenterBox to_center(const BoundingBox& b);
BoundingBox to_corner(const CenterBox& c);

/// Throws std::invalid_argument when coordinates are non-finite or inverted.
void require_valid(const BoundingBox& b, const char* what = "box");

/// Intersection over union. Two zero-area boxes give 0.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Coordinate-wise arithmetic mean.
BoundingBox mean_fuse(const BoundingBox& a, const BoundingBox& b);

/// Coordinate-wise maximum of the four corner values (not the larger box).
BoundingBox max_fuse(const BoundingBox& a, const BoundingBox& b);

/// Clip to [0,width]x[0,height]. A box entirely outside collapses onto the border.
BoundingBox clip(const BoundingBox& b, double width, double height);

std::string to_string(const BoundingBox& b);

}  // namespace actrack
