#pragma once

#include <cstdint>
#include <vector>

namespace actrack {

/// 8-bit raster, row-major, interleaved channels (1 = gray, 3 = RGB).
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  std::uint8_t& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  const std::uint8_t* row(int y) const { return data_.data() + index(0, y, 0); }
  std::uint8_t* row(int y) { return data_.data() + index(0, y, 0); }

  std::vector<std::uint8_t>& data() { return data_; }
  const std::vector<std::uint8_t>& data() const { return data_; }

  bool same_shape(const Image& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> data_;
};

/// Integer pixel rectangle [x, x+w) x [y, y+h).
struct PixelRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool empty() const { return w <= 0 || h <= 0; }
  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

/// Copy of the pixels under rect. Throws if rect is not inside the image.
Image crop(const Image& img, const PixelRect& rect);

/// Nearest-neighbour sample of rect (inside img) onto an out_w x out_h grid.
Image resample(const Image& img, const PixelRect& rect, int out_w, int out_h);

/// Luma with integer BT.601 weights; gray input is returned unchanged.
Image to_gray(const Image& img);

}  // namespace actrack
