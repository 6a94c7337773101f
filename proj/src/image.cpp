#include "actrack/image.hpp"

#include <stdexcept>
#include <string>

namespace actrack {

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 0 || height < 0) throw std::invalid_argument("negative image dimensions");
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("image channels must be 1 or 3, got " + std::to_string(channels));
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

static void require_inside(const Image& img, const PixelRect& r) {
  if (r.x < 0 || r.y < 0 || r.w < 0 || r.h < 0 || r.x + r.w > img.width() ||
      r.y + r.h > img.height()) {
    throw std::out_of_range("rect (" + std::to_string(r.x) + "," + std::to_string(r.y) + "," +
                            std::to_string(r.w) + "," + std::to_string(r.h) +
                            ") outside image " + std::to_string(img.width()) + "x" +
                            std::to_string(img.height()));
  }
}

Image crop(const Image& img, const PixelRect& rect) {
  require_inside(img, rect);
  Image out(rect.w, rect.h, img.channels());
  const std::size_t row_bytes = static_cast<std::size_t>(rect.w) * img.channels();
  for (int y = 0; y < rect.h; ++y) {
    const std::uint8_t* src = img.row(rect.y + y) + static_cast<std::size_t>(rect.x) * img.channels();
    std::copy(src, src + row_bytes, out.row(y));
  }
  return out;
}

Image resample(const Image& img, const PixelRect& rect, int out_w, int out_h) {
  if (rect.w == out_w && rect.h == out_h) return crop(img, rect);
  require_inside(img, rect);
  if (rect.empty()) throw std::invalid_argument("resample of empty rect");
  Image out(out_w, out_h, img.channels());
  const int ch = img.channels();
  for (int y = 0; y < out_h; ++y) {
    const int sy = rect.y + static_cast<int>((2LL * y + 1) * rect.h / (2LL * out_h));
    for (int x = 0; x < out_w; ++x) {
      const int sx = rect.x + static_cast<int>((2LL * x + 1) * rect.w / (2LL * out_w));
      for (int c = 0; c < ch; ++c) out.at(x, y, c) = img.at(sx, sy, c);
    }
  }
  return out;
}

Image to_gray(const Image& img) {
  if (img.channels() == 1) return img;
  Image out(img.width(), img.height(), 1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int v = (299 * img.at(x, y, 0) + 587 * img.at(x, y, 1) + 114 * img.at(x, y, 2) + 500) / 1000;
      out.at(x, y) = static_cast<std::uint8_t>(v);
    }
  }
  return out;
}

}  // namespace actrack
