#include "guiharvest/vision/frame.hpp"

#include <algorithm>

#include "guiharvest/errors.hpp"

namespace guiharvest::vision {

std::vector<std::uint8_t> to_grayscale(const Frame& frame) {
  if (frame.channels == 1) return frame.pixels;
  if (frame.channels != 3)
    throw DimensionMismatch("unsupported channel count " +
                            std::to_string(frame.channels));
  std::vector<std::uint8_t> out(frame.pixel_count());
  const std::uint8_t* src = frame.pixels.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t r = src[i * 3], g = src[i * 3 + 1], b = src[i * 3 + 2];
    out[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return out;
}

void downscale_gray(const std::vector<std::uint8_t>& src, int width, int height,
                    int long_side, std::vector<std::uint8_t>& dst,
                    int& out_width, int& out_height) {
  if (width <= 0 || height <= 0 ||
      src.size() != static_cast<std::size_t>(width) * height)
    throw DimensionMismatch("pixel buffer does not match dimensions");
  int longer = std::max(width, height);
  if (long_side <= 0 || longer <= long_side) {
    dst = src;
    out_width = width;
    out_height = height;
    return;
  }
  // Round half up, then clamp to at least one pixel.
  out_width = std::max(1, (width * long_side + longer / 2) / longer);
  out_height = std::max(1, (height * long_side + longer / 2) / longer);
  dst.assign(static_cast<std::size_t>(out_width) * out_height, 0);
  for (int oy = 0; oy < out_height; ++oy) {
    int y0 = oy * height / out_height;
    int y1 = std::max(y0 + 1, (oy + 1) * height / out_height);
    for (int ox = 0; ox < out_width; ++ox) {
      int x0 = ox * width / out_width;
      int x1 = std::max(x0 + 1, (ox + 1) * width / out_width);
      std::uint32_t sum = 0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
          sum += src[static_cast<std::size_t>(y) * width + x];
      std::uint32_t count = static_cast<std::uint32_t>((y1 - y0) * (x1 - x0));
      dst[static_cast<std::size_t>(oy) * out_width + ox] =
          static_cast<std::uint8_t>((sum + count / 2) / count);
    }
  }
}

}  // namespace guiharvest::vision
