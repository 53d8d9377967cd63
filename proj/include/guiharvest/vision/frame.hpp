#pragma once

#include <cstdint>
#include <vector>

namespace guiharvest::vision {

// One decoded frame. `pixels` is row-major, `channels` interleaved
// (1 = grayscale, 3 = RGB), 8 bits per sample.
struct Frame {
  int index = 0;           // position in the source stream
  double timestamp_s = 0;  // index / fps for video sources
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool operator==(const Frame&) const = default;
};

// Integer-rounded Rec.601 luma: (299 R + 587 G + 114 B + 500) / 1000.
// Grayscale input is copied through.
std::vector<std::uint8_t> to_grayscale(const Frame& frame);

// Area-averaging downscale of a grayscale image so that
// max(width, height) <= long_side. Returns the input dimensions unchanged
// when they already fit. Pure integer arithmetic, deterministic.
void downscale_gray(const std::vector<std::uint8_t>& src, int width, int height,
                    int long_side, std::vector<std::uint8_t>& dst,
                    int& out_width, int& out_height);

}  // namespace guiharvest::vision
