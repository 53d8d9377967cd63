#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "guiharvest/vision/frame.hpp"

namespace guiharvest::vision {

// Binary PGM (P5) and PPM (P6) with maxval 255. Comments after the magic are
// skipped on read and preserved nowhere.

Frame decode_pnm(std::span<const std::uint8_t> bytes);
Frame read_pnm(const std::filesystem::path& path);

// P5 for 1 channel, P6 for 3.
std::vector<std::uint8_t> encode_pnm(const Frame& frame);
void write_pnm(const std::filesystem::path& path, const Frame& frame);

// "pgm" or "ppm" for the frame's channel count.
const char* pnm_extension(const Frame& frame);

}  // namespace guiharvest::vision
