#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "guiharvest/vision/frame.hpp"

namespace guiharvest::vision {

struct FrameSourceInfo {
  int width = 0;
  int height = 0;
  int channels = 1;
  double fps = 0;
  std::uint64_t frame_count = 0;
};

// Sequential access to a video's frames. Implementations validate that every
// frame matches the advertised dimensions.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual const FrameSourceInfo& info() const = 0;
  // nullopt at end of stream.
  virtual std::optional<Frame> next() = 0;
};

// A directory of PGM/PPM frames, iterated in filename order. All frames must
// share dimensions and channel count; fps comes from the caller (stream
// metadata lives in the crawl record).
class DirectoryFrameSource : public FrameSource {
 public:
  DirectoryFrameSource(const std::filesystem::path& dir, double fps);
  const FrameSourceInfo& info() const override { return info_; }
  std::optional<Frame> next() override;

 private:
  std::vector<std::filesystem::path> files_;
  FrameSourceInfo info_;
  std::size_t pos_ = 0;
};

// Packed little-endian frame stream:
//   "RAWF" | u32 width | u32 height | f64 fps | u8 pixfmt | u32 frame count
// pixfmt 0 = grayscale, 1 = RGB. Frames follow back to back, row-major.
class RawStreamSource : public FrameSource {
 public:
  explicit RawStreamSource(const std::filesystem::path& path);
  const FrameSourceInfo& info() const override { return info_; }
  std::optional<Frame> next() override;

 private:
  std::ifstream in_;
  std::filesystem::path path_;
  FrameSourceInfo info_;
  std::uint64_t pos_ = 0;
};

// Writes a complete raw stream file. Frames must match the given geometry.
void write_raw_stream(const std::filesystem::path& path,
                      const std::vector<Frame>& frames, double fps);

// Picks the source type from the path: directory or .frames file.
std::unique_ptr<FrameSource> open_frame_source(const std::filesystem::path& path,
                                               double fps);

}  // namespace guiharvest::vision
