#include "guiharvest/vision/frame_source.hpp"

#include <cstring>

#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/vision/image_io.hpp"

namespace guiharvest::vision {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'R', 'A', 'W', 'F'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out += static_cast<char>((bits >> (8 * i)) & 0xff);
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
         (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

double get_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

bool is_frame_file(const fs::path& p) {
  auto ext = p.extension().string();
  return ext == ".pgm" || ext == ".ppm";
}

}  // namespace

DirectoryFrameSource::DirectoryFrameSource(const fs::path& dir, double fps) {
  if (!fs::is_directory(dir))
    throw DimensionMismatch("not a frame directory: " + dir.string());
  for (const auto& p : util::list_files_sorted(dir)) {
    if (is_frame_file(p)) files_.push_back(p);
  }
  info_.fps = fps;
  info_.frame_count = files_.size();
  if (!files_.empty()) {
    Frame first = read_pnm(files_[0]);
    info_.width = first.width;
    info_.height = first.height;
    info_.channels = first.channels;
  }
}

std::optional<Frame> DirectoryFrameSource::next() {
  if (pos_ >= files_.size()) return std::nullopt;
  Frame frame = read_pnm(files_[pos_]);
  if (frame.width != info_.width || frame.height != info_.height ||
      frame.channels != info_.channels)
    throw DimensionMismatch(files_[pos_].string() +
                            ": frame geometry differs from first frame");
  frame.index = static_cast<int>(pos_);
  frame.timestamp_s = info_.fps > 0 ? frame.index / info_.fps : 0.0;
  ++pos_;
  return frame;
}

RawStreamSource::RawStreamSource(const fs::path& path)
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw Error("cannot open " + path.string());
  std::uint8_t header[4 + 4 + 4 + 8 + 1 + 4];
  in_.read(reinterpret_cast<char*>(header), sizeof header);
  if (in_.gcount() != sizeof header ||
      std::memcmp(header, kMagic, 4) != 0)
    throw DimensionMismatch("bad frame stream header: " + path.string());
  info_.width = static_cast<int>(get_u32(header + 4));
  info_.height = static_cast<int>(get_u32(header + 8));
  info_.fps = get_f64(header + 12);
  std::uint8_t pixfmt = header[20];
  if (pixfmt > 1)
    throw DimensionMismatch("unknown pixel format in " + path.string());
  info_.channels = pixfmt == 0 ? 1 : 3;
  info_.frame_count = get_u32(header + 21);
  if (info_.width <= 0 || info_.height <= 0)
    throw DimensionMismatch("bad frame stream geometry: " + path.string());
}

std::optional<Frame> RawStreamSource::next() {
  if (pos_ >= info_.frame_count) return std::nullopt;
  Frame frame;
  frame.width = info_.width;
  frame.height = info_.height;
  frame.channels = info_.channels;
  frame.pixels.resize(frame.pixel_count() * info_.channels);
  in_.read(reinterpret_cast<char*>(frame.pixels.data()),
           static_cast<std::streamsize>(frame.pixels.size()));
  if (in_.gcount() != static_cast<std::streamsize>(frame.pixels.size()))
    throw DimensionMismatch("frame stream truncated: " + path_.string());
  frame.index = static_cast<int>(pos_);
  frame.timestamp_s = info_.fps > 0 ? frame.index / info_.fps : 0.0;
  ++pos_;
  return frame;
}

void write_raw_stream(const fs::path& path, const std::vector<Frame>& frames,
                      double fps) {
  int width = frames.empty() ? 0 : frames[0].width;
  int height = frames.empty() ? 0 : frames[0].height;
  int channels = frames.empty() ? 1 : frames[0].channels;
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(width));
  put_u32(out, static_cast<std::uint32_t>(height));
  put_f64(out, fps);
  out += static_cast<char>(channels == 1 ? 0 : 1);
  put_u32(out, static_cast<std::uint32_t>(frames.size()));
  for (const Frame& f : frames) {
    if (f.width != width || f.height != height || f.channels != channels)
      throw DimensionMismatch("mixed frame geometry in stream");
    out.append(reinterpret_cast<const char*>(f.pixels.data()), f.pixels.size());
  }
  util::write_file_atomic(path, out);
}

std::unique_ptr<FrameSource> open_frame_source(const fs::path& path, double fps) {
  if (fs::is_directory(path))
    return std::make_unique<DirectoryFrameSource>(path, fps);
  return std::make_unique<RawStreamSource>(path);
}

}  // namespace guiharvest::vision
