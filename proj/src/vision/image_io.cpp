#include "guiharvest/vision/image_io.hpp"

#include <cctype>

#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"

namespace guiharvest::vision {

namespace {

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Reads the next whitespace-delimited token, skipping '#' comments.
  std::string token() {
    skip_separators();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]))
      out += static_cast<char>(bytes_[pos_++]);
    if (out.empty()) throw MalformedResponse("truncated image header");
    return out;
  }

  int number() {
    std::string t = token();
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw MalformedResponse("bad number in image header: " + t);
    return std::stoi(t);
  }

  // One whitespace byte separates the header from pixel data.
  std::span<const std::uint8_t> rest_after_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw MalformedResponse("missing header terminator");
    ++pos_;
    return bytes_.subspan(pos_);
  }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Frame decode_pnm(std::span<const std::uint8_t> bytes) {
  ByteReader reader(bytes);
  std::string magic = reader.token();
  int channels;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw MalformedResponse("unsupported image magic: " + magic);
  }
  Frame frame;
  frame.channels = channels;
  frame.width = reader.number();
  frame.height = reader.number();
  int maxval = reader.number();
  if (frame.width <= 0 || frame.height <= 0)
    throw MalformedResponse("non-positive image dimensions");
  if (maxval != 255)
    throw MalformedResponse("unsupported maxval " + std::to_string(maxval));
  auto data = reader.rest_after_single_space();
  std::size_t expected = frame.pixel_count() * channels;
  if (data.size() < expected) throw MalformedResponse("truncated pixel data");
  frame.pixels.assign(data.begin(), data.begin() + expected);
  return frame;
}

Frame read_pnm(const std::filesystem::path& path) {
  auto bytes = util::read_binary_file(path);
  try {
    return decode_pnm(bytes);
  } catch (const MalformedResponse& e) {
    throw MalformedResponse(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_pnm(const Frame& frame) {
  if (frame.channels != 1 && frame.channels != 3)
    throw DimensionMismatch("unsupported channel count");
  if (frame.pixels.size() !=
      frame.pixel_count() * static_cast<std::size_t>(frame.channels))
    throw DimensionMismatch("pixel buffer does not match dimensions");
  std::string header = frame.channels == 1 ? "P5" : "P6";
  header += "\n" + std::to_string(frame.width) + " " +
            std::to_string(frame.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), frame.pixels.begin(), frame.pixels.end());
  return out;
}

void write_pnm(const std::filesystem::path& path, const Frame& frame) {
  util::write_file_atomic(path, encode_pnm(frame));
}

const char* pnm_extension(const Frame& frame) {
  return frame.channels == 1 ? "pgm" : "ppm";
}

}  // namespace guiharvest::vision
