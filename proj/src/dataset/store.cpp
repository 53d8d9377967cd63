#include "guiharvest/dataset/store.hpp"

#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/hash.hpp"
#include "guiharvest/vision/image_io.hpp"

namespace guiharvest::dataset {

ImageStore::ImageStore(std::filesystem::path root) : root_(std::move(root)) {}

std::string ImageStore::put(const std::vector<std::uint8_t>& bytes) {
  vision::Frame frame;
  try {
    frame = vision::decode_pnm(bytes);
  } catch (const std::exception& e) {
    throw SchemaViolation(std::string("image is not binary PNM: ") + e.what());
  }
  std::string ref = "images/" + util::sha256_hex(bytes).substr(0, 16) + "." +
                    vision::pnm_extension(frame);
  std::filesystem::path dest = root_ / ref;
  if (!std::filesystem::exists(dest)) util::write_file_atomic(dest, bytes);
  return ref;
}

std::vector<std::uint8_t> ImageStore::get(const std::string& ref) const {
  return util::read_binary_file(root_ / ref);
}

bool ImageStore::contains(const std::string& ref) const {
  return std::filesystem::exists(root_ / ref);
}

}  // namespace guiharvest::dataset
