#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace guiharvest::dataset {

// Content-addressed image store under a dataset root. Every blob lands at
// images/<first 16 hex of its sha256>.<pgm|ppm>; identical bytes share one
// file. Refs handed out are dataset-relative so a dataset directory can be
// moved wholesale.
class ImageStore {
 public:
  explicit ImageStore(std::filesystem::path root);

  // Validates the blob as binary PNM, writes it if new, returns its ref.
  // Throws SchemaViolation when the bytes do not decode.
  std::string put(const std::vector<std::uint8_t>& bytes);

  // Resolves a ref produced by put().
  std::vector<std::uint8_t> get(const std::string& ref) const;

  bool contains(const std::string& ref) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace guiharvest::dataset
