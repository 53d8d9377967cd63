#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace guiharvest::util {

// Incremental SHA-256. Used for replay-fixture keys and content-addressed
// image names; not a security boundary.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  void update(std::string_view s) { update(s.data(), s.size()); }
  std::array<std::uint8_t, 32> digest();

 private:
  void process_block(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_;
  std::uint64_t total_len_ = 0;
  std::size_t buffer_len_ = 0;
  bool finished_ = false;
};

std::string sha256_hex(std::string_view data);
std::string sha256_hex(std::span<const std::uint8_t> data);

// 64-bit FNV-1a, for cheap deterministic derivations (jitter seeds, fixture
// content). Not used for addressing.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace guiharvest::util
