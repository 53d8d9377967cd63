#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guiharvest::util {

std::string base64_encode(std::span<const std::uint8_t> data);

// Strict decode, standard alphabet with '=' padding. nullopt on bad input.
std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text);

}  // namespace guiharvest::util
