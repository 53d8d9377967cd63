#pragma once

#include <cstdint>
#include <span>

#include "guiharvest/services/client.hpp"

namespace guiharvest::vision {

// Asks the vision model whether an image is a GUI screenshot. Failures of
// any kind (service down, unusable reply) count as "not a screenshot", so an
// unverifiable image is never kept.
bool classify_screenshot(std::span<const std::uint8_t> image_bytes,
                         services::ServiceClient& vlm);

// Content-type for encoded PGM/PPM bytes.
std::string pnm_mime(std::span<const std::uint8_t> image_bytes);

}  // namespace guiharvest::vision
