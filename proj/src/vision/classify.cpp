#include "guiharvest/vision/classify.hpp"

#include "guiharvest/errors.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/services/json_chat.hpp"

namespace guiharvest::vision {

std::string pnm_mime(std::span<const std::uint8_t> image_bytes) {
  if (image_bytes.size() >= 2 && image_bytes[0] == 'P') {
    if (image_bytes[1] == '5') return "image/x-portable-graymap";
    if (image_bytes[1] == '6') return "image/x-portable-pixmap";
  }
  return "application/octet-stream";
}

bool classify_screenshot(std::span<const std::uint8_t> image_bytes,
                         services::ServiceClient& vlm) {
  services::ImageAttachment image;
  image.bytes.assign(image_bytes.begin(), image_bytes.end());
  image.mime = pnm_mime(image_bytes);
  try {
    ojson reply = services::ask_json(
        vlm, std::string(prompts::screenshot_classify()), {std::move(image)});
    auto it = reply.find("screenshot");
    return it != reply.end() && it->is_boolean() && it->get<bool>();
  } catch (const ServiceUnavailable&) {
    return false;
  } catch (const MalformedResponse&) {
    return false;
  }
}

}  // namespace guiharvest::vision
