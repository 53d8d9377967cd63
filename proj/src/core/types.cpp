#include "guiharvest/types.hpp"

namespace guiharvest {

std::string_view platform_name(Platform p) {
  switch (p) {
    case Platform::Desktop: return "desktop";
    case Platform::Mobile: return "mobile";
    case Platform::Other: return "other";
  }
  return "other";
}

std::optional<Platform> platform_from_name(std::string_view name) {
  if (name == "desktop") return Platform::Desktop;
  if (name == "mobile") return Platform::Mobile;
  if (name == "other") return Platform::Other;
  return std::nullopt;
}

std::string_view modality_name(Modality m) {
  return m == Modality::Video ? "video" : "article";
}

std::optional<Modality> modality_from_name(std::string_view name) {
  if (name == "video") return Modality::Video;
  if (name == "article") return Modality::Article;
  return std::nullopt;
}

}  // namespace guiharvest
