#pragma once

#include <string>
#include <string_view>

namespace guiharvest {

enum class Source {
  YouTube,
  Bilibili,
  TikTok,
  WikiHow,
  BaiduExperience,
  Fixture,
};

// "youtube", "bilibili", "tiktok", "wikihow", "baidu_experience", "fixture".
std::string_view source_name(Source source);
Source source_from_name(std::string_view name);  // throws UnrecognizedSource

// Canonical tutorial identity. Two references to the same upstream item
// canonicalize to the same SourceId regardless of URL spelling.
struct SourceId {
  Source source = Source::Fixture;
  std::string native_id;

  bool operator==(const SourceId&) const = default;
  bool operator<(const SourceId& other) const {
    if (source != other.source) return source < other.source;
    return native_id < other.native_id;
  }

  // "youtube:dQw4w9WgXcQ"
  std::string str() const;
};

// Accepts full URLs (with or without tracking parameters, mobile and short
// hosts) and bare native ids. Video sources reduce to the upstream video id;
// article sources reduce to a normalized https URL without query or fragment.
// Throws UnrecognizedSource when `raw` cannot belong to `source`.
// Idempotent: canonicalizing a canonical id is the identity.
SourceId canonicalize_source_id(std::string_view raw, Source source);

}  // namespace guiharvest
