#include "guiharvest/source_id.hpp"

#include <algorithm>
#include <cctype>

#include "guiharvest/errors.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest {

namespace {

struct ParsedUrl {
  std::string host;   // lowercased, no port
  std::string path;   // leading '/', no query/fragment
  std::string query;  // without '?'
};

// Minimal URL splitter for the handful of shapes the adapters emit.
// Returns false when `raw` has no scheme and no recognizable host prefix.
bool parse_url(std::string_view raw, ParsedUrl& out) {
  std::string_view rest = raw;
  auto scheme_pos = rest.find("://");
  if (scheme_pos != std::string_view::npos) {
    std::string_view scheme = rest.substr(0, scheme_pos);
    if (scheme != "http" && scheme != "https") return false;
    rest.remove_prefix(scheme_pos + 3);
  } else if (rest.starts_with("www.") || rest.starts_with("m.")) {
    // scheme-less spellings like "www.youtube.com/watch?v=.."
  } else {
    return false;
  }

  auto frag = rest.find('#');
  if (frag != std::string_view::npos) rest = rest.substr(0, frag);

  auto slash = rest.find('/');
  std::string_view host = slash == std::string_view::npos ? rest : rest.substr(0, slash);
  std::string_view path_query =
      slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);

  auto colon = host.find(':');
  if (colon != std::string_view::npos) host = host.substr(0, colon);
  if (host.empty()) return false;

  auto qmark = path_query.find('?');
  out.host = util::to_lower(host);
  out.path = std::string(qmark == std::string_view::npos ? path_query
                                                         : path_query.substr(0, qmark));
  out.query = qmark == std::string_view::npos
                  ? std::string{}
                  : std::string(path_query.substr(qmark + 1));
  if (out.path.empty()) out.path = "/";
  return true;
}

bool host_is(const std::string& host, std::string_view domain) {
  if (host == domain) return true;
  return host.size() > domain.size() && host.ends_with(domain) &&
         host[host.size() - domain.size() - 1] == '.';
}

std::string query_param(const std::string& query, std::string_view key) {
  for (const std::string& pair : util::split(query, '&')) {
    auto eq = pair.find('=');
    if (eq == std::string::npos) continue;
    if (std::string_view(pair).substr(0, eq) == key) return pair.substr(eq + 1);
  }
  return {};
}

// Path segments without empty entries: "/a//b/" -> {"a", "b"}.
std::vector<std::string> path_segments(const std::string& path) {
  std::vector<std::string> out;
  for (std::string& seg : util::split(path, '/')) {
    if (!seg.empty()) out.push_back(std::move(seg));
  }
  return out;
}

bool valid_youtube_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_';
  });
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

[[noreturn]] void reject(Source source, std::string_view raw) {
  throw UnrecognizedSource("not a recognizable " +
                           std::string(source_name(source)) +
                           " reference: " + std::string(raw));
}

std::string youtube_id(std::string_view raw) {
  ParsedUrl url;
  if (!parse_url(raw, url)) {
    std::string id(util::trim(raw));
    if (valid_youtube_id(id) && id.size() >= 5) return id;
    reject(Source::YouTube, raw);
  }
  std::string id;
  auto segs = path_segments(url.path);
  if (host_is(url.host, "youtu.be")) {
    if (!segs.empty()) id = segs[0];
  } else if (host_is(url.host, "youtube.com") ||
             host_is(url.host, "youtube-nocookie.com")) {
    if (url.path == "/watch") {
      id = query_param(url.query, "v");
    } else if (segs.size() >= 2 &&
               (segs[0] == "shorts" || segs[0] == "embed" || segs[0] == "v" ||
                segs[0] == "live")) {
      id = segs[1];
    }
  }
  if (!valid_youtube_id(id)) reject(Source::YouTube, raw);
  return id;
}

std::string bilibili_id(std::string_view raw) {
  auto looks_native = [](std::string_view s) {
    if (s.starts_with("BV") && s.size() > 2)
      return std::all_of(s.begin() + 2, s.end(), [](unsigned char c) {
        return std::isalnum(c);
      });
    if ((s.starts_with("av") || s.starts_with("AV")) && s.size() > 2)
      return all_digits(s.substr(2));
    return false;
  };
  auto normalize = [](std::string id) {
    if (id.starts_with("AV")) id = "av" + id.substr(2);
    return id;
  };

  ParsedUrl url;
  if (!parse_url(raw, url)) {
    std::string id(util::trim(raw));
    if (looks_native(id)) return normalize(id);
    reject(Source::Bilibili, raw);
  }
  if (host_is(url.host, "bilibili.com")) {
    auto segs = path_segments(url.path);
    if (segs.size() >= 2 && segs[0] == "video" && looks_native(segs[1]))
      return normalize(segs[1]);
  }
  reject(Source::Bilibili, raw);
}

std::string tiktok_id(std::string_view raw) {
  ParsedUrl url;
  if (!parse_url(raw, url)) {
    std::string id(util::trim(raw));
    if (all_digits(id)) return id;
    reject(Source::TikTok, raw);
  }
  if (host_is(url.host, "tiktok.com")) {
    auto segs = path_segments(url.path);
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      if (segs[i] == "video" && all_digits(segs[i + 1])) return segs[i + 1];
    }
  }
  reject(Source::TikTok, raw);
}

// Article identity is the normalized https URL: canonical host, no query or
// fragment, no trailing slash.
std::string article_url(std::string_view raw, Source source,
                        std::string_view match_domain,
                        std::string_view canonical_host,
                        std::string_view path_prefix) {
  ParsedUrl url;
  std::string path;
  if (parse_url(raw, url)) {
    if (!host_is(url.host, match_domain)) reject(source, raw);
    path = url.path;
  } else {
    // Bare article slug such as "Change-Font-Size-in-Word".
    std::string slug(util::trim(raw));
    if (slug.empty() || slug.find('/') != std::string::npos ||
        slug.find(' ') != std::string::npos)
      reject(source, raw);
    path = std::string(path_prefix) + slug;
  }
  while (path.size() > 1 && path.back() == '/') path.pop_back();
  if (path.empty() || path == "/") reject(source, raw);
  return "https://" + std::string(canonical_host) + path;
}

}  // namespace

std::string_view source_name(Source source) {
  switch (source) {
    case Source::YouTube: return "youtube";
    case Source::Bilibili: return "bilibili";
    case Source::TikTok: return "tiktok";
    case Source::WikiHow: return "wikihow";
    case Source::BaiduExperience: return "baidu_experience";
    case Source::Fixture: return "fixture";
  }
  return "unknown";
}

Source source_from_name(std::string_view name) {
  for (Source s : {Source::YouTube, Source::Bilibili, Source::TikTok,
                   Source::WikiHow, Source::BaiduExperience, Source::Fixture}) {
    if (source_name(s) == name) return s;
  }
  throw UnrecognizedSource("unknown source name: " + std::string(name));
}

std::string SourceId::str() const {
  return std::string(source_name(source)) + ":" + native_id;
}

SourceId canonicalize_source_id(std::string_view raw, Source source) {
  std::string_view trimmed = util::trim(raw);
  if (trimmed.empty())
    throw UnrecognizedSource("empty source reference");
  switch (source) {
    case Source::YouTube:
      return {source, youtube_id(trimmed)};
    case Source::Bilibili:
      return {source, bilibili_id(trimmed)};
    case Source::TikTok:
      return {source, tiktok_id(trimmed)};
    case Source::WikiHow:
      return {source, article_url(trimmed, source, "wikihow.com",
                                  "www.wikihow.com", "/")};
    case Source::BaiduExperience:
      return {source, article_url(trimmed, source, "baidu.com",
                                  "jingyan.baidu.com", "/article/")};
    case Source::Fixture: {
      std::string id(trimmed);
      if (id.starts_with("fixture:")) id = id.substr(8);
      if (id.empty()) throw UnrecognizedSource("empty fixture id");
      return {source, id};
    }
  }
  throw UnrecognizedSource("unknown source enum value");
}

}  // namespace guiharvest
