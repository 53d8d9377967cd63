#include "guiharvest/crawl/reference_adapters.hpp"

#include <set>

#include "guiharvest/errors.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::crawl {

std::string url_encode(const std::string& text) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xf];
    }
  }
  return out;
}

std::string strip_html(const std::string& html) {
  std::string out;
  out.reserve(html.size());
  std::size_t i = 0;
  auto skip_block = [&](std::string_view open, std::string_view close) {
    if (util::iequals(std::string_view(html).substr(i, open.size()), open)) {
      auto end = util::to_lower(html).find(std::string(close), i);
      i = end == std::string::npos ? html.size() : end + close.size();
      return true;
    }
    return false;
  };
  while (i < html.size()) {
    if (html[i] == '<') {
      if (skip_block("<script", "</script>") || skip_block("<style", "</style>"))
        continue;
      auto end = html.find('>', i);
      i = end == std::string::npos ? html.size() : end + 1;
      out += ' ';
      continue;
    }
    if (html[i] == '&') {
      struct Entity { std::string_view name; char ch; };
      static constexpr Entity entities[] = {{"&amp;", '&'}, {"&lt;", '<'},
                                            {"&gt;", '>'},  {"&quot;", '"'},
                                            {"&#39;", '\''}, {"&nbsp;", ' '}};
      bool matched = false;
      for (const Entity& e : entities) {
        if (std::string_view(html).substr(i, e.name.size()) == e.name) {
          out += e.ch;
          i += e.name.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out += html[i++];
  }
  return util::squeeze_spaces(out);
}

namespace {

std::string fetch_ok(const FetchFn& fetch, const std::string& url) {
  auto [status, body] = fetch(url);
  if (status < 200 || status >= 300)
    throw ServiceUnavailable("GET " + url + " -> HTTP " + std::to_string(status));
  return body;
}

std::string tag_text(const std::string& html, std::string_view open,
                     std::string_view close) {
  auto start = html.find(open);
  if (start == std::string::npos) return {};
  start += open.size();
  auto end = html.find(close, start);
  if (end == std::string::npos) return {};
  return html.substr(start, end - start);
}

}  // namespace

YouTubeApiAdapter::YouTubeApiAdapter(FetchFn fetch, std::string api_key)
    : fetch_(std::move(fetch)), api_key_(std::move(api_key)) {}

std::vector<SourceId> YouTubeApiAdapter::search(const std::string& keyword,
                                                int limit) {
  std::string url =
      "https://www.googleapis.com/youtube/v3/search?part=id&type=video"
      "&maxResults=" + std::to_string(limit > 0 ? limit : 10) +
      "&q=" + url_encode(keyword) + "&key=" + api_key_;
  ojson j = ojson::parse(fetch_ok(fetch_, url), nullptr, false);
  if (j.is_discarded() || !j.contains("items"))
    throw MalformedResponse("unexpected search payload");
  std::vector<SourceId> out;
  for (const ojson& item : j["items"]) {
    if (item.contains("id") && item["id"].contains("videoId"))
      out.push_back(canonicalize_source_id(
          item["id"]["videoId"].get<std::string>(), Source::YouTube));
  }
  return out;
}

RawTutorial YouTubeApiAdapter::download(const SourceId& id) {
  std::string url =
      "https://www.googleapis.com/youtube/v3/videos?part=snippet&id=" +
      url_encode(id.native_id) + "&key=" + api_key_;
  ojson j = ojson::parse(fetch_ok(fetch_, url), nullptr, false);
  if (j.is_discarded() || !j.contains("items") || j["items"].empty())
    throw MalformedResponse("video " + id.native_id + " not found");
  const ojson& snippet = j["items"][0].at("snippet");
  RawTutorial t;
  t.source = id;
  t.modality = Modality::Video;
  t.text.title = snippet.value("title", "");
  t.text.body = snippet.value("description", "");
  return t;
}

WikiHowAdapter::WikiHowAdapter(FetchFn fetch) : fetch_(std::move(fetch)) {}

std::vector<SourceId> WikiHowAdapter::search(const std::string& keyword,
                                             int limit) {
  std::string url = "https://www.wikihow.com/wikiHowTo?search=" +
                    url_encode(keyword);
  std::string html = fetch_ok(fetch_, url);
  std::vector<SourceId> out;
  std::set<std::string> seen;
  std::size_t pos = 0;
  const std::string needle = "wikihow.com/";
  while ((pos = html.find(needle, pos)) != std::string::npos) {
    std::size_t start = pos + needle.size();
    std::size_t end = start;
    while (end < html.size() && html[end] != '"' && html[end] != '\'' &&
           html[end] != '<' && html[end] != ' ' && html[end] != '&')
      ++end;
    std::string slug = html.substr(start, end - start);
    pos = end;
    if (slug.empty() || slug.find(':') != std::string::npos ||
        slug.find('/') != std::string::npos || slug.find('?') != std::string::npos)
      continue;  // category, special or nested page
    if (!seen.insert(slug).second) continue;
    out.push_back(canonicalize_source_id(slug, Source::WikiHow));
    if (limit > 0 && static_cast<int>(out.size()) >= limit) break;
  }
  return out;
}

RawTutorial WikiHowAdapter::download(const SourceId& id) {
  std::string html = fetch_ok(fetch_, id.native_id);
  RawTutorial t;
  t.source = id;
  t.modality = Modality::Article;
  t.text.title = strip_html(tag_text(html, "<title>", "</title>"));
  t.text.body = strip_html(html);
  return t;
}

}  // namespace guiharvest::crawl
