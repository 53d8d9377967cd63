#pragma once

#include <functional>

#include "guiharvest/crawl/adapter.hpp"

namespace guiharvest::crawl {

// Reference adapters for live sources. They demonstrate the SourceAdapter
// seam and are exercised against canned payloads; production use needs an
// API key, a media fetcher that transcodes to PGM/PPM, and for video sources
// an external frame extractor. Neither ships here: downloads carry text
// metadata only (images stay as fetched bytes when a media_dir is given).

// GET returning (status, body). Injectable so tests stay offline.
using FetchFn = std::function<std::pair<int, std::string>(const std::string& url)>;

// Search and metadata via the v3 JSON API. search() maps items[].id.videoId;
// download() reads snippet.title and snippet.description. No captions, audio,
// or frames: the reference stops at metadata.
class YouTubeApiAdapter : public SourceAdapter {
 public:
  YouTubeApiAdapter(FetchFn fetch, std::string api_key);
  std::string name() const override { return "youtube"; }
  std::vector<SourceId> search(const std::string& keyword, int limit) override;
  RawTutorial download(const SourceId& id) override;

 private:
  FetchFn fetch_;
  std::string api_key_;
};

// Article search and download. search() expects the site search page and
// collects /wikihow.com/<Title> links; download() strips the article HTML to
// title and text. Illustrations are left out: the pipeline only decodes
// PGM/PPM, so a production deployment plugs a transcoder in here.
class WikiHowAdapter : public SourceAdapter {
 public:
  explicit WikiHowAdapter(FetchFn fetch);
  std::string name() const override { return "wikihow"; }
  std::vector<SourceId> search(const std::string& keyword, int limit) override;
  RawTutorial download(const SourceId& id) override;

 private:
  FetchFn fetch_;
};

// Percent-encodes a query string component.
std::string url_encode(const std::string& text);

// Crude tag stripper for the article adapters: drops <script>/<style>
// blocks, turns tags into whitespace, decodes the few entities that matter.
std::string strip_html(const std::string& html);

}  // namespace guiharvest::crawl
