#pragma once

#include <filesystem>
#include <map>

#include "guiharvest/crawl/adapter.hpp"

namespace guiharvest::crawl {

// Corpus-on-disk adapter used for tests and offline runs.
//
// Manifest (JSON):
//   {
//     "keywords": {"<keyword>": ["<tutorial id>", ...], ...},
//     "tutorials": {"<tutorial id>": {"dir": "<subdir>",
//                                     "fail_download": false}, ...}
//   }
// Each tutorial directory holds tutorial.json:
//   {"modality": "video"|"article", "title": ..., "body": ...,
//    "transcript": [...]|null, "audio": "<file>"|null,
//    "images": ["<file>", ...], "frames": {"path": ..., "fps": ...,
//    "count": ...}|null}
// File refs inside tutorial.json are relative to the tutorial directory; the
// adapter rewrites them relative to the corpus root (the manifest's parent),
// which is the root every downstream loader resolves against.
// "fail_download": true simulates an upstream outage.
class FixtureAdapter : public SourceAdapter {
 public:
  explicit FixtureAdapter(const std::filesystem::path& manifest_path);

  std::string name() const override { return "fixture"; }
  std::vector<SourceId> search(const std::string& keyword, int limit) override;
  RawTutorial download(const SourceId& id) override;

  const std::filesystem::path& root() const { return root_; }

 private:
  struct Entry {
    std::string dir;
    bool fail_download = false;
  };
  std::filesystem::path root_;
  std::map<std::string, std::vector<std::string>> keywords_;
  std::map<std::string, Entry> tutorials_;
};

}  // namespace guiharvest::crawl
