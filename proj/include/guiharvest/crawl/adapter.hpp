#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guiharvest/types.hpp"

namespace guiharvest::crawl {

// One upstream tutorial source. search() returns canonical ids only;
// download() fetches everything the pipeline needs about one tutorial.
// Implementations may throw; crawl_corpus turns throws into report entries.
class SourceAdapter {
 public:
  virtual ~SourceAdapter() = default;
  virtual std::string name() const = 0;
  virtual std::vector<SourceId> search(const std::string& keyword,
                                       int limit) = 0;
  virtual RawTutorial download(const SourceId& id) = 0;
};

struct CrawlLimits {
  int per_keyword_limit = 10;  // search hits taken per (adapter, keyword)
  int workers = 4;
};

struct CrawlReport {
  struct KeywordHits {
    std::string adapter;
    std::string keyword;
    std::uint64_t hits = 0;       // ids returned by search, post-limit
    std::uint64_t downloaded = 0; // of those, fetched successfully
  };
  struct Failure {
    std::string adapter;
    std::string keyword;
    std::string id;  // empty for search failures
    std::string message;
  };
  std::vector<KeywordHits> hits;
  std::vector<Failure> failures;
  std::uint64_t downloaded = 0;
};

// Runs every adapter against every keyword, (adapter, keyword) pairs in
// parallel, and returns the downloads in (adapter, keyword, hit) order so
// output is deterministic regardless of scheduling. Duplicate hits across
// keywords are downloaded again on purpose; dedup_tutorials() measures and
// removes them afterwards.
std::vector<RawTutorial> crawl_corpus(const std::vector<SourceAdapter*>& adapters,
                                      const std::vector<std::string>& keywords,
                                      const CrawlLimits& limits,
                                      CrawlReport& report);

// Keeps the first occurrence of every canonical source id, preserving order.
std::vector<RawTutorial> dedup_tutorials(std::vector<RawTutorial> tutorials);

}  // namespace guiharvest::crawl
