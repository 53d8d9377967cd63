#pragma once

#include <span>
#include <string>
#include <vector>

#include "guiharvest/services/client.hpp"

namespace guiharvest::crawl {

// A thing to operate and what to do with it, e.g. {"word", "change font size"}.
struct TaskSeed {
  std::string app_or_web;
  std::string task;
};

struct KeywordExpansion {
  std::vector<std::string> keywords;
  bool llm_ok = true;  // false when expansion fell back to the seeds alone
};

// Builds the crawl keyword list: one "<app> <task>" keyword per seed, then
// model-proposed variants up to target_count total. Deduplication is
// case-insensitive, first spelling wins. A model failure keeps the seed
// keywords and flags llm_ok = false; pass a null llm to skip expansion.
// target_count smaller than the seed count does not drop seeds.
KeywordExpansion expand_keywords(std::span<const TaskSeed> seeds,
                                 services::ServiceClient* llm,
                                 int target_count);

}  // namespace guiharvest::crawl
