#include "guiharvest/crawl/adapter.hpp"

#include <set>

#include "guiharvest/util/parallel.hpp"

namespace guiharvest::crawl {

namespace {

struct Job {
  SourceAdapter* adapter;
  const std::string* keyword;
};

struct JobResult {
  CrawlReport::KeywordHits hits;
  std::vector<CrawlReport::Failure> failures;
  std::vector<RawTutorial> tutorials;
};

JobResult run_job(const Job& job, const CrawlLimits& limits) {
  JobResult out;
  out.hits.adapter = job.adapter->name();
  out.hits.keyword = *job.keyword;
  std::vector<SourceId> ids;
  try {
    ids = job.adapter->search(*job.keyword, limits.per_keyword_limit);
  } catch (const std::exception& e) {
    out.failures.push_back({out.hits.adapter, out.hits.keyword, "", e.what()});
    return out;
  }
  if (limits.per_keyword_limit > 0 &&
      ids.size() > static_cast<std::size_t>(limits.per_keyword_limit))
    ids.resize(limits.per_keyword_limit);
  out.hits.hits = ids.size();
  for (const SourceId& id : ids) {
    try {
      out.tutorials.push_back(job.adapter->download(id));
      ++out.hits.downloaded;
    } catch (const std::exception& e) {
      out.failures.push_back(
          {out.hits.adapter, out.hits.keyword, id.str(), e.what()});
    }
  }
  return out;
}

}  // namespace

std::vector<RawTutorial> crawl_corpus(const std::vector<SourceAdapter*>& adapters,
                                      const std::vector<std::string>& keywords,
                                      const CrawlLimits& limits,
                                      CrawlReport& report) {
  std::vector<Job> jobs;
  for (SourceAdapter* adapter : adapters)
    for (const std::string& keyword : keywords) jobs.push_back({adapter, &keyword});

  auto results = util::parallel_map(
      jobs, [&](const Job& job) { return run_job(job, limits); }, limits.workers);

  std::vector<RawTutorial> tutorials;
  for (JobResult& r : results) {
    report.hits.push_back(std::move(r.hits));
    for (auto& f : r.failures) report.failures.push_back(std::move(f));
    for (auto& t : r.tutorials) tutorials.push_back(std::move(t));
  }
  report.downloaded += tutorials.size();
  return tutorials;
}

std::vector<RawTutorial> dedup_tutorials(std::vector<RawTutorial> tutorials) {
  std::set<SourceId> seen;
  std::vector<RawTutorial> out;
  out.reserve(tutorials.size());
  for (RawTutorial& t : tutorials) {
    if (seen.insert(t.source).second) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace guiharvest::crawl
