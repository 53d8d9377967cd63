#include <doctest.h>

#include <chrono>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "corpus.hpp"
#include "guiharvest/crawl/adapter.hpp"
#include "guiharvest/crawl/fixture_adapter.hpp"
#include "guiharvest/crawl/keywords.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/services/client.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "support/tmpdir.hpp"

using namespace guiharvest;
using namespace guiharvest::crawl;

namespace {

std::string chat_reply(const std::string& text) {
  ojson j;
  j["choices"] = ojson::array({ojson{{"message", ojson{{"content", text}}}}});
  return j.dump();
}

SourceId fx(const std::string& id) {
  return {Source::Fixture, id};
}

// In-memory adapter: keyword -> ids, ids starting with "bad" fail to
// download. Downloads sleep a hair so scheduling actually interleaves.
class StubAdapter : public SourceAdapter {
 public:
  StubAdapter(std::string name,
              std::map<std::string, std::vector<std::string>> hits)
      : name_(std::move(name)), hits_(std::move(hits)) {}

  std::string name() const override { return name_; }

  std::vector<SourceId> search(const std::string& keyword, int) override {
    if (keyword == "explode") throw Error("search exploded");
    std::vector<SourceId> out;
    auto it = hits_.find(keyword);
    if (it == hits_.end()) return out;
    for (const std::string& id : it->second) out.push_back(fx(id));
    return out;
  }

  RawTutorial download(const SourceId& id) override {
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
    if (id.native_id.rfind("bad", 0) == 0)
      throw ServiceUnavailable("download failed for " + id.str());
    RawTutorial t;
    t.source = id;
    t.text.title = name_ + ":" + id.native_id;
    return t;
  }

 private:
  std::string name_;
  std::map<std::string, std::vector<std::string>> hits_;
};

std::vector<std::string> titles(const std::vector<RawTutorial>& tutorials) {
  std::vector<std::string> out;
  for (const auto& t : tutorials) out.push_back(t.text.title);
  return out;
}

}  // namespace

TEST_CASE("crawl_corpus is deterministic and ordered") {
  StubAdapter alpha("alpha", {{"k1", {"a1", "a2"}}, {"k2", {"a3"}}});
  StubAdapter beta("beta", {{"k1", {"b1"}}, {"k2", {"b2", "b3"}}});
  std::vector<SourceAdapter*> adapters{&alpha, &beta};
  std::vector<std::string> keywords{"k1", "k2"};

  CrawlLimits limits;
  limits.workers = 4;
  CrawlReport report;
  auto got = crawl_corpus(adapters, keywords, limits, report);

  // (adapter, keyword, hit) order regardless of scheduling.
  CHECK(titles(got) == std::vector<std::string>{"alpha:a1", "alpha:a2",
                                                "alpha:a3", "beta:b1",
                                                "beta:b2", "beta:b3"});
  CHECK(report.downloaded == 6);
  REQUIRE(report.hits.size() == 4);
  CHECK(report.hits[0].adapter == "alpha");
  CHECK(report.hits[0].keyword == "k1");
  CHECK(report.hits[0].hits == 2);
  CHECK(report.hits[0].downloaded == 2);
  CHECK(report.failures.empty());

  CrawlReport again;
  CHECK(titles(crawl_corpus(adapters, keywords, limits, again)) == titles(got));

  SUBCASE("single worker gives the same order") {
    CrawlLimits serial;
    serial.workers = 1;
    CrawlReport r;
    CHECK(titles(crawl_corpus(adapters, keywords, serial, r)) == titles(got));
  }
}

TEST_CASE("crawl_corpus reports failures instead of throwing") {
  StubAdapter flaky("flaky", {{"k", {"ok1", "bad1", "ok2"}}});
  std::vector<SourceAdapter*> adapters{&flaky};

  SUBCASE("download failures keep the rest of the keyword") {
    CrawlReport report;
    auto got = crawl_corpus(adapters, {"k"}, {}, report);
    CHECK(titles(got) == std::vector<std::string>{"flaky:ok1", "flaky:ok2"});
    CHECK(report.downloaded == 2);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].id == "fixture:bad1");
    CHECK(report.failures[0].message == "download failed for fixture:bad1");
    CHECK(report.hits[0].hits == 3);
    CHECK(report.hits[0].downloaded == 2);
  }
  SUBCASE("search failures record an empty id") {
    CrawlReport report;
    auto got = crawl_corpus(adapters, {"explode"}, {}, report);
    CHECK(got.empty());
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].id == "");
    CHECK(report.failures[0].message == "search exploded");
  }
}

TEST_CASE("per-keyword limit caps search hits") {
  StubAdapter wide("wide", {{"k", {"a", "b", "c", "d", "e"}}});
  std::vector<SourceAdapter*> adapters{&wide};
  CrawlLimits limits;
  limits.per_keyword_limit = 2;
  CrawlReport report;
  auto got = crawl_corpus(adapters, {"k"}, limits, report);
  CHECK(got.size() == 2);
  CHECK(report.hits[0].hits == 2);
}

TEST_CASE("duplicates are downloaded again and deduped afterwards") {
  StubAdapter a("a", {{"k1", {"x", "y"}}, {"k2", {"x"}}});
  std::vector<SourceAdapter*> adapters{&a};
  CrawlReport report;
  auto got = crawl_corpus(adapters, {"k1", "k2"}, {}, report);
  CHECK(got.size() == 3);  // x fetched twice

  auto unique = dedup_tutorials(std::move(got));
  CHECK(titles(unique) == std::vector<std::string>{"a:x", "a:y"});
}

TEST_CASE("dedup keeps the first occurrence in stream order") {
  std::vector<RawTutorial> tutorials;
  for (const char* id : {"n1", "n2", "n1", "n3", "n2"}) {
    RawTutorial t;
    t.source = fx(id);
    t.text.title = std::string("#") + std::to_string(tutorials.size());
    tutorials.push_back(t);
  }
  auto unique = dedup_tutorials(std::move(tutorials));
  CHECK(titles(unique) == std::vector<std::string>{"#0", "#1", "#3"});
}

TEST_CASE("expand_keywords") {
  std::vector<TaskSeed> seeds{{"writer", "change font size"},
                              {"photos", "crop an image"}};

  SUBCASE("null llm keeps the seed keywords") {
    auto got = expand_keywords(seeds, nullptr, 10);
    CHECK(got.keywords == std::vector<std::string>{"writer change font size",
                                                   "photos crop an image"});
    CHECK(got.llm_ok);
  }
  SUBCASE("seed spacing is squeezed") {
    std::vector<TaskSeed> messy{{" writer ", "  change   font size "}};
    auto got = expand_keywords(messy, nullptr, 1);
    CHECK(got.keywords == std::vector<std::string>{"writer change font size"});
  }
  SUBCASE("model variants fill up to the target") {
    auto transport = std::make_shared<services::LambdaTransport>(
        [](const std::string&, const std::string&) {
          return services::HttpResult{
              200, chat_reply(R"({"keywords":["writer change font size guide",)"
                              R"("WRITER CHANGE FONT SIZE","photos crop fast"]})")};
        });
    services::ServiceClient llm({"llm", "text-std"}, transport,
                                std::make_shared<services::ManualClock>());
    auto got = expand_keywords(seeds, &llm, 4);
    // The duplicate differs only by case, so it is dropped and the target
    // leaves room for both remaining variants.
    CHECK(got.keywords ==
          std::vector<std::string>{"writer change font size",
                                   "photos crop an image",
                                   "writer change font size guide",
                                   "photos crop fast"});
    CHECK(got.llm_ok);
  }
  SUBCASE("target at or below the seed count skips the model") {
    int calls = 0;
    auto transport = std::make_shared<services::LambdaTransport>(
        [&](const std::string&, const std::string&) {
          ++calls;
          return services::HttpResult{200, chat_reply("{\"keywords\":[]}")};
        });
    services::ServiceClient llm({"llm", "text-std"}, transport,
                                std::make_shared<services::ManualClock>());
    auto got = expand_keywords(seeds, &llm, 2);
    CHECK(got.keywords.size() == 2);
    CHECK(calls == 0);
  }
  SUBCASE("model failure falls back to seeds and flags it") {
    auto transport = std::make_shared<services::LambdaTransport>(
        [](const std::string&, const std::string&) {
          return services::HttpResult{400, "nope"};
        });
    services::ServiceClient llm({"llm", "text-std"}, transport,
                                std::make_shared<services::ManualClock>());
    auto got = expand_keywords(seeds, &llm, 10);
    CHECK(got.keywords.size() == 2);
    CHECK_FALSE(got.llm_ok);
  }
}

TEST_CASE("fixture adapter serves the on-disk corpus") {
  TempDir tmp("fixturecorpus");
  fixture::write_corpus(tmp.path());
  FixtureAdapter adapter(tmp / "manifest.json");
  CHECK(adapter.name() == "fixture");
  CHECK(adapter.root() == tmp.path());

  SUBCASE("search returns canonical ids in manifest order") {
    auto ids = adapter.search("writer change font size", 0);
    REQUIRE(ids.size() == 9);
    CHECK(ids[0].source == Source::Fixture);
    CHECK(ids[0].str() == "fixture:vid01");
    CHECK(ids[8].str() == "fixture:art04");

    CHECK(adapter.search("writer change font size", 3).size() == 3);
    CHECK(adapter.search("no such keyword", 10).empty());
  }
  SUBCASE("download rebases refs against the corpus root") {
    RawTutorial t = adapter.download(fx("art01"));
    CHECK(t.modality == Modality::Article);
    CHECK(t.source.str() == "fixture:art01");
    CHECK_FALSE(t.text.title.empty());
    REQUIRE(!t.visual.images.empty());
    CHECK(t.visual.images[0] == "art01/images/img00.pgm");
    CHECK(std::filesystem::exists(tmp / t.visual.images[0]));
  }
  SUBCASE("video tutorials reference a frame stream") {
    RawTutorial t = adapter.download(fx("vid01"));
    CHECK(t.modality == Modality::Video);
    REQUIRE(t.visual.frames.has_value());
    CHECK(t.visual.frames->path == "vid01/frames.frames");
    CHECK(t.visual.frames->fps == doctest::Approx(10.0));
    CHECK(std::filesystem::exists(tmp / t.visual.frames->path));
    REQUIRE(t.text.transcript.has_value());
    CHECK_FALSE(t.text.transcript->empty());
  }
  SUBCASE("a corpus entry can simulate an outage") {
    CHECK_THROWS_WITH_AS(adapter.download(fx("badid")),
                         "simulated download failure for fixture:badid",
                         ServiceUnavailable);
  }
  SUBCASE("unknown ids are not from this corpus") {
    CHECK_THROWS_AS(adapter.download(fx("nope")), UnrecognizedSource);
  }
}
