#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "corpus.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/pipeline/config.hpp"
#include "guiharvest/pipeline/stages.hpp"
#include "guiharvest/util/fs.hpp"
#include "mock_brain.hpp"
#include "support/tmpdir.hpp"

using namespace guiharvest;
using namespace guiharvest::pipeline;
namespace fs = std::filesystem;

namespace {

std::uint64_t count_lines(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in.good());
  std::string line;
  std::uint64_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

// The full corpus plus the mock services, reachable over loopback HTTP.
struct PipelineEnv {
  TempDir tmp{"pipeline"};
  httplib::Server server;
  std::thread runner;
  PipelineConfig cfg;

  PipelineEnv() {
    fixture::write_corpus(tmp / "corpus");
    auto handle = [](const httplib::Request& req, httplib::Response& res) {
      services::HttpResult out = fixture::mock_brain(req.path, req.body);
      res.status = out.status;
      res.set_content(out.body, "application/json");
    };
    server.Post("/v1/chat/completions", handle);
    server.Post("/v1/audio/transcriptions", handle);
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    runner = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    cfg = parse_config(fixture::config_text(
        "live", "http://127.0.0.1:" + std::to_string(port),
        tmp / "corpus" / "manifest.json", tmp / "unused-fixtures"));
  }
  ~PipelineEnv() {
    server.stop();
    runner.join();
  }
  StageOptions options(const char* name) const {
    StageOptions opt;
    opt.workdir = tmp / name;
    return opt;
  }
};

// Seeds only, no expansion: crawl runs without any service.
PipelineConfig offline_crawl_config(const fs::path& manifest) {
  PipelineConfig cfg = parse_config(fixture::config_text(
      "live", "http://127.0.0.1:1", manifest, "unused"));
  cfg.keyword_target = 0;
  return cfg;
}

}  // namespace

TEST_CASE("stages demand their upstream artifacts") {
  TempDir tmp("stage-order");
  StageOptions opt;
  opt.workdir = tmp / "work";
  PipelineConfig cfg;
  cfg.manifest = tmp / "absent-manifest.json";

  auto expect_missing = [&](auto&& stage, const std::string& producer) {
    try {
      stage();
      FAIL_CHECK("expected StageInputMissing naming " + producer);
    } catch (const StageInputMissing& e) {
      std::string what = e.what();
      CHECK(what.find("run the \"" + producer + "\" stage first") !=
            std::string::npos);
      CHECK(what.find("not found") != std::string::npos);
    }
  };
  expect_missing([&] { run_process(cfg, opt); }, "crawl");
  expect_missing([&] { run_generate(cfg, opt); }, "process");
  expect_missing([&] { run_filter(cfg, opt); }, "generate");
  expect_missing([&] { run_export_sft(cfg, opt); }, "filter");
  expect_missing([&] { run_stats(cfg, opt); }, "filter");
  expect_missing([&] { run_eval(cfg, opt, tmp / "none.jsonl"); },
                 "caller-supplied predictions");

  SUBCASE("crawl without a manifest is a config error") {
    cfg.manifest.clear();
    try {
      run_crawl(cfg, opt);
      FAIL_CHECK("expected ConfigError for the missing manifest");
    } catch (const ConfigError& e) {
      CHECK(e.key_path() == "manifest");
    }
  }
}

TEST_CASE("crawl writes its artifacts and refuses to clobber them") {
  TempDir tmp("crawl-stage");
  fixture::write_corpus(tmp / "corpus");
  PipelineConfig cfg = offline_crawl_config(tmp / "corpus" / "manifest.json");
  StageOptions opt;
  opt.workdir = tmp / "work";

  StageResult r = run_crawl(cfg, opt);
  CHECK(r.stage == "crawl");
  // Three seed keywords hit disjoint tutorial sets: 9 + 9 + 8.
  CHECK(r.counters.crawled == 26);
  CHECK(r.counters.after_dedup == 26);
  CHECK(r.records_out == 26);

  fs::path dir = opt.workdir / "crawl";
  CHECK(count_lines(dir / "raw_tutorials.jsonl") == 26);
  CHECK(fs::exists(dir / "state.json"));
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "counters.json"));
  CHECK(fs::exists(dir / "log.jsonl"));

  SUBCASE("a finished stage directory blocks a rerun") {
    try {
      run_crawl(cfg, opt);
      FAIL_CHECK("expected the overwrite guard to fire");
    } catch (const Error& e) {
      std::string what = e.what();
      CHECK(what.find(dir.string()) != std::string::npos);
      CHECK(what.find("already has output; pass --overwrite to rebuild it") !=
            std::string::npos);
    }
  }
  SUBCASE("--overwrite rebuilds byte-identically") {
    std::string tutorials =
        util::read_text_file(dir / "raw_tutorials.jsonl");
    std::string log = util::read_text_file(dir / "log.jsonl");
    opt.overwrite = true;
    StageResult again = run_crawl(cfg, opt);
    CHECK(again.counters.crawled == 26);
    CHECK(util::read_text_file(dir / "raw_tutorials.jsonl") == tutorials);
    CHECK(util::read_text_file(dir / "log.jsonl") == log);
  }
}

TEST_CASE("the full pipeline runs the corpus through every funnel stage") {
  PipelineEnv env;
  StageOptions opt = env.options("work");
  fixture::write_eval_records(env.tmp / "eval_records.jsonl");

  std::vector<StageResult> results =
      run_all(env.cfg, opt, env.tmp / "eval_records.jsonl");

  REQUIRE(results.size() == 7);
  CHECK(results[0].stage == "crawl");
  CHECK(results[1].stage == "process");
  CHECK(results[2].stage == "generate");
  CHECK(results[3].stage == "filter");
  CHECK(results[4].stage == "export-sft");
  CHECK(results[5].stage == "stats");
  CHECK(results[6].stage == "eval");

  // Five keywords find 35 tutorials; one download fails, four are
  // duplicates, four fail the content filter, two produce nothing usable,
  // and the judge trims the rest down to 19 sources.
  const PipelineCounters& funnel = results[3].counters;
  CHECK(funnel.crawled == 34);
  CHECK(funnel.after_dedup == 30);
  CHECK(funnel.after_content_filter == 26);
  CHECK(funnel.after_trajectory_filter == 19);

  CHECK(results[0].records_out == 30);  // tutorials after dedup
  CHECK(results[1].records_out == 24);  // processed tutorials
  CHECK(results[2].records_out == 26);  // trajectory candidates after splits
  CHECK(results[3].records_out == 21);  // kept trajectories
  CHECK(results[4].records_out == 61);  // SFT samples
  CHECK(results[5].records_out == 21);
  CHECK(results[6].records_out == 6);

  fs::path work = opt.workdir;
  CHECK(fs::exists(work / "filter" / "dataset" / "manifest.json"));
  CHECK(count_lines(work / "filter" / "dataset" / "trajectories.jsonl") == 21);
  CHECK(count_lines(work / "filter" / "verdicts.jsonl") == 26);
  CHECK(count_lines(work / "sft" / "sft.jsonl") == 61);

  std::string stats = util::read_text_file(work / "stats" / "stats.json");
  CHECK(stats.find("\"crawled\": 34") != std::string::npos);
  CHECK(stats.find("\"55.9%\"") != std::string::npos);  // 19 of 34
  std::string eval_report = util::read_text_file(work / "eval" / "report.json");
  CHECK(eval_report.find("\"records\": 6") != std::string::npos);

  SUBCASE("a second run reproduces the artifacts byte for byte") {
    StageOptions second = env.options("work2");
    run_all(env.cfg, second, env.tmp / "eval_records.jsonl");
    for (const char* rel : {"filter/dataset/trajectories.jsonl",
                            "filter/dataset/manifest.json", "sft/sft.jsonl",
                            "stats/stats.json", "generate/log.jsonl"}) {
      INFO(rel);
      CHECK(util::read_text_file(work / rel) ==
            util::read_text_file(second.workdir / rel));
    }
  }
}
