#include <doctest.h>

#include <fstream>
#include <string>

#include "guiharvest/errors.hpp"
#include "guiharvest/pipeline/config.hpp"
#include "support/tmpdir.hpp"

using namespace guiharvest;
using namespace guiharvest::pipeline;

TEST_CASE("an empty document yields the defaults") {
  PipelineConfig cfg = parse_config("{}");
  CHECK(cfg.seeds.empty());
  CHECK(cfg.keyword_target == 0);
  CHECK(cfg.adapter == "fixture");
  CHECK(cfg.manifest.empty());
  CHECK(cfg.per_keyword_limit == 10);
  CHECK(cfg.crawl_workers == 4);
  CHECK(cfg.max_steps == 8);
  CHECK(cfg.history_window == 2);
  CHECK(cfg.sft_history == 2);
  CHECK(cfg.seed == 0);
  CHECK(cfg.created_at == "1970-01-01T00:00:00Z");
  CHECK(cfg.services.mode == TransportMode::Replay);
  CHECK(cfg.services.base_url == "http://127.0.0.1:8600");
  CHECK(cfg.services.api_key.empty());
  CHECK(cfg.services.timeout_s == 60.0);
  CHECK(cfg.services.fixtures == "fixtures");
  CHECK(cfg.services.llm.name == "llm");
  CHECK(cfg.services.llm.model == "text-std");
  CHECK(cfg.services.llm.max_retries == 2);
  CHECK(cfg.services.vlm.model == "vision-std");
  CHECK(cfg.services.agent.model == "ui-agent");
  CHECK(cfg.services.asr.model == "asr-std");
}

TEST_CASE("every field parses") {
  PipelineConfig cfg = parse_config(R"({
    "seeds": [
      {"app_or_web": "writer", "task": "change font size"},
      {"app_or_web": "photos", "task": "crop an image"}
    ],
    "keyword_target": 12,
    "adapter": "fixture",
    "manifest": "corpus/manifest.json",
    "per_keyword_limit": 5,
    "crawl_workers": 2,
    "max_steps": 6,
    "history_window": 3,
    "sft_history": 1,
    "seed": 42,
    "created_at": "2024-05-01T12:00:00Z",
    "services": {
      "mode": "record",
      "base_url": "http://10.0.0.5:9000",
      "api_key": "sekret",
      "timeout_s": 5.5,
      "fixtures": "exchanges",
      "llm": {"model": "text-big", "max_retries": 0},
      "agent": {"requests_per_minute": 30, "backoff_base_s": 0.1,
                "backoff_cap_s": 2.0}
    }
  })");
  REQUIRE(cfg.seeds.size() == 2);
  CHECK(cfg.seeds[0].app_or_web == "writer");
  CHECK(cfg.seeds[0].task == "change font size");
  CHECK(cfg.seeds[1].app_or_web == "photos");
  CHECK(cfg.keyword_target == 12);
  CHECK(cfg.manifest == "corpus/manifest.json");
  CHECK(cfg.per_keyword_limit == 5);
  CHECK(cfg.crawl_workers == 2);
  CHECK(cfg.max_steps == 6);
  CHECK(cfg.history_window == 3);
  CHECK(cfg.sft_history == 1);
  CHECK(cfg.seed == 42);
  CHECK(cfg.created_at == "2024-05-01T12:00:00Z");
  CHECK(cfg.services.mode == TransportMode::Record);
  CHECK(cfg.services.base_url == "http://10.0.0.5:9000");
  CHECK(cfg.services.api_key == "sekret");
  CHECK(cfg.services.timeout_s == 5.5);
  CHECK(cfg.services.fixtures == "exchanges");
  CHECK(cfg.services.llm.model == "text-big");
  CHECK(cfg.services.llm.max_retries == 0);
  // Untouched endpoints keep their defaults.
  CHECK(cfg.services.vlm.model == "vision-std");
  CHECK(cfg.services.agent.requests_per_minute == 30);
  CHECK(cfg.services.agent.backoff_base_s == 0.1);
  CHECK(cfg.services.agent.backoff_cap_s == 2.0);
  CHECK(cfg.services.agent.model == "ui-agent");
}

TEST_CASE("transport_mode_name covers the three modes") {
  CHECK(transport_mode_name(TransportMode::Live) == "live");
  CHECK(transport_mode_name(TransportMode::Record) == "record");
  CHECK(transport_mode_name(TransportMode::Replay) == "replay");
}

namespace {

void expect_config_error(const std::string& text, const std::string& key_path,
                         const std::string& what) {
  INFO(text);
  try {
    parse_config(text);
    FAIL_CHECK("expected ConfigError for " + key_path);
  } catch (const ConfigError& e) {
    CHECK(e.key_path() == key_path);
    CHECK(e.what() == what);
  }
}

}  // namespace

TEST_CASE("config errors name the offending key") {
  expect_config_error("[]", "", "config is not a JSON object");
  expect_config_error("not json at all", "", "config is not a JSON object");
  expect_config_error(R"({"seeds": 3})", "seeds", "seeds: expected an array");
  expect_config_error(R"({"seeds": [{"app_or_web": "a", "task": "t"}, 7]})",
                      "seeds[1]", "seeds[1]: expected an object");
  expect_config_error(R"({"seeds": [{"app_or_web": "a"}]})", "seeds[0].task",
                      "seeds[0].task: must not be empty");
  expect_config_error(R"({"seeds": [{"app_or_web": "", "task": "t"}]})",
                      "seeds[0].app_or_web",
                      "seeds[0].app_or_web: must not be empty");
  expect_config_error(R"({"seeds": [{"app_or_web": "a", "task": 4}]})",
                      "seeds[0].task", "seeds[0].task: expected a string");
  expect_config_error(R"({"keyword_target": "many"})", "keyword_target",
                      "keyword_target: expected an integer");
  expect_config_error(R"({"keyword_target": -1})", "keyword_target",
                      "keyword_target: expected a value in [0, 100000]");
  expect_config_error(R"({"adapter": "web"})", "adapter",
                      "adapter: unknown adapter \"web\"");
  expect_config_error(R"({"per_keyword_limit": 0})", "per_keyword_limit",
                      "per_keyword_limit: expected a value in [1, 100000]");
  expect_config_error(R"({"crawl_workers": 0})", "crawl_workers",
                      "crawl_workers: expected a value in [1, 256]");
  expect_config_error(R"({"max_steps": 65})", "max_steps",
                      "max_steps: expected a value in [1, 64]");
  expect_config_error(R"({"history_window": -1})", "history_window",
                      "history_window: expected a value in [0, 16]");
  expect_config_error(R"({"seed": -5})", "seed",
                      "seed: expected a value in [0, 9223372036854775807]");
  expect_config_error(R"({"services": []})", "services",
                      "services: expected an object");
  expect_config_error(R"({"services": {"mode": "offline"}})", "services.mode",
                      "services.mode: expected live, record, or replay");
  expect_config_error(R"({"services": {"timeout_s": 0}})", "services.timeout_s",
                      "services.timeout_s: value out of range");
  expect_config_error(R"({"services": {"timeout_s": "slow"}})",
                      "services.timeout_s",
                      "services.timeout_s: expected a number");
  expect_config_error(R"({"services": {"llm": 9}})", "services.llm",
                      "services.llm: expected an object");
  expect_config_error(R"({"services": {"llm": {"max_retries": -1}}})",
                      "services.llm.max_retries",
                      "services.llm.max_retries: expected a value in [0, 100]");
  expect_config_error(
      R"({"services": {"agent": {"backoff_base_s": -0.5}}})",
      "services.agent.backoff_base_s",
      "services.agent.backoff_base_s: value out of range");
}

TEST_CASE("load_config resolves paths next to the file") {
  TempDir tmp("config");
  auto dir = tmp.path();
  {
    std::ofstream out(dir / "pipeline.json", std::ios::binary);
    out << R"({
      "manifest": "corpus/manifest.json",
      "services": {"fixtures": "replay"}
    })";
  }
  PipelineConfig cfg = load_config(dir / "pipeline.json");
  CHECK(cfg.manifest == dir / "corpus/manifest.json");
  CHECK(cfg.services.fixtures == dir / "replay");

  SUBCASE("absolute paths pass through untouched") {
    std::ofstream out(dir / "abs.json", std::ios::binary);
    out << R"({"manifest": ")" << (dir / "m.json").string()
        << R"(", "services": {"fixtures": ")" << (dir / "f").string()
        << R"("}})";
    out.close();
    PipelineConfig abs = load_config(dir / "abs.json");
    CHECK(abs.manifest == dir / "m.json");
    CHECK(abs.services.fixtures == dir / "f");
  }
  SUBCASE("an absent manifest stays empty") {
    std::ofstream out(dir / "bare.json", std::ios::binary);
    out << "{}";
    out.close();
    PipelineConfig bare = load_config(dir / "bare.json");
    CHECK(bare.manifest.empty());
    // The default fixtures dir is still anchored to the config file.
    CHECK(bare.services.fixtures == dir / "fixtures");
  }
  SUBCASE("a missing file reports its path") {
    CHECK_THROWS_WITH_AS(load_config(dir / "nope.json"),
                         ("cannot open " + (dir / "nope.json").string()).c_str(),
                         Error);
  }
}
