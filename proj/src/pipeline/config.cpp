#include "guiharvest/pipeline/config.hpp"

#include <cstdint>
#include <limits>

#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::pipeline {

std::string_view transport_mode_name(TransportMode m) {
  switch (m) {
    case TransportMode::Live: return "live";
    case TransportMode::Record: return "record";
    case TransportMode::Replay: return "replay";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(msg, path);
}

const ojson* find(const ojson& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const ojson& obj, const char* key,
                       const std::string& path, std::string fallback) {
  const ojson* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(path + key, "expected a string");
  return v->get<std::string>();
}

std::int64_t get_int(const ojson& obj, const char* key,
                     const std::string& path, std::int64_t fallback,
                     std::int64_t lo, std::int64_t hi) {
  const ojson* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(path + key, "expected an integer");
  std::int64_t n = v->get<std::int64_t>();
  if (n < lo || n > hi)
    fail(path + key, "expected a value in [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  return n;
}

double get_double(const ojson& obj, const char* key, const std::string& path,
                  double fallback, double lo, double hi) {
  const ojson* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(path + key, "expected a number");
  double n = v->get<double>();
  if (n < lo || n > hi) fail(path + key, "value out of range");
  return n;
}

void parse_endpoint(const ojson& services, const char* key,
                    const std::string& path,
                    services::ServiceEndpoint& endpoint) {
  const ojson* v = find(services, key);
  if (!v) return;
  if (!v->is_object()) fail(path + key, "expected an object");
  std::string sub = path + key + ".";
  endpoint.model = get_string(*v, "model", sub, endpoint.model);
  endpoint.max_retries = static_cast<int>(
      get_int(*v, "max_retries", sub, endpoint.max_retries, 0, 100));
  endpoint.requests_per_minute = static_cast<int>(get_int(
      *v, "requests_per_minute", sub, endpoint.requests_per_minute, 0, 100000));
  endpoint.backoff_base_s =
      get_double(*v, "backoff_base_s", sub, endpoint.backoff_base_s, 0.0, 3600.0);
  endpoint.backoff_cap_s =
      get_double(*v, "backoff_cap_s", sub, endpoint.backoff_cap_s, 0.0, 3600.0);
}

}  // namespace

PipelineConfig parse_config(const std::string& text) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("config is not a JSON object", "");

  PipelineConfig cfg;

  if (const ojson* seeds = find(j, "seeds")) {
    if (!seeds->is_array()) fail("seeds", "expected an array");
    for (std::size_t i = 0; i < seeds->size(); ++i) {
      const ojson& s = (*seeds)[i];
      std::string path = "seeds[" + std::to_string(i) + "].";
      if (!s.is_object()) fail("seeds[" + std::to_string(i) + "]",
                               "expected an object");
      crawl::TaskSeed seed;
      seed.app_or_web = get_string(s, "app_or_web", path, "");
      seed.task = get_string(s, "task", path, "");
      if (seed.app_or_web.empty()) fail(path + "app_or_web", "must not be empty");
      if (seed.task.empty()) fail(path + "task", "must not be empty");
      cfg.seeds.push_back(std::move(seed));
    }
  }

  cfg.keyword_target = static_cast<int>(
      get_int(j, "keyword_target", "", cfg.keyword_target, 0, 100000));
  cfg.adapter = get_string(j, "adapter", "", cfg.adapter);
  if (cfg.adapter != "fixture")
    fail("adapter", "unknown adapter \"" + cfg.adapter + "\"");
  cfg.manifest = get_string(j, "manifest", "", cfg.manifest.string());
  cfg.per_keyword_limit = static_cast<int>(
      get_int(j, "per_keyword_limit", "", cfg.per_keyword_limit, 1, 100000));
  cfg.crawl_workers = static_cast<int>(
      get_int(j, "crawl_workers", "", cfg.crawl_workers, 1, 256));
  cfg.max_steps =
      static_cast<int>(get_int(j, "max_steps", "", cfg.max_steps, 1, 64));
  cfg.history_window = static_cast<int>(
      get_int(j, "history_window", "", cfg.history_window, 0, 16));
  cfg.sft_history =
      static_cast<int>(get_int(j, "sft_history", "", cfg.sft_history, 0, 16));
  cfg.seed = static_cast<std::uint64_t>(
      get_int(j, "seed", "", static_cast<std::int64_t>(cfg.seed), 0,
              std::numeric_limits<std::int64_t>::max()));
  cfg.created_at = get_string(j, "created_at", "", cfg.created_at);

  if (const ojson* services = find(j, "services")) {
    if (!services->is_object()) fail("services", "expected an object");
    ServicesConfig& s = cfg.services;
    std::string mode = get_string(*services, "mode", "services.",
                                  std::string(transport_mode_name(s.mode)));
    if (mode == "live") s.mode = TransportMode::Live;
    else if (mode == "record") s.mode = TransportMode::Record;
    else if (mode == "replay") s.mode = TransportMode::Replay;
    else fail("services.mode", "expected live, record, or replay");
    s.base_url = get_string(*services, "base_url", "services.", s.base_url);
    s.api_key = get_string(*services, "api_key", "services.", s.api_key);
    s.timeout_s =
        get_double(*services, "timeout_s", "services.", s.timeout_s, 0.1, 3600.0);
    s.fixtures =
        get_string(*services, "fixtures", "services.", s.fixtures.string());
    parse_endpoint(*services, "llm", "services.", s.llm);
    parse_endpoint(*services, "vlm", "services.", s.vlm);
    parse_endpoint(*services, "agent", "services.", s.agent);
    parse_endpoint(*services, "asr", "services.", s.asr);
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  PipelineConfig cfg = parse_config(util::read_text_file(path));
  std::filesystem::path base = path.parent_path();
  if (!cfg.manifest.empty() && cfg.manifest.is_relative())
    cfg.manifest = base / cfg.manifest;
  if (cfg.services.fixtures.is_relative())
    cfg.services.fixtures = base / cfg.services.fixtures;
  return cfg;
}

}  // namespace guiharvest::pipeline
