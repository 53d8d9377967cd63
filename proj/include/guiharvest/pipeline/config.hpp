#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "guiharvest/crawl/keywords.hpp"
#include "guiharvest/services/client.hpp"

namespace guiharvest::pipeline {

// How pipeline stages talk to model services.
//   live    real HTTP against base_url
//   record  real HTTP, every exchange saved under `fixtures`
//   replay  answered from `fixtures` alone; a request with no recording
//           fails the call
enum class TransportMode { Live, Record, Replay };

std::string_view transport_mode_name(TransportMode m);

struct ServicesConfig {
  TransportMode mode = TransportMode::Replay;
  std::string base_url = "http://127.0.0.1:8600";
  std::string api_key;  // empty: no Authorization header
  double timeout_s = 60.0;
  std::filesystem::path fixtures = "fixtures";  // record/replay exchange store
  services::ServiceEndpoint llm{.name = "llm", .model = "text-std"};
  services::ServiceEndpoint vlm{.name = "vlm", .model = "vision-std"};
  services::ServiceEndpoint agent{.name = "agent", .model = "ui-agent"};
  services::ServiceEndpoint asr{.name = "asr", .model = "asr-std"};
};

struct PipelineConfig {
  std::vector<crawl::TaskSeed> seeds;
  // Total keywords after model expansion; values at or below the seed count
  // skip the expansion call.
  int keyword_target = 0;
  std::string adapter = "fixture";   // the only built-in corpus adapter
  std::filesystem::path manifest;    // fixture corpus manifest
  int per_keyword_limit = 10;
  int crawl_workers = 4;
  int max_steps = 8;        // rough steps extracted per tutorial
  int history_window = 2;   // agent context during generation
  int sft_history = 2;      // history steps per training sample
  std::uint64_t seed = 0;   // backoff jitter seed
  // Stamped into the dataset manifest. Comes from config, not the wall
  // clock, so replayed runs are byte-identical.
  std::string created_at = "1970-01-01T00:00:00Z";
  ServicesConfig services;
};

// Parses a config document, applying defaults for absent keys. Type errors,
// unknown enum values, and out-of-range numbers raise ConfigError with the
// dotted key path.
PipelineConfig parse_config(const std::string& text);

// parse_config over the file's bytes, then resolves the manifest and
// fixtures paths relative to the file's directory.
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace guiharvest::pipeline
