#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "guiharvest/counters.hpp"
#include "guiharvest/pipeline/config.hpp"

namespace guiharvest::pipeline {

// Every stage owns one directory under the workdir:
//   crawl/     raw_tutorials.jsonl, state.json, report.json
//   process/   processed.jsonl, images/ (ingested observations)
//   generate/  trajectories.jsonl
//   filter/    dataset/ (trajectories.jsonl, manifest.json, images/),
//              verdicts.jsonl
//   sft/       sft.jsonl, summary.json
//   stats/     stats.json
//   eval/      report.json
// plus counters.json and log.jsonl in each stage that advances the funnel.
// A stage whose directory already has content refuses to run unless
// `overwrite` is set, in which case the directory is rebuilt from scratch.
// Missing upstream artifacts raise StageInputMissing naming the stage to run
// first.
struct StageOptions {
  std::filesystem::path workdir = "work";
  bool overwrite = false;
};

struct StageResult {
  std::string stage;
  PipelineCounters counters;
  std::uint64_t records_out = 0;  // rows in the stage's primary artifact
};

StageResult run_crawl(const PipelineConfig& cfg, const StageOptions& opt);
StageResult run_process(const PipelineConfig& cfg, const StageOptions& opt);
StageResult run_generate(const PipelineConfig& cfg, const StageOptions& opt);
StageResult run_filter(const PipelineConfig& cfg, const StageOptions& opt);
StageResult run_export_sft(const PipelineConfig& cfg, const StageOptions& opt);
StageResult run_stats(const PipelineConfig& cfg, const StageOptions& opt);
StageResult run_eval(const PipelineConfig& cfg, const StageOptions& opt,
                     const std::filesystem::path& records);

// crawl through stats in order; eval appended when records are given.
std::vector<StageResult> run_all(
    const PipelineConfig& cfg, const StageOptions& opt,
    const std::optional<std::filesystem::path>& eval_records = std::nullopt);

}  // namespace guiharvest::pipeline
