#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace guiharvest {

// The four funnel stages, in pipeline order. Counts are tutorials, not
// trajectories.
enum class FilterStage {
  Crawled,
  Dedup,
  ContentFilter,
  TrajectoryFilter,
};

std::string_view filter_stage_name(FilterStage stage);

struct PipelineCounters {
  std::uint64_t crawled = 0;
  std::uint64_t after_dedup = 0;
  std::uint64_t after_content_filter = 0;
  std::uint64_t after_trajectory_filter = 0;

  // Diagnostics over the surviving data.
  std::map<std::string, std::uint64_t> steps_histogram;     // "1".."8", "9+"
  std::map<std::string, std::uint64_t> action_histogram;    // by wire name
  std::map<std::string, std::uint64_t> platform_histogram;  // by platform name
  std::map<std::string, std::uint64_t> drop_reasons;

  bool operator==(const PipelineCounters&) const = default;
};

// Sets the absolute count for a stage. Throws MonotonicityViolation when the
// result would leave a later stage above an earlier one.
PipelineCounters update_counters(PipelineCounters counters, FilterStage stage,
                                 std::uint64_t count);

// Element-wise sum, for combining shard counters. Monotonicity of the inputs
// implies monotonicity of the sum.
PipelineCounters merge_counters(const PipelineCounters& a,
                                const PipelineCounters& b);

// after_trajectory_filter / crawled. 0 when nothing was crawled.
double retention(const PipelineCounters& counters);

// Histogram bucket for a trajectory length: "1".."8", then "9+".
std::string step_bucket(std::size_t length);

}  // namespace guiharvest
