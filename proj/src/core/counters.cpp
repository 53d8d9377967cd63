#include "guiharvest/counters.hpp"

#include "guiharvest/errors.hpp"

namespace guiharvest {

std::string_view filter_stage_name(FilterStage stage) {
  switch (stage) {
    case FilterStage::Crawled: return "crawled";
    case FilterStage::Dedup: return "after_dedup";
    case FilterStage::ContentFilter: return "after_content_filter";
    case FilterStage::TrajectoryFilter: return "after_trajectory_filter";
  }
  return "unknown";
}

PipelineCounters update_counters(PipelineCounters counters, FilterStage stage,
                                 std::uint64_t count) {
  switch (stage) {
    case FilterStage::Crawled: counters.crawled = count; break;
    case FilterStage::Dedup: counters.after_dedup = count; break;
    case FilterStage::ContentFilter: counters.after_content_filter = count; break;
    case FilterStage::TrajectoryFilter: counters.after_trajectory_filter = count; break;
  }
  const std::uint64_t seq[] = {counters.crawled, counters.after_dedup,
                               counters.after_content_filter,
                               counters.after_trajectory_filter};
  for (int i = 0; i + 1 < 4; ++i) {
    if (seq[i + 1] > seq[i]) {
      throw MonotonicityViolation(
          std::string(filter_stage_name(static_cast<FilterStage>(i + 1))) +
          " (" + std::to_string(seq[i + 1]) + ") exceeds " +
          std::string(filter_stage_name(static_cast<FilterStage>(i))) + " (" +
          std::to_string(seq[i]) + ")");
    }
  }
  return counters;
}

namespace {
void merge_map(std::map<std::string, std::uint64_t>& into,
               const std::map<std::string, std::uint64_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}
}  // namespace

PipelineCounters merge_counters(const PipelineCounters& a,
                                const PipelineCounters& b) {
  PipelineCounters out = a;
  out.crawled += b.crawled;
  out.after_dedup += b.after_dedup;
  out.after_content_filter += b.after_content_filter;
  out.after_trajectory_filter += b.after_trajectory_filter;
  merge_map(out.steps_histogram, b.steps_histogram);
  merge_map(out.action_histogram, b.action_histogram);
  merge_map(out.platform_histogram, b.platform_histogram);
  merge_map(out.drop_reasons, b.drop_reasons);
  return out;
}

double retention(const PipelineCounters& counters) {
  if (counters.crawled == 0) return 0.0;
  return static_cast<double>(counters.after_trajectory_filter) /
         static_cast<double>(counters.crawled);
}

std::string step_bucket(std::size_t length) {
  if (length >= 9) return "9+";
  return std::to_string(length);
}

}  // namespace guiharvest
