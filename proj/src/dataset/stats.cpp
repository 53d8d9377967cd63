#include "guiharvest/dataset/stats.hpp"

#include <cstdio>

#include "guiharvest/actions.hpp"
#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::dataset {

void compute_stats(const std::vector<Trajectory>& trajectories,
                   PipelineCounters& counters) {
  for (const Trajectory& t : trajectories) {
    ++counters.steps_histogram[step_bucket(t.steps.size())];
    ++counters.platform_histogram[std::string(platform_name(t.platform))];
    for (const TrajStep& step : t.steps)
      for (const Action& a : step.response.actions)
        ++counters.action_histogram[std::string(kind_name(a.kind))];
  }
}

namespace {

ojson histogram_block(const std::map<std::string, std::uint64_t>& hist) {
  std::uint64_t total = 0;
  for (const auto& [k, v] : hist) total += v;
  ojson counts = ojson::object();
  ojson percent = ojson::object();
  for (const auto& [k, v] : hist) {
    counts[k] = v;
    double p = total ? 100.0 * static_cast<double>(v) /
                           static_cast<double>(total)
                     : 0.0;
    percent[k] = util::quantize_coord(p);
  }
  ojson block;
  block["counts"] = counts;
  block["percent"] = percent;
  return block;
}

}  // namespace

std::string stats_json(const PipelineCounters& counters) {
  ojson funnel;
  funnel["crawled"] = counters.crawled;
  funnel["after_dedup"] = counters.after_dedup;
  funnel["after_content_filter"] = counters.after_content_filter;
  funnel["after_trajectory_filter"] = counters.after_trajectory_filter;

  ojson j;
  j["funnel"] = funnel;
  j["retention"] = util::quantize_coord(retention(counters));
  char percent[32];
  std::snprintf(percent, sizeof percent, "%.1f%%",
                100.0 * retention(counters));
  j["retention_percent"] = percent;
  j["steps_per_trajectory"] = histogram_block(counters.steps_histogram);
  j["actions"] = histogram_block(counters.action_histogram);
  j["platforms"] = histogram_block(counters.platform_histogram);
  ojson drops = ojson::object();
  for (const auto& [k, v] : counters.drop_reasons) drops[k] = v;
  j["drop_reasons"] = drops;
  return canonical_dump(j) + "\n";
}

}  // namespace guiharvest::dataset
