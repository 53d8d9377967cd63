#pragma once

#include <string>
#include <vector>

#include "guiharvest/counters.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::dataset {

// Fills the distribution histograms of `counters` from the surviving
// trajectories: steps per trajectory, action kinds across all steps (every
// action of a multi-action step counts), platforms. Funnel counts and drop
// reasons are left alone, so this composes with counters accumulated during
// the run.
void compute_stats(const std::vector<Trajectory>& trajectories,
                   PipelineCounters& counters);

// Full stats report as a canonical JSON document (trailing newline):
//   funnel            the four stage counts, in order
//   retention         after_trajectory_filter / crawled, 4 decimals
//   retention_percent the same, rendered "33.0%" style
//   steps_per_trajectory, actions, platforms
//                     {"counts": {...}, "percent": {...}} with percent
//                     values summing to ~100, 4 decimals
//   drop_reasons      counts by reason code
std::string stats_json(const PipelineCounters& counters);

}  // namespace guiharvest::dataset
