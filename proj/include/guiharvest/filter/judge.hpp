#pragma once

#include <string>

#include "guiharvest/services/client.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::filter {

struct JudgeVerdict {
  bool keep = false;
  std::string reason;  // "ok" when kept, drop reason code otherwise
};

// True when any action in any step is WAIT or CALL_USER. Those actions mark
// steps where the agent punted, so the whole trajectory is suspect.
bool has_non_gui_residue(const Trajectory& traj);

// Renders the judge prompt: task plus steps numbered from 1, each in the
// wire serialization.
std::string judge_prompt(const Trajectory& traj);

// Screens one trajectory. The residue check runs first, without a model call
// (drop reason "non_gui_residue"); the judge model then sees the rendered
// prompt and the first observation image. A kept verdict carries reason
// "ok". Locally assigned drop reasons: "judge_unavailable" when the judge
// cannot run (service outage, unreadable observation), "malformed_verdict"
// when the reply is unusable, "unspecified" when the model supplies an
// unknown code. An unverifiable trajectory is never kept.
JudgeVerdict judge_trajectory(const Trajectory& traj,
                              services::ServiceClient& judge,
                              const BlobLoader& load);

}  // namespace guiharvest::filter
