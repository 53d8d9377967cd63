#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guiharvest/services/client.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::traj {

struct AlignResult {
  std::vector<StepPair> steps;
  std::string policy;  // "equal", "truncated_steps", "truncated_observations"
};

// Zips rough step descriptions with observation images, truncating the longer
// side. Throws EmptyAfterAlignment when either side is empty.
AlignResult align_steps(const std::vector<std::string>& rough_steps,
                        const std::vector<ImageRef>& observations);

enum class OutcomeKind {
  Ok,              // parsed, valid, GUI-operable
  ParseFailure,    // model text did not yield valid actions
  NonGui,          // first action was WAIT or CALL_USER
  ServiceFailure,  // agent call failed or observation unreadable
};

std::string_view outcome_kind_name(OutcomeKind kind);

struct StepOutcome {
  int index = 0;  // 1-based tutorial step index
  OutcomeKind kind = OutcomeKind::ServiceFailure;
  std::optional<ThoughtAction> response;  // set for Ok and NonGui
  std::string raw;                        // model text, verbatim
  std::string detail;                     // failure reason
};

struct GenerateOptions {
  int history_window = 2;  // max prior steps sent as context
  bool stateless = false;  // true: every step is sent without history
};

// Runs the agent over every tutorial step, one outcome per step. History
// carries only the Ok steps since the last non-Ok outcome (a break resets
// it), capped at history_window, so a request never exceeds
// history_window + 1 images. Service failures become outcomes, not throws;
// a run over a tutorial always yields |steps| outcomes.
std::vector<StepOutcome> generate_trajectory(const ProcessedTutorial& tutorial,
                                             services::ServiceClient& agent,
                                             const GenerateOptions& options,
                                             const BlobLoader& load);

// Cuts the outcome sequence into maximal runs of Ok steps and materializes
// each run as a trajectory with id "<source>#<run ordinal>". Steps that
// failed contribute nothing; an all-failed tutorial yields no trajectories.
// outcomes must line up 1:1 with tutorial.steps.
std::vector<Trajectory> split_trajectory(const ProcessedTutorial& tutorial,
                                         const std::vector<StepOutcome>& outcomes);

}  // namespace guiharvest::traj
