#include "guiharvest/filter/judge.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "guiharvest/errors.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/services/json_chat.hpp"
#include "guiharvest/traj/parse.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::filter {

bool has_non_gui_residue(const Trajectory& traj) {
  for (const TrajStep& step : traj.steps)
    for (const Action& a : step.response.actions)
      if (a.kind == ActionKind::Wait || a.kind == ActionKind::CallUser)
        return true;
  return false;
}

std::string judge_prompt(const Trajectory& traj) {
  std::string steps;
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    if (i) steps += "\n";
    steps += std::to_string(i + 1) + ". " +
             traj::serialize_thought_action(traj.steps[i].response);
  }
  return prompts::render(prompts::judge(),
                         {{"task", traj.task}, {"steps", steps}});
}

namespace {

constexpr std::array<std::string_view, 4> kDropCodes = {
    "incoherent_actions", "observation_mismatch", "stalled",
    "truncated_task"};

}  // namespace

JudgeVerdict judge_trajectory(const Trajectory& traj,
                              services::ServiceClient& judge,
                              const BlobLoader& load) {
  if (traj.steps.empty()) throw std::invalid_argument("empty trajectory");
  if (has_non_gui_residue(traj)) return {false, "non_gui_residue"};

  services::ImageAttachment first;
  try {
    first.bytes = load(traj.steps.front().observation);
  } catch (const std::exception&) {
    return {false, "judge_unavailable"};
  }

  ojson reply;
  try {
    reply = services::ask_json(judge, judge_prompt(traj), {std::move(first)});
  } catch (const ServiceUnavailable&) {
    return {false, "judge_unavailable"};
  } catch (const MalformedResponse&) {
    return {false, "malformed_verdict"};
  }

  if (!reply.contains("verdict") || !reply["verdict"].is_string())
    return {false, "malformed_verdict"};
  std::string verdict = util::to_lower(reply["verdict"].get<std::string>());
  if (verdict == "keep") return {true, "ok"};
  if (verdict != "drop") return {false, "malformed_verdict"};

  std::string code;
  if (reply.contains("reason_code") && reply["reason_code"].is_string())
    code = reply["reason_code"].get<std::string>();
  if (std::find(kDropCodes.begin(), kDropCodes.end(), code) ==
      kDropCodes.end())
    code = "unspecified";
  return {false, code};
}

}  // namespace guiharvest::filter
