#include "guiharvest/traj/generate.hpp"

#include <deque>
#include <stdexcept>

#include "guiharvest/errors.hpp"
#include "guiharvest/services/agent.hpp"
#include "guiharvest/traj/parse.hpp"

namespace guiharvest::traj {

AlignResult align_steps(const std::vector<std::string>& rough_steps,
                        const std::vector<ImageRef>& observations) {
  if (rough_steps.empty()) throw EmptyAfterAlignment("no rough steps to align");
  if (observations.empty()) throw EmptyAfterAlignment("no observations to align");
  AlignResult out;
  std::size_t n = std::min(rough_steps.size(), observations.size());
  out.policy = rough_steps.size() == observations.size() ? "equal"
               : rough_steps.size() > n ? "truncated_steps"
                                        : "truncated_observations";
  for (std::size_t i = 0; i < n; ++i) {
    out.steps.push_back(
        {static_cast<int>(i + 1), observations[i], rough_steps[i]});
  }
  return out;
}

std::string_view outcome_kind_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Ok: return "ok";
    case OutcomeKind::ParseFailure: return "parse_failure";
    case OutcomeKind::NonGui: return "non_gui";
    case OutcomeKind::ServiceFailure: return "service_failure";
  }
  return "unknown";
}

namespace {

bool is_non_gui(const ThoughtAction& ta) {
  ActionKind first = ta.actions.front().kind;
  return first == ActionKind::Wait || first == ActionKind::CallUser;
}

}  // namespace

std::vector<StepOutcome> generate_trajectory(const ProcessedTutorial& tutorial,
                                             services::ServiceClient& agent,
                                             const GenerateOptions& options,
                                             const BlobLoader& load) {
  if (tutorial.platform == Platform::Other)
    throw std::invalid_argument("cannot generate for platform \"other\"");
  if (options.history_window < 0)
    throw std::invalid_argument("negative history window");

  std::vector<StepOutcome> outcomes;
  std::deque<services::AgentHistoryStep> history;
  const int window = options.stateless ? 0 : options.history_window;

  for (const StepPair& step : tutorial.steps) {
    StepOutcome outcome;
    outcome.index = step.index;

    std::vector<std::uint8_t> observation;
    try {
      observation = load(step.observation);
    } catch (const std::exception& e) {
      outcome.kind = OutcomeKind::ServiceFailure;
      outcome.detail = std::string("observation unreadable: ") + e.what();
      history.clear();
      outcomes.push_back(std::move(outcome));
      continue;
    }

    std::vector<services::AgentHistoryStep> context(history.begin(), history.end());
    try {
      outcome.raw = services::agent_step(agent, observation,
                                         step.rough_description, context,
                                         tutorial.platform, window);
    } catch (const ServiceUnavailable& e) {
      outcome.kind = OutcomeKind::ServiceFailure;
      outcome.detail = e.what();
      history.clear();
      outcomes.push_back(std::move(outcome));
      continue;
    } catch (const MalformedResponse& e) {
      outcome.kind = OutcomeKind::ServiceFailure;
      outcome.detail = e.what();
      history.clear();
      outcomes.push_back(std::move(outcome));
      continue;
    }

    ParseResult parsed = parse_agent_output(outcome.raw);
    if (const ParseFailure* failure = std::get_if<ParseFailure>(&parsed)) {
      outcome.kind = OutcomeKind::ParseFailure;
      outcome.detail = failure->reason;
      history.clear();
      outcomes.push_back(std::move(outcome));
      continue;
    }

    ThoughtAction response = std::get<ThoughtAction>(std::move(parsed));
    if (is_non_gui(response)) {
      outcome.kind = OutcomeKind::NonGui;
      outcome.response = std::move(response);
      history.clear();
      outcomes.push_back(std::move(outcome));
      continue;
    }

    outcome.kind = OutcomeKind::Ok;
    outcome.response = response;
    history.push_back({std::move(observation), std::move(response)});
    while (static_cast<int>(history.size()) > window) history.pop_front();
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

std::vector<Trajectory> split_trajectory(const ProcessedTutorial& tutorial,
                                         const std::vector<StepOutcome>& outcomes) {
  if (outcomes.size() != tutorial.steps.size())
    throw std::invalid_argument("outcome count does not match step count");

  std::vector<Trajectory> out;
  std::size_t i = 0;
  while (i < outcomes.size()) {
    if (outcomes[i].kind != OutcomeKind::Ok) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < outcomes.size() && outcomes[i].kind == OutcomeKind::Ok) ++i;

    Trajectory t;
    t.source = tutorial.source;
    t.task = tutorial.task;
    t.platform = tutorial.platform;
    t.id = tutorial.source.str() + "#" + std::to_string(out.size());
    for (std::size_t j = begin; j < i; ++j) {
      t.steps.push_back({tutorial.steps[j].observation,
                         tutorial.steps[j].rough_description,
                         *outcomes[j].response});
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace guiharvest::traj
