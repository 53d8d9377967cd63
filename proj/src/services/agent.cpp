#include "guiharvest/services/agent.hpp"

#include <stdexcept>

#include "guiharvest/prompts.hpp"
#include "guiharvest/traj/parse.hpp"

namespace guiharvest::services {

ChatRequest build_agent_request(std::span<const std::uint8_t> observation,
                                const std::string& query,
                                std::span<const AgentHistoryStep> history,
                                Platform platform, int max_history) {
  if (static_cast<int>(history.size()) > max_history)
    throw std::invalid_argument("history longer than the configured window");
  ChatRequest request;
  request.system = prompts::agent_system(platform);
  for (const AgentHistoryStep& step : history) {
    ChatTurn turn;
    turn.text = traj::serialize_thought_action(step.response);
    turn.images.push_back(
        {std::vector<std::uint8_t>(step.observation.begin(), step.observation.end())});
    request.turns.push_back(std::move(turn));
  }
  ChatTurn current;
  current.text = "Task: " + query;
  current.images.push_back(
      {std::vector<std::uint8_t>(observation.begin(), observation.end())});
  request.turns.push_back(std::move(current));
  return request;
}

std::string agent_step(ServiceClient& client,
                       std::span<const std::uint8_t> observation,
                       const std::string& query,
                       std::span<const AgentHistoryStep> history,
                       Platform platform, int max_history) {
  return client
      .chat(build_agent_request(observation, query, history, platform, max_history))
      .text;
}

}  // namespace guiharvest::services
