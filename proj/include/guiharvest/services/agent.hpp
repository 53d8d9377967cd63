#pragma once

#include <span>

#include "guiharvest/actions.hpp"
#include "guiharvest/services/client.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::services {

// One already-completed step carried as context into the next agent call.
struct AgentHistoryStep {
  std::vector<std::uint8_t> observation;  // encoded image bytes
  ThoughtAction response;
};

// Builds the agent request: the platform system prompt, one user turn per
// history step (that step's serialized response plus its observation image),
// and a final turn "Task: <query>" with the current observation. History
// length must not exceed max_history (throws std::invalid_argument), keeping
// the image count at max_history + 1.
ChatRequest build_agent_request(std::span<const std::uint8_t> observation,
                                const std::string& query,
                                std::span<const AgentHistoryStep> history,
                                Platform platform, int max_history);

// Sends the request and returns the raw model text for parsing.
std::string agent_step(ServiceClient& client,
                       std::span<const std::uint8_t> observation,
                       const std::string& query,
                       std::span<const AgentHistoryStep> history,
                       Platform platform, int max_history);

}  // namespace guiharvest::services
