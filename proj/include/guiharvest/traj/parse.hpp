#pragma once

#include <string>
#include <variant>

#include "guiharvest/actions.hpp"

namespace guiharvest::traj {

struct ParseFailure {
  std::string raw;     // the offending model output, verbatim
  std::string reason;
  bool operator==(const ParseFailure&) const = default;
};

using ParseResult = std::variant<ThoughtAction, ParseFailure>;

// Canonical single-action JSON:
//   {"action": "CLICK", "value": "None", "position": [0.3200, 0.1100]}
// Absent value or position is the string "None". Coordinates render with 4
// decimals. Point pairs render as [[x1, y1], [x2, y2]]. The literal string
// "None" is reserved: a value equal to it cannot survive a round trip.
std::string serialize_action(const Action& action);

// Wire form of a full turn:
//   Thought: <reasoning>
//   Action: <action JSON>
// Multiple actions render as a JSON array on the Action line. The Thought
// prefix is always emitted, even for an empty thought.
std::string serialize_thought_action(const ThoughtAction& ta);

// Inverse of serialize_thought_action, tolerant of real model output:
// optional code fences around the action JSON, `null` for "None",
// case-insensitive action names, numeric strings for coordinates, and a
// missing Thought line (parsed as an empty thought). Coordinates are
// quantized to 4 decimals before validation; any invalid action yields
// ParseFailure. Round-trips every serialize_thought_action() output whose
// thought does not itself contain a line starting with "Action:".
ParseResult parse_agent_output(const std::string& raw);

}  // namespace guiharvest::traj
