#pragma once

#include <string>

#include "guiharvest/counters.hpp"
#include "guiharvest/types.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::dataset {

// JSON codecs for every persisted record type. Encoding is canonical: fixed
// key order, compact separators via canonical_dump(), coordinates quantized
// to 4 decimals. decode(encode(x)) == x, and re-encoding a decoded canonical
// line reproduces it byte for byte.

// Serializes with ", " and ": " separators, doubles as %.4f, integers
// unchanged. All doubles in persisted records sit on the 4-decimal grid.
std::string canonical_dump(const ojson& value);

ojson encode_action(const Action& a);
Action decode_action(const ojson& j, std::uint64_t line = 0);

ojson encode_thought_action(const ThoughtAction& ta);
ThoughtAction decode_thought_action(const ojson& j, std::uint64_t line = 0);

ojson encode_source_id(const SourceId& id);
SourceId decode_source_id(const ojson& j, std::uint64_t line = 0);

ojson encode_transcript(const Transcript& t);
Transcript decode_transcript(const ojson& j, std::uint64_t line = 0);

ojson encode_raw_tutorial(const RawTutorial& t);
RawTutorial decode_raw_tutorial(const ojson& j, std::uint64_t line = 0);

ojson encode_processed_tutorial(const ProcessedTutorial& t);
ProcessedTutorial decode_processed_tutorial(const ojson& j,
                                            std::uint64_t line = 0);

ojson encode_trajectory(const Trajectory& t);
Trajectory decode_trajectory(const ojson& j, std::uint64_t line = 0);

ojson encode_counters(const PipelineCounters& c);
PipelineCounters decode_counters(const ojson& j, std::uint64_t line = 0);

// One canonical JSONL line (no trailing newline).
std::string encode_trajectory_line(const Trajectory& t);

// Parses and validates one line. Coordinates outside [0, 1] or schema
// violations throw SchemaViolation carrying `line`.
Trajectory decode_trajectory_line(const std::string& text,
                                  std::uint64_t line = 0);

}  // namespace guiharvest::dataset
