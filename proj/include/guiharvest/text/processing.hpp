#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guiharvest/services/client.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::text {

struct AssembledText {
  std::string text;                      // what the language model reads
  std::optional<Transcript> transcript;  // for segment-driven keyframing
};

// Joins title, body, and transcript text into one document. Video audio is
// transcribed through `asr` when the crawl did not bring captions; pass a
// null asr to skip transcription (the transcript stays absent and keyframing
// falls back to whole-video mode). `load` resolves the tutorial's audio ref.
AssembledText assemble_text(const RawTutorial& tutorial,
                            services::ServiceClient* asr,
                            const BlobLoader& load);

// Throws std::invalid_argument on empty text, MalformedResponse when the
// model cannot produce a usable label.
Platform classify_platform(const std::string& text,
                           services::ServiceClient& llm);

struct TaskExtraction {
  std::string task;
  std::vector<std::string> steps;  // rough step descriptions, in order
};

// Schema violations in the reply (missing task, empty steps, more than
// max_steps entries) trigger one corrective re-prompt, then MalformedResponse.
TaskExtraction extract_task_and_steps(const std::string& text,
                                      services::ServiceClient& llm,
                                      int max_steps);

struct ContentVerdict {
  bool keep = false;
  std::string reason;
};

// Keeps only genuine step-by-step GUI tutorials.
ContentVerdict content_filter(const std::string& title, const std::string& text,
                              services::ServiceClient& llm);

}  // namespace guiharvest::text
