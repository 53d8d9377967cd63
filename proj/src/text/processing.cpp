#include "guiharvest/text/processing.hpp"

#include <stdexcept>

#include "guiharvest/errors.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/services/json_chat.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::text {

AssembledText assemble_text(const RawTutorial& tutorial,
                            services::ServiceClient* asr,
                            const BlobLoader& load) {
  AssembledText out;
  std::string title(util::trim(tutorial.text.title));
  std::string body(util::trim(tutorial.text.body));
  out.text = title;
  if (!body.empty()) {
    if (!out.text.empty()) out.text += "\n\n";
    out.text += body;
  }

  if (tutorial.text.transcript) {
    out.transcript = tutorial.text.transcript;
  } else if (tutorial.modality == Modality::Video && tutorial.audio && asr) {
    out.transcript = asr->transcribe(load(*tutorial.audio));
  }

  if (out.transcript && !out.transcript->empty()) {
    out.text += out.text.empty() ? "Transcript:" : "\n\nTranscript:";
    for (const TranscriptSegment& seg : out.transcript->segments) {
      std::string line(util::trim(seg.text));
      if (!line.empty()) out.text += "\n" + line;
    }
  }
  return out;
}

Platform classify_platform(const std::string& text,
                           services::ServiceClient& llm) {
  if (util::trim(text).empty())
    throw std::invalid_argument("cannot classify empty text");
  std::string prompt = prompts::render(prompts::platform_classify(),
                                       {{"text", text}});
  ojson reply = services::ask_json(llm, prompt);
  auto it = reply.find("platform");
  if (it == reply.end() || !it->is_string())
    throw MalformedResponse("platform reply lacks a \"platform\" string");
  auto platform = platform_from_name(util::to_lower(it->get<std::string>()));
  if (!platform)
    throw MalformedResponse("unknown platform label \"" +
                            it->get<std::string>() + "\"");
  return *platform;
}

namespace {

std::optional<TaskExtraction> decode_extraction(const ojson& reply,
                                                int max_steps) {
  auto task_it = reply.find("task");
  if (task_it == reply.end() || !task_it->is_string()) return std::nullopt;
  TaskExtraction out;
  out.task = std::string(util::trim(task_it->get<std::string>()));
  if (out.task.empty()) return std::nullopt;

  auto steps_it = reply.find("steps");
  if (steps_it == reply.end() || !steps_it->is_array()) return std::nullopt;
  if (steps_it->empty() || steps_it->size() > static_cast<std::size_t>(max_steps))
    return std::nullopt;
  for (const ojson& step : *steps_it) {
    if (!step.is_string()) return std::nullopt;
    std::string s(util::trim(step.get<std::string>()));
    if (s.empty()) return std::nullopt;
    out.steps.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TaskExtraction extract_task_and_steps(const std::string& text,
                                      services::ServiceClient& llm,
                                      int max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
  std::string prompt =
      prompts::render(prompts::task_extraction(),
                      {{"text", text}, {"max_steps", std::to_string(max_steps)}});
  ojson reply = services::ask_json(llm, prompt);
  if (auto extraction = decode_extraction(reply, max_steps)) return *extraction;

  // One corrective pass for structurally wrong replies.
  std::string retry =
      prompt +
      "\n\nYour previous reply did not follow the schema. \"task\" must be a "
      "non-empty string and \"steps\" a non-empty array of at most " +
      std::to_string(max_steps) + " non-empty strings.";
  reply = services::ask_json(llm, retry);
  if (auto extraction = decode_extraction(reply, max_steps)) return *extraction;
  throw MalformedResponse("task extraction reply violates the schema");
}

ContentVerdict content_filter(const std::string& title, const std::string& text,
                              services::ServiceClient& llm) {
  std::string prompt = prompts::render(prompts::content_filter(),
                                       {{"title", title}, {"text", text}});
  ojson reply = services::ask_json(llm, prompt);
  auto it = reply.find("gui_tutorial");
  if (it == reply.end() || !it->is_boolean())
    throw MalformedResponse("content filter reply lacks a boolean verdict");
  ContentVerdict verdict;
  verdict.keep = it->get<bool>();
  if (auto reason = reply.find("reason");
      reason != reply.end() && reason->is_string())
    verdict.reason = reason->get<std::string>();
  return verdict;
}

}  // namespace guiharvest::text
