#include "guiharvest/services/client.hpp"

#include "guiharvest/errors.hpp"
#include "guiharvest/util/base64.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::services {

ServiceClient::ServiceClient(ServiceEndpoint endpoint,
                             std::shared_ptr<Transport> transport,
                             std::shared_ptr<Clock> clock,
                             std::uint64_t jitter_seed)
    : endpoint_(std::move(endpoint)),
      transport_(std::move(transport)),
      clock_(std::move(clock)),
      limiter_(endpoint_.requests_per_minute, *clock_),
      rng_(jitter_seed) {}

double ServiceClient::next_jitter() {
  std::lock_guard lock(rng_mutex_);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  return dist(rng_);
}

std::string ServiceClient::post_with_retries(const std::string& path,
                                             const std::string& body) {
  int attempt = 0;
  while (true) {
    limiter_.acquire();
    HttpResult result = transport_->post(path, body);
    if (result.status >= 200 && result.status < 300) return result.body;

    bool retriable =
        result.status == 0 || result.status == 429 || result.status >= 500;
    if (!retriable)
      throw ServiceUnavailable(endpoint_.name + ": HTTP " +
                               std::to_string(result.status));
    if (attempt >= endpoint_.max_retries)
      throw ServiceUnavailable(endpoint_.name + ": gave up after " +
                               std::to_string(attempt + 1) + " attempts (HTTP " +
                               std::to_string(result.status) + ")");
    double delay = endpoint_.backoff_base_s;
    for (int i = 0; i < attempt; ++i) delay *= endpoint_.backoff_factor;
    delay = std::min(delay, endpoint_.backoff_cap_s) * next_jitter();
    clock_->sleep_for(delay);
    ++attempt;
  }
}

std::string ServiceClient::chat_body(const ChatRequest& request) const {
  ojson messages = ojson::array();
  if (!request.system.empty()) {
    ojson msg;
    msg["role"] = "system";
    msg["content"] = request.system;
    messages.push_back(std::move(msg));
  }
  for (const ChatTurn& turn : request.turns) {
    ojson content = ojson::array();
    if (!turn.text.empty()) {
      ojson part;
      part["type"] = "text";
      part["text"] = turn.text;
      content.push_back(std::move(part));
    }
    for (const ImageAttachment& image : turn.images) {
      ojson part;
      part["type"] = "image_url";
      ojson url;
      url["url"] = "data:" + image.mime + ";base64," +
                   util::base64_encode(image.bytes);
      part["image_url"] = std::move(url);
      content.push_back(std::move(part));
    }
    ojson msg;
    msg["role"] = "user";
    msg["content"] = std::move(content);
    messages.push_back(std::move(msg));
  }
  ojson body;
  body["model"] = endpoint_.model;
  body["messages"] = std::move(messages);
  body["temperature"] = 0;
  return body.dump();
}

ChatResponse ServiceClient::chat(const ChatRequest& request) {
  std::string response =
      post_with_retries("/v1/chat/completions", chat_body(request));
  ojson j = ojson::parse(response, nullptr, false);
  if (j.is_discarded())
    throw MalformedResponse(endpoint_.name + ": response is not JSON");
  auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty())
    throw MalformedResponse(endpoint_.name + ": no choices in response");
  const ojson& first = (*choices)[0];
  auto message = first.find("message");
  if (message == first.end() || !message->is_object())
    throw MalformedResponse(endpoint_.name + ": choice has no message");
  auto content = message->find("content");
  if (content == message->end() || !content->is_string())
    throw MalformedResponse(endpoint_.name + ": message content is not text");
  return {content->get<std::string>()};
}

Transcript ServiceClient::transcribe(std::span<const std::uint8_t> audio) {
  if (audio.empty()) return {};
  ojson body;
  body["model"] = endpoint_.model;
  body["audio_b64"] = util::base64_encode(audio);
  std::string response =
      post_with_retries("/v1/audio/transcriptions", body.dump());
  ojson j = ojson::parse(response, nullptr, false);
  if (j.is_discarded())
    throw MalformedResponse(endpoint_.name + ": response is not JSON");
  auto segments = j.find("segments");
  if (segments == j.end() || !segments->is_array())
    throw MalformedResponse(endpoint_.name + ": response has no segments");
  Transcript out;
  for (const ojson& seg : *segments) {
    if (!seg.is_object() || !seg.contains("start") || !seg.contains("end") ||
        !seg.contains("text") || !seg["start"].is_number() ||
        !seg["end"].is_number() || !seg["text"].is_string())
      throw MalformedResponse(endpoint_.name + ": bad transcript segment");
    TranscriptSegment s;
    s.start_s = seg["start"].get<double>();
    s.end_s = seg["end"].get<double>();
    s.text = seg["text"].get<std::string>();
    if (s.end_s < s.start_s)
      throw MalformedResponse(endpoint_.name + ": segment ends before it starts");
    if (!out.segments.empty() && s.start_s < out.segments.back().end_s)
      throw MalformedResponse(endpoint_.name +
                              ": segments overlap or are unsorted");
    out.segments.push_back(std::move(s));
  }
  return out;
}

}  // namespace guiharvest::services
