#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "guiharvest/services/clock.hpp"
#include "guiharvest/services/rate_limiter.hpp"
#include "guiharvest/services/transport.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::services {

struct ImageAttachment {
  std::vector<std::uint8_t> bytes;
  std::string mime = "image/x-portable-anymap";
};

struct ChatTurn {
  std::string text;
  std::vector<ImageAttachment> images;
};

// One chat-completions call: a system prompt plus ordered user turns.
struct ChatRequest {
  std::string system;
  std::vector<ChatTurn> turns;
};

struct ChatResponse {
  std::string text;
};

struct ServiceEndpoint {
  std::string name;   // for error messages: "llm", "agent", "asr", "judge"
  std::string model;
  int max_retries = 2;           // attempts after the first
  double backoff_base_s = 0.5;
  double backoff_factor = 2.0;
  double backoff_cap_s = 30.0;
  int requests_per_minute = 0;   // <= 0: unthrottled
};

// Chat-completions style client over an injected transport.
//
// Retry policy: status 0 (transport failure), 429, and 5xx retry with
// jittered exponential backoff, delay = min(cap, base * factor^attempt)
// scaled by a seeded uniform factor in [0.5, 1.5). Other non-2xx statuses
// and exhausted retries raise ServiceUnavailable; a 2xx payload that cannot
// be decoded raises MalformedResponse. Replay misses fail immediately.
class ServiceClient {
 public:
  ServiceClient(ServiceEndpoint endpoint, std::shared_ptr<Transport> transport,
                std::shared_ptr<Clock> clock, std::uint64_t jitter_seed = 0);

  // POST /v1/chat/completions
  ChatResponse chat(const ChatRequest& request);

  // POST /v1/audio/transcriptions. Empty audio short-circuits to an empty
  // transcript without touching the service. Segments must come back sorted
  // and non-overlapping or the response is malformed.
  Transcript transcribe(std::span<const std::uint8_t> audio);

  const ServiceEndpoint& endpoint() const { return endpoint_; }

  // Exposed for request-shape tests: the exact body chat() posts.
  std::string chat_body(const ChatRequest& request) const;

 private:
  std::string post_with_retries(const std::string& path,
                                const std::string& body);
  double next_jitter();

  ServiceEndpoint endpoint_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<Clock> clock_;
  RateLimiter limiter_;
  std::mt19937_64 rng_;
  std::mutex rng_mutex_;
};

}  // namespace guiharvest::services
