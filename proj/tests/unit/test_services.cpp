#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "guiharvest/errors.hpp"
#include "guiharvest/services/client.hpp"
#include "guiharvest/services/json_chat.hpp"
#include "guiharvest/services/rate_limiter.hpp"
#include "guiharvest/services/transport.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "support/tmpdir.hpp"

using namespace guiharvest;
using namespace guiharvest::services;

namespace {

std::string chat_reply(const std::string& text) {
  ojson j;
  j["choices"] = ojson::array(
      {ojson{{"message", ojson{{"content", text}}}}});
  return j.dump();
}

ServiceEndpoint llm_endpoint() {
  ServiceEndpoint e;
  e.name = "llm";
  e.model = "text-std";
  return e;
}

struct Counting {
  std::shared_ptr<int> calls = std::make_shared<int>(0);
  std::shared_ptr<LambdaTransport> transport;

  // Statuses are consumed one per call; the last repeats.
  Counting(std::vector<int> statuses, std::string ok_body) {
    auto n = calls;
    transport = std::make_shared<LambdaTransport>(
        [n, statuses = std::move(statuses),
         ok_body = std::move(ok_body)](const std::string&, const std::string&) {
          int i = (*n)++;
          int status = statuses[std::min<std::size_t>(i, statuses.size() - 1)];
          return HttpResult{status, status == 200 ? ok_body : "oops"};
        });
  }
};

ChatRequest ping() {
  ChatRequest r;
  r.turns.push_back({"ping", {}});
  return r;
}

}  // namespace

TEST_CASE("chat_body renders the documented request shape") {
  auto transport = std::make_shared<LambdaTransport>(
      [](const std::string&, const std::string&) { return HttpResult{200, ""}; });
  ServiceClient client(llm_endpoint(), transport,
                       std::make_shared<ManualClock>());

  ChatRequest request;
  request.system = "sys";
  ChatTurn turn;
  turn.text = "hi";
  turn.images.push_back({{1, 2, 3}});
  request.turns.push_back(turn);

  CHECK(client.chat_body(request) ==
        "{\"model\":\"text-std\",\"messages\":["
        "{\"role\":\"system\",\"content\":\"sys\"},"
        "{\"role\":\"user\",\"content\":[{\"type\":\"text\",\"text\":\"hi\"},"
        "{\"type\":\"image_url\",\"image_url\":{\"url\":"
        "\"data:image/x-portable-anymap;base64,AQID\"}}]}],"
        "\"temperature\":0}");

  SUBCASE("no system message when the system prompt is empty") {
    request.system.clear();
    ojson j = ojson::parse(client.chat_body(request));
    CHECK(j["messages"].size() == 1);
    CHECK(j["messages"][0]["role"] == "user");
  }
  SUBCASE("image-only turn has no text part") {
    request.turns[0].text.clear();
    ojson j = ojson::parse(client.chat_body(request));
    CHECK(j["messages"][1]["content"].size() == 1);
    CHECK(j["messages"][1]["content"][0]["type"] == "image_url");
  }
}

TEST_CASE("chat returns the first choice's content") {
  std::string seen_path;
  auto transport = std::make_shared<LambdaTransport>(
      [&](const std::string& path, const std::string&) {
        seen_path = path;
        return HttpResult{200, chat_reply("pong")};
      });
  ServiceClient client(llm_endpoint(), transport,
                       std::make_shared<ManualClock>());
  CHECK(client.chat(ping()).text == "pong");
  CHECK(seen_path == "/v1/chat/completions");
}

TEST_CASE("transient failures retry with jittered exponential backoff") {
  auto clock = std::make_shared<ManualClock>();

  SUBCASE("500 then 500 then success") {
    Counting t({500, 500, 200}, chat_reply("ok"));
    ServiceClient client(llm_endpoint(), t.transport, clock, 7);
    CHECK(client.chat(ping()).text == "ok");
    CHECK(*t.calls == 3);
    // Delays are 0.5 * j0 and 1.0 * j1 with jitter in [0.5, 1.5).
    CHECK(clock->now() >= 0.75);
    CHECK(clock->now() < 2.25);
  }
  SUBCASE("status 0 and 429 are retriable") {
    Counting t({0, 429, 200}, chat_reply("ok"));
    ServiceClient client(llm_endpoint(), t.transport, clock, 7);
    CHECK(client.chat(ping()).text == "ok");
    CHECK(*t.calls == 3);
  }
  SUBCASE("same seed, same delays") {
    Counting t1({500, 500, 200}, chat_reply("ok"));
    Counting t2({500, 500, 200}, chat_reply("ok"));
    auto c1 = std::make_shared<ManualClock>();
    auto c2 = std::make_shared<ManualClock>();
    ServiceClient(llm_endpoint(), t1.transport, c1, 99).chat(ping());
    ServiceClient(llm_endpoint(), t2.transport, c2, 99).chat(ping());
    CHECK(c1->now() == c2->now());
    CHECK(c1->now() > 0);
  }
  SUBCASE("the cap bounds each delay") {
    ServiceEndpoint e = llm_endpoint();
    e.max_retries = 6;
    e.backoff_cap_s = 2.0;
    Counting t({500, 500, 500, 500, 500, 500, 200}, chat_reply("ok"));
    ServiceClient client(e, t.transport, clock, 3);
    CHECK(client.chat(ping()).text == "ok");
    // Six delays, each at most cap * 1.5.
    CHECK(clock->now() < 6 * 2.0 * 1.5);
  }
}

TEST_CASE("retry exhaustion and non-retriable statuses") {
  auto clock = std::make_shared<ManualClock>();

  SUBCASE("gives up after max_retries + 1 attempts") {
    Counting t({503}, "");
    ServiceClient client(llm_endpoint(), t.transport, clock, 1);
    CHECK_THROWS_WITH_AS(client.chat(ping()),
                         "llm: gave up after 3 attempts (HTTP 503)",
                         ServiceUnavailable);
    CHECK(*t.calls == 3);
  }
  SUBCASE("a 400 fails immediately without sleeping") {
    Counting t({400}, "");
    ServiceClient client(llm_endpoint(), t.transport, clock, 1);
    CHECK_THROWS_WITH_AS(client.chat(ping()), "llm: HTTP 400",
                         ServiceUnavailable);
    CHECK(*t.calls == 1);
    CHECK(clock->now() == 0.0);
  }
}

TEST_CASE("malformed chat responses") {
  auto reply_with = [](std::string body) {
    return std::make_shared<LambdaTransport>(
        [body = std::move(body)](const std::string&, const std::string&) {
          return HttpResult{200, body};
        });
  };
  auto clock = std::make_shared<ManualClock>();

  ServiceClient not_json(llm_endpoint(), reply_with("<html>"), clock);
  CHECK_THROWS_WITH_AS(not_json.chat(ping()), "llm: response is not JSON",
                       MalformedResponse);

  ServiceClient no_choices(llm_endpoint(), reply_with("{\"choices\":[]}"), clock);
  CHECK_THROWS_WITH_AS(no_choices.chat(ping()), "llm: no choices in response",
                       MalformedResponse);

  ServiceClient no_message(llm_endpoint(), reply_with("{\"choices\":[{}]}"),
                           clock);
  CHECK_THROWS_WITH_AS(no_message.chat(ping()), "llm: choice has no message",
                       MalformedResponse);

  ServiceClient bad_content(
      llm_endpoint(),
      reply_with("{\"choices\":[{\"message\":{\"content\":7}}]}"), clock);
  CHECK_THROWS_WITH_AS(bad_content.chat(ping()),
                       "llm: message content is not text", MalformedResponse);
}

TEST_CASE("rate limiter holds a sliding one-minute window") {
  SUBCASE("limit 0 never throttles") {
    ManualClock clock;
    RateLimiter limiter(0, clock);
    for (int i = 0; i < 100; ++i) limiter.acquire();
    CHECK(clock.now() == 0.0);
  }
  SUBCASE("the n+1th request waits for the window to slide") {
    ManualClock clock;
    RateLimiter limiter(2, clock);
    limiter.acquire();
    limiter.acquire();
    CHECK(clock.now() == 0.0);
    limiter.acquire();
    CHECK(clock.now() == doctest::Approx(60.0));
  }
  SUBCASE("stamps older than the window free their slot") {
    ManualClock clock;
    RateLimiter limiter(2, clock);
    limiter.acquire();
    clock.advance(61.0);
    limiter.acquire();
    limiter.acquire();
    CHECK(clock.now() == doctest::Approx(61.0));
  }
  SUBCASE("a throttled client sleeps on the shared clock") {
    ServiceEndpoint e = llm_endpoint();
    e.requests_per_minute = 2;
    auto clock = std::make_shared<ManualClock>();
    auto transport = std::make_shared<LambdaTransport>(
        [](const std::string&, const std::string&) {
          return HttpResult{200, chat_reply("ok")};
        });
    ServiceClient client(e, transport, clock);
    client.chat(ping());
    client.chat(ping());
    client.chat(ping());
    CHECK(clock->now() == doctest::Approx(60.0));
  }
}

TEST_CASE("transcription") {
  auto clock = std::make_shared<ManualClock>();
  ServiceEndpoint asr;
  asr.name = "asr";
  asr.model = "asr-std";

  SUBCASE("empty audio short-circuits without a request") {
    int calls = 0;
    auto transport = std::make_shared<LambdaTransport>(
        [&](const std::string&, const std::string&) {
          ++calls;
          return HttpResult{200, "{}"};
        });
    ServiceClient client(asr, transport, clock);
    CHECK(client.transcribe({}).empty());
    CHECK(calls == 0);
  }
  SUBCASE("request body carries base64 audio to the transcription path") {
    std::string seen_path, seen_body;
    auto transport = std::make_shared<LambdaTransport>(
        [&](const std::string& path, const std::string& body) {
          seen_path = path;
          seen_body = body;
          return HttpResult{200, "{\"segments\":[]}"};
        });
    ServiceClient client(asr, transport, clock);
    std::vector<std::uint8_t> audio{1, 2, 3};
    client.transcribe(audio);
    CHECK(seen_path == "/v1/audio/transcriptions");
    CHECK(seen_body == "{\"model\":\"asr-std\",\"audio_b64\":\"AQID\"}");
  }
  SUBCASE("segments decode in order") {
    auto transport = std::make_shared<LambdaTransport>(
        [](const std::string&, const std::string&) {
          return HttpResult{
              200,
              "{\"segments\":[{\"start\":0,\"end\":2.5,\"text\":\"a\"},"
              "{\"start\":2.5,\"end\":4,\"text\":\"b\"}]}"};
        });
    ServiceClient client(asr, transport, clock);
    std::vector<std::uint8_t> audio{9};
    Transcript t = client.transcribe(audio);
    REQUIRE(t.segments.size() == 2);
    CHECK(t.segments[0].text == "a");
    CHECK(t.segments[1].start_s == doctest::Approx(2.5));
  }
  SUBCASE("unsorted or overlapping segments are malformed") {
    auto transport = std::make_shared<LambdaTransport>(
        [](const std::string&, const std::string&) {
          return HttpResult{
              200,
              "{\"segments\":[{\"start\":2,\"end\":4,\"text\":\"a\"},"
              "{\"start\":1,\"end\":2,\"text\":\"b\"}]}"};
        });
    ServiceClient client(asr, transport, clock);
    std::vector<std::uint8_t> audio{9};
    CHECK_THROWS_WITH_AS(client.transcribe(audio),
                         "asr: segments overlap or are unsorted",
                         MalformedResponse);
  }
  SUBCASE("a segment that ends before it starts is malformed") {
    auto transport = std::make_shared<LambdaTransport>(
        [](const std::string&, const std::string&) {
          return HttpResult{
              200, "{\"segments\":[{\"start\":3,\"end\":1,\"text\":\"a\"}]}"};
        });
    ServiceClient client(asr, transport, clock);
    std::vector<std::uint8_t> audio{9};
    CHECK_THROWS_AS(client.transcribe(audio), MalformedResponse);
  }
}

TEST_CASE("ask_json retries once with the violation appended") {
  auto clock = std::make_shared<ManualClock>();

  SUBCASE("fenced object parses on the first try") {
    auto transport = std::make_shared<LambdaTransport>(
        [](const std::string&, const std::string&) {
          return HttpResult{200, chat_reply("```json\n{\"k\": 1}\n```")};
        });
    ServiceClient client(llm_endpoint(), transport, clock);
    CHECK(ask_json(client, "give me json")["k"] == 1);
  }
  SUBCASE("one corrective re-prompt") {
    std::vector<std::string> bodies;
    auto transport = std::make_shared<LambdaTransport>(
        [&](const std::string&, const std::string& body) {
          bodies.push_back(body);
          return HttpResult{
              200, chat_reply(bodies.size() == 1 ? "sure, here you go"
                                                 : "{\"k\": 2}")};
        });
    ServiceClient client(llm_endpoint(), transport, clock);
    CHECK(ask_json(client, "give me json")["k"] == 2);
    REQUIRE(bodies.size() == 2);
    CHECK(bodies[1].find("Your previous reply was not a valid JSON object. "
                         "Respond with the JSON object only, no prose.") !=
          std::string::npos);
  }
  SUBCASE("two bad replies raise MalformedResponse") {
    auto transport = std::make_shared<LambdaTransport>(
        [](const std::string&, const std::string&) {
          return HttpResult{200, chat_reply("[1, 2, 3]")};
        });
    ServiceClient client(llm_endpoint(), transport, clock);
    CHECK_THROWS_WITH_AS(ask_json(client, "give me json"),
                         "llm: reply is not a JSON object after one retry",
                         MalformedResponse);
  }
}

TEST_CASE("record then replay round trip") {
  TempDir tmp("replay");
  auto inner = std::make_shared<LambdaTransport>(
      [](const std::string&, const std::string& body) {
        if (body == "boom") return HttpResult{500, "server fire"};
        return HttpResult{200, "echo:" + body};
      });
  RecordTransport recorder(inner, tmp.path());

  CHECK(recorder.post("/x", "one").body == "echo:one");
  CHECK(recorder.post("/x", "two").body == "echo:two");
  CHECK(recorder.post("/x", "boom").status == 500);
  CHECK(std::filesystem::exists(
      tmp / (ReplayTransport::key_for("one") + ".json")));

  ReplayTransport replayer(tmp.path());
  CHECK(replayer.post("/x", "one").body == "echo:one");
  CHECK(replayer.post("/x", "two").status == 200);

  SUBCASE("failures replay with their recorded status") {
    HttpResult r = replayer.post("/x", "boom");
    CHECK(r.status == 500);
    CHECK(r.body == "server fire");
  }
  SUBCASE("an unrecorded request raises ReplayMiss") {
    CHECK_THROWS_AS(replayer.post("/x", "three"), ReplayMiss);
    // ReplayMiss is a service failure, so pipeline code needs no special case.
    CHECK_THROWS_AS(replayer.post("/x", "three"), ServiceUnavailable);
  }
  SUBCASE("recordings carry the request and status for inspection") {
    recorder.post("/x", "one");
    auto key_file = tmp / (ReplayTransport::key_for("one") + ".json");
    std::ifstream in(key_file);
    ojson j = ojson::parse(in);
    CHECK(j["path"] == "/x");
    CHECK(j["request"] == "one");
    CHECK(j["status"] == 200);
  }
}

TEST_CASE("http transport against a live server") {
  httplib::Server server;
  server.Post("/v1/echo", [](const httplib::Request& req,
                             httplib::Response& res) {
    ojson j;
    j["auth"] = req.get_header_value("Authorization");
    j["content_type"] = req.get_header_value("Content-Type");
    j["body"] = req.body;
    res.set_content(j.dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread runner([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpTransport transport("http://127.0.0.1:" + std::to_string(port), 5.0,
                          "sekret");
  HttpResult r = transport.post("/v1/echo", "{\"x\":1}");
  CHECK(r.status == 200);
  ojson j = ojson::parse(r.body);
  CHECK(j["auth"] == "Bearer sekret");
  CHECK(j["content_type"] == "application/json");
  CHECK(j["body"] == "{\"x\":1}");

  HttpTransport no_auth("http://127.0.0.1:" + std::to_string(port), 5.0);
  ojson j2 = ojson::parse(no_auth.post("/v1/echo", "{}").body);
  CHECK(j2["auth"] == "");

  server.stop();
  runner.join();

  // With the server gone the same transport reports status 0.
  HttpResult dead = transport.post("/v1/echo", "{}");
  CHECK(dead.status == 0);
}
