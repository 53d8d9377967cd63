#include "mock_brain.hpp"

#include <optional>
#include <sstream>
#include <vector>

#include "guiharvest/actions.hpp"
#include "guiharvest/traj/parse.hpp"
#include "guiharvest/util/base64.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/util/strings.hpp"
#include "guiharvest/vision/image_io.hpp"

namespace fixture {

namespace {

using guiharvest::ojson;
using guiharvest::services::HttpResult;

HttpResult json_ok(const ojson& j) { return {200, j.dump()}; }

HttpResult chat_reply(const std::string& text) {
  ojson j;
  j["choices"] = ojson::array({ojson{{"message", ojson{{"content", text}}}}});
  return json_ok(j);
}

bool contains(const std::string& hay, std::string_view needle) {
  return hay.find(needle) != std::string::npos;
}

std::string system_text(const ojson& req) {
  for (const ojson& msg : req.at("messages"))
    if (msg.at("role") == "system") return msg.at("content").get<std::string>();
  return {};
}

std::string all_user_text(const ojson& req) {
  std::string out;
  for (const ojson& msg : req.at("messages")) {
    if (msg.at("role") != "user") continue;
    for (const ojson& part : msg.at("content"))
      if (part.at("type") == "text") {
        out += part.at("text").get<std::string>();
        out += "\n";
      }
  }
  return out;
}

std::string last_user_text(const ojson& req) {
  std::string out;
  for (const ojson& msg : req.at("messages")) {
    if (msg.at("role") != "user") continue;
    for (const ojson& part : msg.at("content"))
      if (part.at("type") == "text") out = part.at("text").get<std::string>();
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> first_user_image(const ojson& req) {
  for (const ojson& msg : req.at("messages")) {
    if (msg.at("role") != "user") continue;
    for (const ojson& part : msg.at("content")) {
      if (part.at("type") != "image_url") continue;
      std::string url = part.at("image_url").at("url").get<std::string>();
      auto mark = url.find("base64,");
      if (mark == std::string::npos) continue;
      return guiharvest::util::base64_decode(url.substr(mark + 7));
    }
  }
  return std::nullopt;
}

std::vector<guiharvest::Point> find_points(const std::string& text) {
  std::vector<guiharvest::Point> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '(') continue;
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) break;
    std::string inner = text.substr(i + 1, close - i - 1);
    std::size_t comma = inner.find(',');
    if (comma == std::string::npos) continue;
    try {
      double x = std::stod(inner.substr(0, comma));
      double y = std::stod(inner.substr(comma + 1));
      out.push_back({x, y});
      i = close;
    } catch (const std::exception&) {
    }
  }
  return out;
}

std::optional<std::string> quoted(const std::string& text) {
  std::size_t a = text.find('"');
  if (a == std::string::npos) return std::nullopt;
  std::size_t b = text.find('"', a + 1);
  if (b == std::string::npos) return std::nullopt;
  return text.substr(a + 1, b - a - 1);
}

HttpResult agent_reply(const ojson& req) {
  using guiharvest::Action;
  using guiharvest::ActionKind;
  using guiharvest::PointPair;

  std::string desc = last_user_text(req);
  if (desc.rfind("Task: ", 0) == 0) desc = desc.substr(6);
  desc = guiharvest::util::trim(desc);
  std::string lower = guiharvest::util::to_lower(desc);

  if (contains(lower, "improvise"))
    return chat_reply(
        "The screen looks unfamiliar here and I cannot commit to a step.");

  auto starts = [&](std::string_view p) { return lower.rfind(p, 0) == 0; };
  std::vector<guiharvest::Point> pts = find_points(desc);
  std::optional<std::string> value = quoted(desc);

  Action a;
  auto pt = [&](std::size_t i) {
    if (i < pts.size()) a.position = pts[i];
  };
  auto pair = [&] {
    if (pts.size() >= 2) a.position = PointPair{pts[0], pts[1]};
  };

  if (starts("wait")) {
    a.kind = ActionKind::Wait;
  } else if (starts("ask the user")) {
    a.kind = ActionKind::CallUser;
  } else if (starts("double-click")) {
    a.kind = ActionKind::LeftClickDouble;
    pt(0);
  } else if (starts("right-click")) {
    a.kind = ActionKind::RightClickSingle;
    pt(0);
  } else if (starts("click")) {
    a.kind = ActionKind::Click;
    pt(0);
  } else if (starts("type")) {
    a.kind = ActionKind::Input;
    a.value = value;
    pt(0);
  } else if (starts("scroll")) {
    a.kind = ActionKind::Scroll;
    a.value = contains(lower, "up") ? "up" : "down";
    pt(0);
  } else if (starts("drag")) {
    a.kind = ActionKind::Drag;
    pair();
  } else if (starts("press keys ")) {
    a.kind = ActionKind::HotKey;
    std::string rest = desc.substr(std::string("press keys ").size());
    a.value = guiharvest::util::split(rest, ' ').front();
  } else if (starts("hover")) {
    a.kind = ActionKind::Hover;
    pt(0);
  } else if (starts("tap")) {
    a.kind = ActionKind::Tap;
    pt(0);
  } else if (starts("swipe")) {
    a.kind = ActionKind::Swipe;
    pair();
  } else if (starts("long press")) {
    a.kind = ActionKind::LongPress;
    a.value = value;
    pt(0);
  } else if (starts("go home")) {
    a.kind = ActionKind::PressHome;
  } else if (starts("go back")) {
    a.kind = ActionKind::PressBack;
  } else if (starts("finish")) {
    a.kind = ActionKind::Finish;
  } else {
    return chat_reply("I do not understand this step.");
  }

  guiharvest::ThoughtAction ta;
  ta.thought = "Completing this step: " + desc;
  ta.actions.push_back(std::move(a));
  if (contains(lower, "then wait")) ta.actions.push_back({ActionKind::Wait});
  return chat_reply(guiharvest::traj::serialize_thought_action(ta));
}

HttpResult extraction_reply(const std::string& text) {
  if (contains(text, "flaky-extract") &&
      !contains(text, "did not follow the schema")) {
    // First attempt violates the schema on purpose; the corrective retry
    // carries the schema reminder and gets the real answer.
    return json_ok(ojson{{"task", "incomplete"}});
  }
  std::string task;
  std::vector<std::string> steps;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = guiharvest::util::trim(line);
    if (line.rfind("GOAL: ", 0) == 0) task = line.substr(6);
    if (line.rfind("Step ", 0) == 0) {
      std::size_t colon = line.find(": ");
      if (colon != std::string::npos) steps.push_back(line.substr(colon + 2));
    }
  }
  ojson j;
  j["task"] = task;
  j["steps"] = steps;
  return json_ok(j);
}

HttpResult judge_reply(const std::string& text) {
  const char* code = nullptr;
  if (contains(text, "confusing")) code = "incoherent_actions";
  else if (contains(text, "blurry")) code = "observation_mismatch";
  else if (contains(text, "slowly")) code = "stalled";
  else if (contains(text, "partially")) code = "truncated_task";
  ojson j;
  j["verdict"] = code ? "drop" : "keep";
  j["reason_code"] = code ? code : "ok";
  return json_ok(j);
}

HttpResult screenshot_reply(const ojson& req) {
  bool screenshot = false;
  if (auto bytes = first_user_image(req)) {
    try {
      guiharvest::vision::Frame f = guiharvest::vision::decode_pnm(*bytes);
      screenshot = !f.pixels.empty() && f.pixels[0] >= 128;
    } catch (const std::exception&) {
    }
  }
  return json_ok(ojson{{"screenshot", screenshot}});
}

HttpResult transcription_reply(const ojson& req) {
  auto audio =
      guiharvest::util::base64_decode(req.at("audio_b64").get<std::string>());
  if (!audio) return {400, "bad audio payload"};
  std::string text(audio->begin(), audio->end());
  ojson segments = ojson::parse(text, nullptr, false);
  if (segments.is_discarded()) return {400, "audio is not a fixture transcript"};
  ojson j;
  j["segments"] = segments;
  return json_ok(j);
}

}  // namespace

HttpResult mock_brain(const std::string& path, const std::string& body) {
  ojson req = ojson::parse(body, nullptr, false);
  if (req.is_discarded()) return {400, "request body is not JSON"};
  try {
    if (path == "/v1/audio/transcriptions") return transcription_reply(req);
    if (path != "/v1/chat/completions") return {404, "unknown path"};

    if (contains(system_text(req), "navigate the computer/mobile screen"))
      return agent_reply(req);

    std::string text = all_user_text(req);
    if (contains(text, "usable GUI tutorial")) {
      bool keep = !contains(text, "casserole");
      return json_ok(ojson{{"gui_tutorial", keep},
                           {"reason", keep ? "step-by-step GUI instructions"
                                           : "cooking content"}});
    }
    if (contains(text, "Classify which platform")) {
      const char* platform = contains(text, "on your phone") ? "mobile"
                             : contains(text, "solder")      ? "other"
                                                             : "desktop";
      return json_ok(ojson{{"platform", platform}});
    }
    if (contains(text, "Extract the task and the ordered operation steps"))
      return extraction_reply(text);
    if (contains(text, "search keyword list"))
      return json_ok(ojson{{"keywords",
                            {"writer change font size tutorial",
                             "photos crop an image guide"}}});
    if (contains(text, "screenshot of a software interface"))
      return screenshot_reply(req);
    if (contains(text, "training-data quality")) return judge_reply(text);
    return {400, "unrecognized prompt"};
  } catch (const std::exception& e) {
    return {400, std::string("mock brain error: ") + e.what()};
  }
}

}  // namespace fixture
