#include "guiharvest/services/json_chat.hpp"

#include "guiharvest/errors.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::services {

namespace {

std::optional<ojson> try_parse_object(const std::string& text) {
  std::string_view body = util::trim(text);
  if (body.starts_with("```")) {
    body.remove_prefix(3);
    if (body.starts_with("json")) body.remove_prefix(4);
    auto close = body.rfind("```");
    if (close != std::string_view::npos) body = body.substr(0, close);
    body = util::trim(body);
  }
  ojson j = ojson::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

}  // namespace

ojson ask_json(ServiceClient& client, const std::string& prompt,
               std::vector<ImageAttachment> images) {
  ChatRequest request;
  request.turns.push_back({prompt, images});
  ChatResponse response = client.chat(request);
  if (auto j = try_parse_object(response.text)) return *j;

  ChatRequest retry;
  retry.turns.push_back(
      {prompt + "\n\nYour previous reply was not a valid JSON object. "
                "Respond with the JSON object only, no prose.",
       std::move(images)});
  response = client.chat(retry);
  if (auto j = try_parse_object(response.text)) return *j;
  throw MalformedResponse(client.endpoint().name +
                          ": reply is not a JSON object after one retry");
}

}  // namespace guiharvest::services
