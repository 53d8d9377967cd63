#pragma once

#include <vector>

#include "guiharvest/services/client.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::services {

// Sends a prompt that demands a JSON object reply and parses it strictly,
// tolerating only a markdown code fence around the payload. On a reply that
// is not a JSON object, re-prompts once with the violation appended; a second
// bad reply raises MalformedResponse.
ojson ask_json(ServiceClient& client, const std::string& prompt,
               std::vector<ImageAttachment> images = {});

}  // namespace guiharvest::services
