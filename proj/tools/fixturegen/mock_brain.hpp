#pragma once

#include <string>

#include "guiharvest/services/transport.hpp"

namespace fixture {

// Deterministic stand-in for every model service the pipeline calls. The
// corpus plants markers (GOAL/Step lines, trigger words, pixel values) and
// this function answers from them, so the same corpus always produces the
// same exchanges. Dispatch is by request path, system prompt, and prompt
// text.
guiharvest::services::HttpResult mock_brain(const std::string& path,
                                            const std::string& body);

}  // namespace fixture
