#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "guiharvest/types.hpp"

namespace guiharvest::prompts {

// Templates compiled in from prompts/*.txt. Placeholders use {name} syntax.
std::string_view agent_system_template();   // {action_space}
std::string_view action_space_desktop();
std::string_view action_space_mobile();
std::string_view keyword_expansion();       // {seeds}, {target}
std::string_view platform_classify();       // {text}
std::string_view task_extraction();         // {text}, {max_steps}
std::string_view content_filter();          // {title}, {text}
std::string_view screenshot_classify();     // no placeholders, image attached
std::string_view judge();                   // {task}, {steps}

// Replaces each {key} with its value. Unknown placeholders stay untouched.
std::string render(std::string_view tmpl,
                   std::initializer_list<std::pair<std::string_view, std::string_view>>
                       substitutions);

// System prompt with the platform's action space spliced in. Platform::Other
// is not a valid agent platform and throws.
std::string agent_system(Platform platform);

}  // namespace guiharvest::prompts
