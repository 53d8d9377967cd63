#include "guiharvest/prompts.hpp"

#include <stdexcept>

#include "guiharvest/prompts_data.hpp"

namespace guiharvest::prompts {

std::string_view agent_system_template() { return data::agent_system; }
std::string_view action_space_desktop() { return data::action_space_desktop; }
std::string_view action_space_mobile() { return data::action_space_mobile; }
std::string_view keyword_expansion() { return data::keyword_expansion; }
std::string_view platform_classify() { return data::platform_classify; }
std::string_view task_extraction() { return data::task_extraction; }
std::string_view content_filter() { return data::content_filter; }
std::string_view screenshot_classify() { return data::screenshot_classify; }
std::string_view judge() { return data::judge; }

std::string render(std::string_view tmpl,
                   std::initializer_list<std::pair<std::string_view, std::string_view>>
                       substitutions) {
  std::string out(tmpl);
  for (const auto& [key, value] : substitutions) {
    std::string needle = "{" + std::string(key) + "}";
    std::size_t pos = 0;
    while ((pos = out.find(needle, pos)) != std::string::npos) {
      out.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return out;
}

std::string agent_system(Platform platform) {
  std::string_view space;
  switch (platform) {
    case Platform::Desktop: space = action_space_desktop(); break;
    case Platform::Mobile: space = action_space_mobile(); break;
    case Platform::Other:
      throw std::invalid_argument("no action space for platform \"other\"");
  }
  // The action space file's trailing newline would double up with the
  // template's own line break.
  if (space.ends_with('\n')) space.remove_suffix(1);
  return render(agent_system_template(), {{"action_space", space}});
}

}  // namespace guiharvest::prompts
