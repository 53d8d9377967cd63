#include "guiharvest/crawl/keywords.hpp"

#include <set>

#include "guiharvest/errors.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/services/json_chat.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::crawl {

KeywordExpansion expand_keywords(std::span<const TaskSeed> seeds,
                                 services::ServiceClient* llm,
                                 int target_count) {
  KeywordExpansion out;
  std::set<std::string> seen;  // casefolded
  auto add = [&](std::string_view raw) {
    std::string keyword = util::squeeze_spaces(raw);
    if (keyword.empty()) return false;
    if (!seen.insert(util::to_lower(keyword)).second) return false;
    out.keywords.push_back(std::move(keyword));
    return true;
  };

  std::string seed_lines;
  for (const TaskSeed& seed : seeds) {
    std::string keyword = util::squeeze_spaces(seed.app_or_web + " " + seed.task);
    if (add(keyword)) seed_lines += keyword + "\n";
  }

  int base = static_cast<int>(out.keywords.size());
  if (!llm || target_count <= base) return out;

  std::string prompt = prompts::render(
      prompts::keyword_expansion(),
      {{"seeds", seed_lines}, {"target", std::to_string(target_count - base)}});
  try {
    ojson reply = services::ask_json(*llm, prompt);
    auto it = reply.find("keywords");
    if (it == reply.end() || !it->is_array())
      throw MalformedResponse("keyword reply lacks a \"keywords\" array");
    for (const ojson& kw : *it) {
      if (static_cast<int>(out.keywords.size()) >= target_count) break;
      if (kw.is_string()) add(kw.get<std::string>());
    }
  } catch (const ServiceUnavailable&) {
    out.llm_ok = false;
  } catch (const MalformedResponse&) {
    out.llm_ok = false;
  }
  return out;
}

}  // namespace guiharvest::crawl
