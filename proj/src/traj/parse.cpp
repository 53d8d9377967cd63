#include "guiharvest/traj/parse.hpp"

#include <charconv>

#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::traj {

namespace {

std::string json_escape(const std::string& s) {
  return ojson(s).dump();
}

std::string point_json(const Point& p) {
  return "[" + util::format_coord(p.x) + ", " + util::format_coord(p.y) + "]";
}

// Locates the action payload: the text after the first line that starts with
// "Action:" (after optional leading whitespace). Everything before that line
// belongs to the thought.
bool split_sections(const std::string& raw, std::string& thought,
                    std::string& payload) {
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    std::string_view line(raw.data() + pos,
                          (eol == std::string::npos ? raw.size() : eol) - pos);
    std::string_view stripped = util::trim(line);
    if (stripped.starts_with("Action:")) {
      std::string_view before(raw.data(), pos);
      thought = std::string(util::trim(before));
      std::size_t off = stripped.data() - raw.data();
      payload = raw.substr(off + 7);
      return true;
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return false;
}

// Strips one leading ``` or ```json fence and its closing fence, if present.
std::string strip_fences(std::string_view s) {
  std::string_view t = util::trim(s);
  if (t.starts_with("```")) {
    t.remove_prefix(3);
    if (t.starts_with("json")) t.remove_prefix(4);
    auto close = t.rfind("```");
    if (close != std::string_view::npos) t = t.substr(0, close);
  }
  return std::string(util::trim(t));
}

bool json_number(const ojson& v, double& out) {
  if (v.is_number()) {
    out = v.get<double>();
    return true;
  }
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !s.empty();
  }
  return false;
}

bool decode_point(const ojson& v, Point& out) {
  if (!v.is_array() || v.size() != 2) return false;
  double x, y;
  if (!json_number(v[0], x) || !json_number(v[1], y)) return false;
  out = {util::quantize_coord(x), util::quantize_coord(y)};
  return true;
}

bool is_none(const ojson& v) {
  return v.is_null() || (v.is_string() && v.get_ref<const std::string&>() == "None");
}

// Decodes one action object. On failure fills `reason` and returns nullopt.
std::optional<Action> decode_action(const ojson& obj, std::string& reason) {
  if (!obj.is_object()) {
    reason = "action must be a JSON object";
    return std::nullopt;
  }
  auto kind_it = obj.find("action");
  if (kind_it == obj.end() || !kind_it->is_string()) {
    reason = "missing \"action\" key";
    return std::nullopt;
  }
  auto kind = kind_from_name(kind_it->get<std::string>());
  if (!kind) {
    reason = "unknown action \"" + kind_it->get<std::string>() + "\"";
    return std::nullopt;
  }

  Action action;
  action.kind = *kind;

  if (auto it = obj.find("value"); it != obj.end() && !is_none(*it)) {
    if (!it->is_string()) {
      reason = "\"value\" must be a string or None";
      return std::nullopt;
    }
    action.value = it->get<std::string>();
  }

  if (auto it = obj.find("position"); it != obj.end() && !is_none(*it)) {
    Point p;
    PointPair pp;
    if (decode_point(*it, p)) {
      action.position = p;
    } else if (it->is_array() && it->size() == 2 && decode_point((*it)[0], pp.from) &&
               decode_point((*it)[1], pp.to)) {
      action.position = pp;
    } else {
      reason = "\"position\" must be [x, y] or [[x1, y1], [x2, y2]]";
      return std::nullopt;
    }
  }

  if (auto err = validate_action(action)) {
    reason = err->field + ": " + err->reason;
    return std::nullopt;
  }
  return action;
}

}  // namespace

std::string serialize_action(const Action& action) {
  std::string out = "{\"action\": ";
  out += json_escape(std::string(kind_name(action.kind)));
  out += ", \"value\": ";
  out += action.value ? json_escape(*action.value) : "\"None\"";
  out += ", \"position\": ";
  if (const Point* p = std::get_if<Point>(&action.position)) {
    out += point_json(*p);
  } else if (const PointPair* pp = std::get_if<PointPair>(&action.position)) {
    out += "[" + point_json(pp->from) + ", " + point_json(pp->to) + "]";
  } else {
    out += "\"None\"";
  }
  out += "}";
  return out;
}

std::string serialize_thought_action(const ThoughtAction& ta) {
  std::string out = "Thought: " + ta.thought + "\nAction: ";
  if (ta.actions.size() == 1) {
    out += serialize_action(ta.actions[0]);
  } else {
    out += "[";
    for (std::size_t i = 0; i < ta.actions.size(); ++i) {
      if (i) out += ", ";
      out += serialize_action(ta.actions[i]);
    }
    out += "]";
  }
  return out;
}

ParseResult parse_agent_output(const std::string& raw) {
  std::string thought, payload;
  if (!split_sections(raw, thought, payload))
    return ParseFailure{raw, "no Action line"};
  if (thought.starts_with("Thought:"))
    thought = std::string(util::trim(std::string_view(thought).substr(8)));

  std::string body = strip_fences(payload);
  if (body.empty()) return ParseFailure{raw, "empty action payload"};

  ojson parsed = ojson::parse(body, nullptr, false);
  if (parsed.is_discarded())
    return ParseFailure{raw, "action payload is not valid JSON"};

  std::vector<ojson> items;
  if (parsed.is_array()) {
    if (parsed.empty()) return ParseFailure{raw, "empty action array"};
    items.assign(parsed.begin(), parsed.end());
  } else {
    items.push_back(parsed);
  }

  ThoughtAction ta;
  ta.thought = thought;
  for (const ojson& item : items) {
    std::string reason;
    auto action = decode_action(item, reason);
    if (!action) return ParseFailure{raw, reason};
    ta.actions.push_back(std::move(*action));
  }
  return ta;
}

}  // namespace guiharvest::traj
