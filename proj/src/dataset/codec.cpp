#include "guiharvest/dataset/codec.hpp"

#include "guiharvest/errors.hpp"

namespace guiharvest::dataset {

namespace {

void dump_value(const ojson& v, std::string& out) {
  switch (v.type()) {
    case ojson::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ", ";
        first = false;
        out += ojson(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case ojson::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        dump_value(v[i], out);
      }
      out += ']';
      break;
    }
    case ojson::value_t::number_float:
      out += util::format_coord(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

[[noreturn]] void bad(const std::string& msg, std::uint64_t line) {
  throw SchemaViolation(msg, line);
}

double checked_coord(const ojson& v, std::uint64_t line) {
  if (!v.is_number()) bad("coordinate must be a number", line);
  double c = util::quantize_coord(v.get<double>());
  if (c < 0.0 || c > 1.0) bad("coordinate outside [0, 1]", line);
  return c;
}

Point decode_point(const ojson& v, std::uint64_t line) {
  if (!v.is_array() || v.size() != 2) bad("point must be [x, y]", line);
  return {checked_coord(v[0], line), checked_coord(v[1], line)};
}

}  // namespace

std::string canonical_dump(const ojson& value) {
  std::string out;
  dump_value(value, out);
  return out;
}

ojson encode_action(const Action& a) {
  ojson j;
  j["action"] = std::string(kind_name(a.kind));
  j["value"] = a.value ? ojson(*a.value) : ojson(nullptr);
  if (const Point* p = std::get_if<Point>(&a.position)) {
    j["position"] = ojson::array({p->x, p->y});
  } else if (const PointPair* pp = std::get_if<PointPair>(&a.position)) {
    j["position"] = ojson::array({ojson::array({pp->from.x, pp->from.y}),
                                  ojson::array({pp->to.x, pp->to.y})});
  } else {
    j["position"] = nullptr;
  }
  return j;
}

Action decode_action(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("action must be an object", line);
  Action a;
  auto kind = kind_from_name(util::require_string(j, "action", line));
  if (!kind) bad("unknown action kind", line);
  a.kind = *kind;

  const ojson& value = util::require_field(j, "value", line);
  if (!value.is_null()) {
    if (!value.is_string()) bad("\"value\" must be a string or null", line);
    a.value = value.get<std::string>();
  }

  const ojson& pos = util::require_field(j, "position", line);
  if (!pos.is_null()) {
    if (!pos.is_array() || pos.empty()) bad("bad \"position\"", line);
    if (pos[0].is_array()) {
      if (pos.size() != 2) bad("point pair must have two points", line);
      a.position = PointPair{decode_point(pos[0], line), decode_point(pos[1], line)};
    } else {
      a.position = decode_point(pos, line);
    }
  }

  if (auto err = validate_action(a))
    bad("invalid action: " + err->field + ": " + err->reason, line);
  return a;
}

ojson encode_thought_action(const ThoughtAction& ta) {
  ojson j;
  j["thought"] = ta.thought;
  ojson actions = ojson::array();
  for (const Action& a : ta.actions) actions.push_back(encode_action(a));
  j["actions"] = std::move(actions);
  return j;
}

ThoughtAction decode_thought_action(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("thought/action must be an object", line);
  ThoughtAction ta;
  ta.thought = util::require_string(j, "thought", line);
  const ojson& actions = util::require_field(j, "actions", line);
  if (!actions.is_array() || actions.empty())
    bad("\"actions\" must be a non-empty array", line);
  for (const ojson& a : actions) ta.actions.push_back(decode_action(a, line));
  return ta;
}

ojson encode_source_id(const SourceId& id) {
  ojson j;
  j["kind"] = std::string(source_name(id.source));
  j["id"] = id.native_id;
  return j;
}

SourceId decode_source_id(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("source must be an object", line);
  SourceId id;
  try {
    id.source = source_from_name(util::require_string(j, "kind", line));
  } catch (const UnrecognizedSource& e) {
    bad(e.what(), line);
  }
  id.native_id = util::require_string(j, "id", line);
  if (id.native_id.empty()) bad("empty source id", line);
  return id;
}

ojson encode_transcript(const Transcript& t) {
  ojson segments = ojson::array();
  for (const TranscriptSegment& s : t.segments) {
    ojson j;
    j["start"] = s.start_s;
    j["end"] = s.end_s;
    j["text"] = s.text;
    segments.push_back(std::move(j));
  }
  return segments;
}

Transcript decode_transcript(const ojson& j, std::uint64_t line) {
  if (!j.is_array()) bad("transcript must be an array", line);
  Transcript t;
  for (const ojson& seg : j) {
    TranscriptSegment s;
    s.start_s = util::require_number(seg, "start", line);
    s.end_s = util::require_number(seg, "end", line);
    s.text = util::require_string(seg, "text", line);
    if (s.end_s < s.start_s) bad("transcript segment ends before it starts", line);
    t.segments.push_back(std::move(s));
  }
  for (std::size_t i = 1; i < t.segments.size(); ++i) {
    if (t.segments[i].start_s < t.segments[i - 1].end_s)
      bad("transcript segments overlap or are unsorted", line);
  }
  return t;
}

ojson encode_raw_tutorial(const RawTutorial& t) {
  ojson j;
  j["source"] = encode_source_id(t.source);
  j["modality"] = std::string(modality_name(t.modality));
  ojson text;
  text["title"] = t.text.title;
  text["body"] = t.text.body;
  text["transcript"] =
      t.text.transcript ? encode_transcript(*t.text.transcript) : ojson(nullptr);
  j["text"] = std::move(text);
  ojson visual;
  ojson images = ojson::array();
  for (const ImageRef& ref : t.visual.images) images.push_back(ref);
  visual["images"] = std::move(images);
  if (t.visual.frames) {
    ojson frames;
    frames["path"] = t.visual.frames->path;
    frames["fps"] = t.visual.frames->fps;
    frames["count"] = t.visual.frames->frame_count;
    visual["frames"] = std::move(frames);
  } else {
    visual["frames"] = nullptr;
  }
  j["visual"] = std::move(visual);
  j["audio"] = t.audio ? ojson(*t.audio) : ojson(nullptr);
  return j;
}

RawTutorial decode_raw_tutorial(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("tutorial must be an object", line);
  RawTutorial t;
  t.source = decode_source_id(util::require_field(j, "source", line), line);
  auto modality = modality_from_name(util::require_string(j, "modality", line));
  if (!modality) bad("unknown modality", line);
  t.modality = *modality;

  const ojson& text = util::require_field(j, "text", line);
  t.text.title = util::require_string(text, "title", line);
  t.text.body = util::require_string(text, "body", line);
  const ojson& transcript = util::require_field(text, "transcript", line);
  if (!transcript.is_null()) t.text.transcript = decode_transcript(transcript, line);

  const ojson& visual = util::require_field(j, "visual", line);
  const ojson& images = util::require_field(visual, "images", line);
  if (!images.is_array()) bad("\"images\" must be an array", line);
  for (const ojson& ref : images) {
    if (!ref.is_string()) bad("image ref must be a string", line);
    t.visual.images.push_back(ref.get<std::string>());
  }
  const ojson& frames = util::require_field(visual, "frames", line);
  if (!frames.is_null()) {
    FrameStreamRef ref;
    ref.path = util::require_string(frames, "path", line);
    ref.fps = util::require_number(frames, "fps", line);
    ref.frame_count =
        static_cast<std::uint64_t>(util::require_number(frames, "count", line));
    if (ref.fps <= 0) bad("fps must be positive", line);
    t.visual.frames = std::move(ref);
  }

  const ojson& audio = util::require_field(j, "audio", line);
  if (!audio.is_null()) {
    if (!audio.is_string()) bad("\"audio\" must be a string or null", line);
    t.audio = audio.get<std::string>();
  }
  return t;
}

ojson encode_processed_tutorial(const ProcessedTutorial& t) {
  ojson j;
  j["source"] = encode_source_id(t.source);
  j["task"] = t.task;
  j["platform"] = std::string(platform_name(t.platform));
  ojson steps = ojson::array();
  for (const StepPair& s : t.steps) {
    ojson step;
    step["index"] = s.index;
    step["observation"] = s.observation;
    step["rough_description"] = s.rough_description;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

ProcessedTutorial decode_processed_tutorial(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("tutorial must be an object", line);
  ProcessedTutorial t;
  t.source = decode_source_id(util::require_field(j, "source", line), line);
  t.task = util::require_string(j, "task", line);
  auto platform = platform_from_name(util::require_string(j, "platform", line));
  if (!platform) bad("unknown platform", line);
  t.platform = *platform;
  const ojson& steps = util::require_field(j, "steps", line);
  if (!steps.is_array() || steps.empty())
    bad("\"steps\" must be a non-empty array", line);
  for (const ojson& s : steps) {
    StepPair step;
    step.index = static_cast<int>(util::require_number(s, "index", line));
    step.observation = util::require_string(s, "observation", line);
    step.rough_description = util::require_string(s, "rough_description", line);
    t.steps.push_back(std::move(step));
  }
  return t;
}

ojson encode_trajectory(const Trajectory& t) {
  ojson j;
  j["id"] = t.id;
  j["task"] = t.task;
  j["platform"] = std::string(platform_name(t.platform));
  j["source"] = encode_source_id(t.source);
  ojson steps = ojson::array();
  for (const TrajStep& s : t.steps) {
    ojson step;
    step["observation"] = s.observation;
    step["rough_description"] = s.rough_description;
    step["thought"] = s.response.thought;
    ojson actions = ojson::array();
    for (const Action& a : s.response.actions) actions.push_back(encode_action(a));
    step["actions"] = std::move(actions);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

Trajectory decode_trajectory(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("trajectory must be an object", line);
  Trajectory t;
  t.id = util::require_string(j, "id", line);
  if (t.id.empty()) bad("empty trajectory id", line);
  t.task = util::require_string(j, "task", line);
  auto platform = platform_from_name(util::require_string(j, "platform", line));
  if (!platform) bad("unknown platform", line);
  t.platform = *platform;
  t.source = decode_source_id(util::require_field(j, "source", line), line);
  const ojson& steps = util::require_field(j, "steps", line);
  if (!steps.is_array() || steps.empty())
    bad("\"steps\" must be a non-empty array", line);
  for (const ojson& s : steps) {
    TrajStep step;
    step.observation = util::require_string(s, "observation", line);
    step.rough_description = util::require_string(s, "rough_description", line);
    step.response.thought = util::require_string(s, "thought", line);
    const ojson& actions = util::require_field(s, "actions", line);
    if (!actions.is_array() || actions.empty())
      bad("\"actions\" must be a non-empty array", line);
    for (const ojson& a : actions)
      step.response.actions.push_back(decode_action(a, line));
    t.steps.push_back(std::move(step));
  }
  return t;
}

ojson encode_counters(const PipelineCounters& c) {
  ojson j;
  j["crawled"] = c.crawled;
  j["after_dedup"] = c.after_dedup;
  j["after_content_filter"] = c.after_content_filter;
  j["after_trajectory_filter"] = c.after_trajectory_filter;
  auto map_json = [](const std::map<std::string, std::uint64_t>& m) {
    ojson out = ojson::object();
    for (const auto& [k, v] : m) out[k] = v;
    return out;
  };
  j["steps_histogram"] = map_json(c.steps_histogram);
  j["action_histogram"] = map_json(c.action_histogram);
  j["platform_histogram"] = map_json(c.platform_histogram);
  j["drop_reasons"] = map_json(c.drop_reasons);
  return j;
}

PipelineCounters decode_counters(const ojson& j, std::uint64_t line) {
  if (!j.is_object()) bad("counters must be an object", line);
  auto count = [&](const char* key) {
    double v = util::require_number(j, key, line);
    if (v < 0) bad(std::string(key) + " must be non-negative", line);
    return static_cast<std::uint64_t>(v);
  };
  PipelineCounters c;
  // Rebuilding through update_counters re-checks funnel monotonicity.
  c = update_counters(c, FilterStage::Crawled, count("crawled"));
  c = update_counters(c, FilterStage::Dedup, count("after_dedup"));
  c = update_counters(c, FilterStage::ContentFilter, count("after_content_filter"));
  c = update_counters(c, FilterStage::TrajectoryFilter,
                      count("after_trajectory_filter"));
  auto read_map = [&](const char* key, std::map<std::string, std::uint64_t>& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_object()) bad(std::string(key) + " must be an object", line);
    for (auto entry = it->begin(); entry != it->end(); ++entry)
      out[entry.key()] = entry.value().get<std::uint64_t>();
  };
  read_map("steps_histogram", c.steps_histogram);
  read_map("action_histogram", c.action_histogram);
  read_map("platform_histogram", c.platform_histogram);
  read_map("drop_reasons", c.drop_reasons);
  return c;
}

std::string encode_trajectory_line(const Trajectory& t) {
  return canonical_dump(encode_trajectory(t));
}

Trajectory decode_trajectory_line(const std::string& text, std::uint64_t line) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded()) bad("not valid JSON", line);
  return decode_trajectory(j, line);
}

}  // namespace guiharvest::dataset
