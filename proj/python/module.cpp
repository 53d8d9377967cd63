// Python bindings. Structured values cross the boundary as JSON strings so
// the canonical C++ codecs stay the single source of truth for schemas.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "guiharvest/counters.hpp"
#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/dataset/dataset.hpp"
#include "guiharvest/dataset/sft.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/eval/eval.hpp"
#include "guiharvest/pipeline/config.hpp"
#include "guiharvest/pipeline/stages.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/source_id.hpp"
#include "guiharvest/traj/parse.hpp"
#include "guiharvest/types.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/vision/frame_source.hpp"
#include "guiharvest/vision/saliency.hpp"

namespace py = pybind11;

namespace {

using guiharvest::ojson;

guiharvest::Platform platform_arg(const std::string& name) {
  auto p = guiharvest::platform_from_name(name);
  if (!p) throw py::value_error("unknown platform: " + name);
  return *p;
}

ojson parse_json_arg(const std::string& text, const char* what) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded())
    throw py::value_error(std::string(what) + " is not valid JSON");
  return j;
}

std::string canonical_source_id(const std::string& raw, const std::string& source) {
  return guiharvest::canonicalize_source_id(
             raw, guiharvest::source_from_name(source))
      .str();
}

std::string parse_agent_output(const std::string& raw) {
  auto result = guiharvest::traj::parse_agent_output(raw);
  ojson j;
  if (const auto* ta = std::get_if<guiharvest::ThoughtAction>(&result)) {
    j["ok"] = true;
    j["thought"] = ta->thought;
    j["actions"] = guiharvest::dataset::encode_thought_action(*ta)["actions"];
  } else {
    const auto& failure = std::get<guiharvest::traj::ParseFailure>(result);
    j["ok"] = false;
    j["reason"] = failure.reason;
  }
  return guiharvest::dataset::canonical_dump(j);
}

std::string serialize_thought_action(const std::string& json_text) {
  ojson j = parse_json_arg(json_text, "thought/action");
  return guiharvest::traj::serialize_thought_action(
      guiharvest::dataset::decode_thought_action(j));
}

std::optional<std::string> validate_action(const std::string& json_text) {
  ojson j = parse_json_arg(json_text, "action");
  try {
    guiharvest::dataset::decode_action(j);
    return std::nullopt;
  } catch (const guiharvest::SchemaViolation& e) {
    return std::string(e.what());
  }
}

std::string agent_system_prompt(const std::string& platform) {
  return guiharvest::prompts::agent_system(platform_arg(platform));
}

std::string sft_line(const std::string& trajectory_json, int step, int n) {
  guiharvest::Trajectory t =
      guiharvest::dataset::decode_trajectory_line(trajectory_json);
  return guiharvest::dataset::encode_sft_line(
      guiharvest::dataset::render_sft_sample(t, step, n));
}

std::string sft_prompt(const std::string& trajectory_json, int step, int n) {
  guiharvest::Trajectory t =
      guiharvest::dataset::decode_trajectory_line(trajectory_json);
  return guiharvest::dataset::render_sft_prompt(
      guiharvest::dataset::render_sft_sample(t, step, n));
}

std::vector<int> salient_frame_indices(const std::string& path, double fps) {
  auto source = guiharvest::vision::open_frame_source(path, fps);
  std::vector<guiharvest::vision::Frame> frames;
  while (auto f = source->next()) frames.push_back(std::move(*f));
  return guiharvest::vision::detect_salient_frames(frames);
}

std::vector<std::string> dataset_ids(const std::string& root) {
  std::vector<std::string> out;
  guiharvest::dataset::read_dataset(
      std::filesystem::path(root),
      [&](const guiharvest::Trajectory& t) { out.push_back(t.id); });
  return out;
}

std::string canonical_json(const std::string& text) {
  return guiharvest::dataset::canonical_dump(parse_json_arg(text, "document"));
}

ojson result_json(const guiharvest::pipeline::StageResult& r) {
  ojson j;
  j["stage"] = r.stage;
  j["records_out"] = r.records_out;
  ojson funnel;
  funnel["crawled"] = r.counters.crawled;
  funnel["after_dedup"] = r.counters.after_dedup;
  funnel["after_content_filter"] = r.counters.after_content_filter;
  funnel["after_trajectory_filter"] = r.counters.after_trajectory_filter;
  j["funnel"] = std::move(funnel);
  return j;
}

std::string run_stage(const std::string& stage, const std::string& config,
                      const std::string& workdir, bool overwrite,
                      const std::string& eval_records) {
  namespace pl = guiharvest::pipeline;
  pl::PipelineConfig cfg = pl::load_config(config);
  pl::StageOptions opt;
  opt.workdir = workdir;
  opt.overwrite = overwrite;

  if (stage == "run-all") {
    std::optional<std::filesystem::path> records;
    if (!eval_records.empty()) records = eval_records;
    ojson out = ojson::array();
    for (const auto& r : pl::run_all(cfg, opt, records))
      out.push_back(result_json(r));
    return guiharvest::dataset::canonical_dump(out);
  }

  pl::StageResult r;
  if (stage == "crawl") r = pl::run_crawl(cfg, opt);
  else if (stage == "process") r = pl::run_process(cfg, opt);
  else if (stage == "generate") r = pl::run_generate(cfg, opt);
  else if (stage == "filter") r = pl::run_filter(cfg, opt);
  else if (stage == "export-sft") r = pl::run_export_sft(cfg, opt);
  else if (stage == "stats") r = pl::run_stats(cfg, opt);
  else if (stage == "eval") {
    if (eval_records.empty())
      throw py::value_error("eval needs eval_records");
    r = pl::run_eval(cfg, opt, eval_records);
  } else {
    throw py::value_error("unknown stage: " + stage);
  }
  return guiharvest::dataset::canonical_dump(result_json(r));
}

}  // namespace

PYBIND11_MODULE(_guiharvest, m) {
  m.doc() = "GUI tutorial harvesting core";

  py::register_exception<guiharvest::SchemaViolation>(m, "SchemaViolation");
  py::register_exception<guiharvest::ConfigError>(m, "ConfigError");

  m.def("canonical_source_id", &canonical_source_id, py::arg("raw"),
        py::arg("source"),
        "Canonical \"source:native_id\" form of a URL or bare id.");
  m.def("parse_agent_output", &parse_agent_output, py::arg("raw"),
        "Parse a Thought/Action reply; returns a JSON string with \"ok\".");
  m.def("serialize_thought_action", &serialize_thought_action,
        py::arg("thought_action_json"),
        "Wire-format text for a {\"thought\", \"actions\"} JSON object.");
  m.def("validate_action", &validate_action, py::arg("action_json"),
        "None when the action object is valid, else the schema error.");
  m.def("agent_system_prompt", &agent_system_prompt, py::arg("platform"),
        "Agent system prompt for \"desktop\" or \"mobile\".");
  m.def("sft_line", &sft_line, py::arg("trajectory_json"), py::arg("step"),
        py::arg("n"), "Canonical SFT export line for one step.");
  m.def("sft_prompt", &sft_prompt, py::arg("trajectory_json"), py::arg("step"),
        py::arg("n"), "Training prompt text for one step.");
  m.def("salient_frame_indices", &salient_frame_indices, py::arg("path"),
        py::arg("fps") = 0.0,
        "Indices of change-completion frames in a frame stream file.");
  m.def("dataset_ids", &dataset_ids, py::arg("root"),
        "Trajectory ids stored in a dataset directory.");
  m.def("canonical_json", &canonical_json, py::arg("text"),
        "Canonical serialization of a JSON document.");
  m.def("quantize_coord", &guiharvest::util::quantize_coord, py::arg("x"),
        "Coordinate quantized to 4 decimal places.");
  m.def("run_stage", &run_stage, py::arg("stage"), py::arg("config"),
        py::arg("workdir") = "work", py::arg("overwrite") = false,
        py::arg("eval_records") = "",
        "Run one pipeline stage (or \"run-all\"); returns the result JSON.");

  m.attr("__version__") = "0.1.0";
}
