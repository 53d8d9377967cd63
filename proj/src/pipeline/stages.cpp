#include "guiharvest/pipeline/stages.hpp"

#include <fstream>
#include <memory>
#include <set>

#include "guiharvest/crawl/adapter.hpp"
#include "guiharvest/crawl/fixture_adapter.hpp"
#include "guiharvest/crawl/keywords.hpp"
#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/dataset/dataset.hpp"
#include "guiharvest/dataset/sft.hpp"
#include "guiharvest/dataset/stats.hpp"
#include "guiharvest/dataset/store.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/eval/eval.hpp"
#include "guiharvest/filter/judge.hpp"
#include "guiharvest/text/processing.hpp"
#include "guiharvest/traj/generate.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/vision/classify.hpp"
#include "guiharvest/vision/image_io.hpp"
#include "guiharvest/vision/keyframes.hpp"

namespace guiharvest::pipeline {

namespace {

namespace fs = std::filesystem;

fs::path stage_dir(const StageOptions& opt, const char* stage) {
  return opt.workdir / stage;
}

// A stage directory with content is a finished run; refuse to clobber it
// unless asked.
void prepare_stage_dir(const fs::path& dir, bool overwrite) {
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    if (!overwrite)
      throw Error("stage directory " + dir.string() +
                  " already has output; pass --overwrite to rebuild it");
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
}

void require_input(const fs::path& file, const char* producer) {
  if (!fs::exists(file))
    throw StageInputMissing(file.string() + " not found; run the \"" +
                            producer + "\" stage first");
}

// Deterministic stage journal: one JSON object per event, no timestamps.
struct StageLog {
  std::string buffer;
  void event(const ojson& j) { buffer += dataset::canonical_dump(j) + "\n"; }
  void write(const fs::path& dir) const {
    util::write_file_atomic(dir / "log.jsonl", buffer);
  }
};

void write_counters(const fs::path& dir, const PipelineCounters& c) {
  util::write_file_atomic(
      dir / "counters.json",
      dataset::canonical_dump(dataset::encode_counters(c)) + "\n");
}

PipelineCounters read_counters(const fs::path& dir, const char* producer) {
  fs::path file = dir / "counters.json";
  require_input(file, producer);
  ojson j = ojson::parse(util::read_text_file(file), nullptr, false);
  if (j.is_discarded())
    throw SchemaViolation("counters.json is not valid JSON");
  return dataset::decode_counters(j);
}

void for_each_line(const fs::path& file, const char* producer,
                   const std::function<void(const std::string&, std::uint64_t)>& fn) {
  require_input(file, producer);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::string line;
  std::uint64_t number = 0;
  while (std::getline(in, line)) fn(line, ++number);
}

struct ServiceSet {
  std::shared_ptr<services::Transport> transport;
  std::shared_ptr<services::Clock> clock;
  std::unique_ptr<services::ServiceClient> llm, vlm, agent, asr;
};

ServiceSet make_services(const PipelineConfig& cfg) {
  const ServicesConfig& sc = cfg.services;
  ServiceSet s;
  switch (sc.mode) {
    case TransportMode::Live:
      s.transport = std::make_shared<services::HttpTransport>(
          sc.base_url, sc.timeout_s, sc.api_key);
      s.clock = std::make_shared<services::SystemClock>();
      break;
    case TransportMode::Record:
      s.transport = std::make_shared<services::RecordTransport>(
          std::make_shared<services::HttpTransport>(sc.base_url, sc.timeout_s,
                                                    sc.api_key),
          sc.fixtures);
      s.clock = std::make_shared<services::SystemClock>();
      break;
    case TransportMode::Replay:
      s.transport = std::make_shared<services::ReplayTransport>(sc.fixtures);
      // Backoff sleeps advance virtual time only; replays never wait.
      s.clock = std::make_shared<services::ManualClock>();
      break;
  }
  s.llm = std::make_unique<services::ServiceClient>(sc.llm, s.transport,
                                                    s.clock, cfg.seed);
  s.vlm = std::make_unique<services::ServiceClient>(sc.vlm, s.transport,
                                                    s.clock, cfg.seed + 1);
  s.agent = std::make_unique<services::ServiceClient>(sc.agent, s.transport,
                                                      s.clock, cfg.seed + 2);
  s.asr = std::make_unique<services::ServiceClient>(sc.asr, s.transport,
                                                    s.clock, cfg.seed + 3);
  return s;
}

BlobLoader directory_loader(const fs::path& root) {
  return [root](const std::string& ref) {
    return util::read_binary_file(root / ref);
  };
}

fs::path crawl_corpus_root(const StageOptions& opt) {
  fs::path state = stage_dir(opt, "crawl") / "state.json";
  require_input(state, "crawl");
  ojson j = ojson::parse(util::read_text_file(state), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw SchemaViolation("state.json is not a JSON object");
  return fs::path(util::require_string(j, "corpus_root"));
}

}  // namespace

StageResult run_crawl(const PipelineConfig& cfg, const StageOptions& opt) {
  if (cfg.manifest.empty())
    throw ConfigError("fixture adapter needs a corpus manifest", "manifest");
  fs::path dir = stage_dir(opt, "crawl");
  prepare_stage_dir(dir, opt.overwrite);
  StageLog log;

  crawl::FixtureAdapter adapter(cfg.manifest);
  std::vector<crawl::SourceAdapter*> adapters{&adapter};

  services::ServiceClient* llm = nullptr;
  ServiceSet set;
  if (cfg.keyword_target > static_cast<int>(cfg.seeds.size())) {
    set = make_services(cfg);
    llm = set.llm.get();
  }
  crawl::KeywordExpansion expansion =
      crawl::expand_keywords(cfg.seeds, llm, cfg.keyword_target);
  for (const std::string& kw : expansion.keywords)
    log.event({{"event", "keyword"}, {"keyword", kw}});
  if (!expansion.llm_ok)
    log.event({{"event", "keyword_expansion_degraded"}});

  crawl::CrawlLimits limits;
  limits.per_keyword_limit = cfg.per_keyword_limit;
  limits.workers = cfg.crawl_workers;
  crawl::CrawlReport report;
  std::vector<RawTutorial> tutorials =
      crawl::crawl_corpus(adapters, expansion.keywords, limits, report);
  for (const auto& f : report.failures)
    log.event({{"event", "crawl_failure"},
               {"adapter", f.adapter},
               {"keyword", f.keyword},
               {"id", f.id},
               {"message", f.message}});

  std::uint64_t crawled = tutorials.size();
  tutorials = crawl::dedup_tutorials(std::move(tutorials));

  PipelineCounters counters;
  counters = update_counters(counters, FilterStage::Crawled, crawled);
  counters =
      update_counters(counters, FilterStage::Dedup, tutorials.size());
  if (crawled > tutorials.size())
    counters.drop_reasons["duplicate"] += crawled - tutorials.size();

  std::string body;
  for (const RawTutorial& t : tutorials)
    body += dataset::canonical_dump(dataset::encode_raw_tutorial(t)) + "\n";
  util::write_file_atomic(dir / "raw_tutorials.jsonl", body);

  ojson state;
  state["corpus_root"] = fs::absolute(adapter.root()).string();
  util::write_file_atomic(dir / "state.json",
                          dataset::canonical_dump(state) + "\n");

  ojson rep;
  rep["keywords"] = expansion.keywords;
  rep["llm_expansion_ok"] = expansion.llm_ok;
  ojson hits = ojson::array();
  for (const auto& h : report.hits)
    hits.push_back({{"adapter", h.adapter},
                    {"keyword", h.keyword},
                    {"hits", h.hits},
                    {"downloaded", h.downloaded}});
  rep["hits"] = hits;
  ojson failures = ojson::array();
  for (const auto& f : report.failures)
    failures.push_back({{"adapter", f.adapter},
                        {"keyword", f.keyword},
                        {"id", f.id},
                        {"message", f.message}});
  rep["failures"] = failures;
  rep["downloaded"] = report.downloaded;
  util::write_file_atomic(dir / "report.json",
                          dataset::canonical_dump(rep) + "\n");

  write_counters(dir, counters);
  log.write(dir);
  return {"crawl", counters, tutorials.size()};
}

StageResult run_process(const PipelineConfig& cfg, const StageOptions& opt) {
  fs::path in_dir = stage_dir(opt, "crawl");
  fs::path dir = stage_dir(opt, "process");
  PipelineCounters counters = read_counters(in_dir, "crawl");
  fs::path corpus_root = crawl_corpus_root(opt);

  std::vector<RawTutorial> tutorials;
  for_each_line(in_dir / "raw_tutorials.jsonl", "crawl",
                [&](const std::string& line, std::uint64_t n) {
                  ojson j = ojson::parse(line, nullptr, false);
                  if (j.is_discarded())
                    throw SchemaViolation("bad tutorial record", n);
                  tutorials.push_back(dataset::decode_raw_tutorial(j, n));
                });

  prepare_stage_dir(dir, opt.overwrite);
  StageLog log;
  ServiceSet set = make_services(cfg);
  BlobLoader corpus = directory_loader(corpus_root);
  dataset::ImageStore store(dir);

  auto drop = [&](const RawTutorial& t, const char* reason,
                  const std::string& detail) {
    ++counters.drop_reasons[reason];
    log.event({{"event", "drop"},
               {"source", t.source.str()},
               {"reason", reason},
               {"detail", detail}});
  };

  std::uint64_t kept_by_filter = 0;
  std::string body;
  std::uint64_t written = 0;

  for (const RawTutorial& t : tutorials) {
    try {
      text::AssembledText assembled =
          text::assemble_text(t, set.asr.get(), corpus);
      text::ContentVerdict verdict =
          text::content_filter(t.text.title, assembled.text, *set.llm);
      if (!verdict.keep) {
        drop(t, "not_gui_tutorial", verdict.reason);
        continue;
      }
      ++kept_by_filter;

      Platform platform = text::classify_platform(assembled.text, *set.llm);
      if (platform == Platform::Other) {
        drop(t, "platform_other", "");
        continue;
      }

      text::TaskExtraction extraction =
          text::extract_task_and_steps(assembled.text, *set.llm, cfg.max_steps);

      std::vector<ImageRef> observations;
      if (t.modality == Modality::Video) {
        if (!t.visual.frames) {
          drop(t, "no_observations", "video without frames");
          continue;
        }
        auto source = vision::open_frame_source(
            corpus_root / t.visual.frames->path, t.visual.frames->fps);
        vision::KeyframeParams params;
        std::vector<vision::Keyframe> keyframes = vision::extract_keyframes(
            *source, assembled.transcript, params);
        for (const vision::Keyframe& kf : keyframes)
          observations.push_back(store.put(vision::encode_pnm(kf.frame)));
      } else {
        for (const ImageRef& ref : t.visual.images) {
          std::vector<std::uint8_t> bytes = corpus(ref);
          if (vision::classify_screenshot(bytes, *set.vlm))
            observations.push_back(store.put(bytes));
        }
      }
      if (observations.empty()) {
        drop(t, "no_observations", "");
        continue;
      }

      traj::AlignResult aligned =
          traj::align_steps(extraction.steps, observations);
      log.event({{"event", "aligned"},
                 {"source", t.source.str()},
                 {"policy", aligned.policy},
                 {"steps", aligned.steps.size()}});

      ProcessedTutorial processed;
      processed.source = t.source;
      processed.task = extraction.task;
      processed.platform = platform;
      processed.steps = aligned.steps;
      body += dataset::canonical_dump(
                  dataset::encode_processed_tutorial(processed)) +
              "\n";
      ++written;
    } catch (const ServiceUnavailable& e) {
      drop(t, "service_failure", e.what());
    } catch (const MalformedResponse& e) {
      drop(t, "service_failure", e.what());
    } catch (const Error& e) {
      drop(t, "unprocessable", e.what());
    }
  }

  counters =
      update_counters(counters, FilterStage::ContentFilter, kept_by_filter);
  util::write_file_atomic(dir / "processed.jsonl", body);
  write_counters(dir, counters);
  log.write(dir);
  return {"process", counters, written};
}

StageResult run_generate(const PipelineConfig& cfg, const StageOptions& opt) {
  fs::path in_dir = stage_dir(opt, "process");
  fs::path dir = stage_dir(opt, "generate");
  PipelineCounters counters = read_counters(in_dir, "process");

  std::vector<ProcessedTutorial> tutorials;
  for_each_line(in_dir / "processed.jsonl", "process",
                [&](const std::string& line, std::uint64_t n) {
                  ojson j = ojson::parse(line, nullptr, false);
                  if (j.is_discarded())
                    throw SchemaViolation("bad processed record", n);
                  tutorials.push_back(dataset::decode_processed_tutorial(j, n));
                });

  prepare_stage_dir(dir, opt.overwrite);
  StageLog log;
  ServiceSet set = make_services(cfg);
  BlobLoader observations = directory_loader(in_dir);

  traj::GenerateOptions gen;
  gen.history_window = cfg.history_window;

  std::string body;
  std::uint64_t written = 0;
  for (const ProcessedTutorial& t : tutorials) {
    std::vector<traj::StepOutcome> outcomes =
        traj::generate_trajectory(t, *set.agent, gen, observations);
    for (const traj::StepOutcome& o : outcomes)
      log.event({{"event", "step"},
                 {"source", t.source.str()},
                 {"index", o.index},
                 {"kind", std::string(traj::outcome_kind_name(o.kind))},
                 {"detail", o.detail}});
    std::vector<Trajectory> trajs = traj::split_trajectory(t, outcomes);
    if (trajs.empty())
      log.event({{"event", "no_trajectories"}, {"source", t.source.str()}});
    for (const Trajectory& traj : trajs) {
      body += dataset::encode_trajectory_line(traj) + "\n";
      ++written;
    }
  }

  util::write_file_atomic(dir / "trajectories.jsonl", body);
  write_counters(dir, counters);
  log.write(dir);
  return {"generate", counters, written};
}

StageResult run_filter(const PipelineConfig& cfg, const StageOptions& opt) {
  fs::path in_dir = stage_dir(opt, "generate");
  fs::path dir = stage_dir(opt, "filter");
  PipelineCounters counters = read_counters(in_dir, "generate");
  fs::path observation_root = stage_dir(opt, "process");

  std::vector<Trajectory> candidates;
  for_each_line(in_dir / "trajectories.jsonl", "generate",
                [&](const std::string& line, std::uint64_t n) {
                  candidates.push_back(dataset::decode_trajectory_line(line, n));
                });

  prepare_stage_dir(dir, opt.overwrite);
  StageLog log;
  ServiceSet set = make_services(cfg);
  BlobLoader observations = directory_loader(observation_root);

  dataset::DatasetWriter writer(dir / "dataset", observations);
  std::set<SourceId> kept_sources;
  std::string verdicts;
  std::uint64_t kept = 0;

  for (const Trajectory& t : candidates) {
    filter::JudgeVerdict verdict =
        filter::judge_trajectory(t, *set.vlm, observations);
    ojson v{{"trajectory", t.id},
            {"keep", verdict.keep},
            {"reason", verdict.reason}};
    verdicts += dataset::canonical_dump(v) + "\n";
    log.event({{"event", "verdict"},
               {"trajectory", t.id},
               {"keep", verdict.keep},
               {"reason", verdict.reason}});
    if (verdict.keep) {
      writer.add(t);
      kept_sources.insert(t.source);
      ++kept;
    } else {
      ++counters.drop_reasons[verdict.reason];
    }
  }
  writer.finish(cfg.created_at);

  counters = update_counters(counters, FilterStage::TrajectoryFilter,
                             kept_sources.size());
  util::write_file_atomic(dir / "verdicts.jsonl", verdicts);
  write_counters(dir, counters);
  log.write(dir);
  return {"filter", counters, kept};
}

StageResult run_export_sft(const PipelineConfig& cfg, const StageOptions& opt) {
  fs::path in_dir = stage_dir(opt, "filter");
  fs::path dir = stage_dir(opt, "sft");
  PipelineCounters counters = read_counters(in_dir, "filter");
  require_input(in_dir / "dataset" / "trajectories.jsonl", "filter");

  std::vector<Trajectory> trajectories =
      dataset::read_dataset(in_dir / "dataset");
  prepare_stage_dir(dir, opt.overwrite);

  dataset::SftExport report =
      dataset::export_sft(trajectories, cfg.sft_history, dir / "sft.jsonl");
  ojson summary;
  summary["samples"] = report.samples;
  summary["trajectories"] = report.trajectories;
  summary["n"] = cfg.sft_history;
  util::write_file_atomic(dir / "summary.json",
                          dataset::canonical_dump(summary) + "\n");
  return {"export-sft", counters, report.samples};
}

StageResult run_stats(const PipelineConfig& cfg, const StageOptions& opt) {
  (void)cfg;
  fs::path in_dir = stage_dir(opt, "filter");
  fs::path dir = stage_dir(opt, "stats");
  PipelineCounters counters = read_counters(in_dir, "filter");
  require_input(in_dir / "dataset" / "trajectories.jsonl", "filter");

  std::vector<Trajectory> trajectories =
      dataset::read_dataset(in_dir / "dataset");
  prepare_stage_dir(dir, opt.overwrite);

  dataset::compute_stats(trajectories, counters);
  util::write_file_atomic(dir / "stats.json", dataset::stats_json(counters));
  return {"stats", counters, trajectories.size()};
}

StageResult run_eval(const PipelineConfig& cfg, const StageOptions& opt,
                     const std::filesystem::path& records) {
  (void)cfg;
  fs::path dir = stage_dir(opt, "eval");
  require_input(records, "caller-supplied predictions");
  std::vector<eval::EvalRecord> parsed = eval::read_eval_records(records);
  prepare_stage_dir(dir, opt.overwrite);

  eval::EvalReport report = eval::aggregate(parsed);
  util::write_file_atomic(dir / "report.json", eval::report_json(report));
  StageResult result;
  result.stage = "eval";
  result.records_out = report.records;
  return result;
}

std::vector<StageResult> run_all(
    const PipelineConfig& cfg, const StageOptions& opt,
    const std::optional<std::filesystem::path>& eval_records) {
  std::vector<StageResult> results;
  results.push_back(run_crawl(cfg, opt));
  results.push_back(run_process(cfg, opt));
  results.push_back(run_generate(cfg, opt));
  results.push_back(run_filter(cfg, opt));
  results.push_back(run_export_sft(cfg, opt));
  results.push_back(run_stats(cfg, opt));
  if (eval_records) results.push_back(run_eval(cfg, opt, *eval_records));
  return results;
}

}  // namespace guiharvest::pipeline
