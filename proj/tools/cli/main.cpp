// guiharvest command line: each subcommand runs one pipeline stage against a
// workdir, run-all chains them. Errors leave as one JSON line on stderr plus
// a stage-specific exit code so wrappers can branch without scraping text.

#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/pipeline/stages.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace {

using namespace guiharvest;

void print_results(const std::vector<pipeline::StageResult>& results) {
  for (const pipeline::StageResult& r : results) {
    ojson funnel;
    funnel["crawled"] = r.counters.crawled;
    funnel["after_dedup"] = r.counters.after_dedup;
    funnel["after_content_filter"] = r.counters.after_content_filter;
    funnel["after_trajectory_filter"] = r.counters.after_trajectory_filter;
    ojson j;
    j["stage"] = r.stage;
    j["records_out"] = r.records_out;
    j["funnel"] = funnel;
    std::cout << dataset::canonical_dump(j) << "\n";
  }
}

void print_error(const char* kind, const std::string& message) {
  ojson j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << dataset::canonical_dump(j) << "\n";
}

int guarded(const std::function<std::vector<pipeline::StageResult>()>& body) {
  try {
    print_results(body());
    return 0;
  } catch (const ConfigError& e) {
    print_error("config_error", e.what());
    return 2;
  } catch (const StageInputMissing& e) {
    print_error("stage_input_missing", e.what());
    return 3;
  } catch (const SchemaViolation& e) {
    print_error("schema_violation", e.what());
    return 4;
  } catch (const ServiceUnavailable& e) {
    print_error("service_unavailable", e.what());
    return 5;
  } catch (const Error& e) {
    print_error("pipeline_error", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what());
    return 1;
  }
}

struct CommonArgs {
  std::string config;
  std::string workdir = "work";
  bool overwrite = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config, "pipeline config file")
      ->required();
  cmd->add_option("-w,--workdir", args.workdir,
                  "directory holding the stage outputs");
  cmd->add_flag("--overwrite", args.overwrite,
                "rebuild the stage even if its directory has output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multimodal tutorials in, GUI-agent training data out"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string records;

  using Runner = std::function<std::vector<pipeline::StageResult>(
      const pipeline::PipelineConfig&, const pipeline::StageOptions&)>;
  struct Sub {
    const char* name;
    const char* help;
    Runner run;
  };
  auto one = [](pipeline::StageResult r) {
    return std::vector<pipeline::StageResult>{std::move(r)};
  };
  const Sub subs[] = {
      {"crawl", "search the corpus and download raw tutorials",
       [&](const auto& cfg, const auto& o) { return one(run_crawl(cfg, o)); }},
      {"process", "filter content, extract tasks, pick observations",
       [&](const auto& cfg, const auto& o) { return one(run_process(cfg, o)); }},
      {"generate", "run the agent over processed tutorials",
       [&](const auto& cfg, const auto& o) { return one(run_generate(cfg, o)); }},
      {"filter", "judge candidate trajectories and build the dataset",
       [&](const auto& cfg, const auto& o) { return one(run_filter(cfg, o)); }},
      {"export-sft", "expand the dataset into training samples",
       [&](const auto& cfg, const auto& o) {
         return one(run_export_sft(cfg, o));
       }},
      {"stats", "funnel and distribution report over the dataset",
       [&](const auto& cfg, const auto& o) { return one(run_stats(cfg, o)); }},
  };

  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common(cmd, args);
    Runner run = sub.run;
    cmd->callback([&args, run] {
      std::exit(guarded([&] {
        pipeline::PipelineConfig cfg = pipeline::load_config(args.config);
        pipeline::StageOptions opt{args.workdir, args.overwrite};
        return run(cfg, opt);
      }));
    });
  }

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "score prediction records against gold");
  add_common(eval_cmd, args);
  eval_cmd->add_option("-r,--records", records, "prediction records (JSONL)")
      ->required();
  eval_cmd->callback([&] {
    std::exit(guarded([&] {
      pipeline::PipelineConfig cfg = pipeline::load_config(args.config);
      pipeline::StageOptions opt{args.workdir, args.overwrite};
      return std::vector<pipeline::StageResult>{
          run_eval(cfg, opt, records)};
    }));
  });

  CLI::App* all_cmd = app.add_subcommand("run-all", "every stage in order");
  add_common(all_cmd, args);
  all_cmd->add_option("-r,--records", records,
                      "optional prediction records for a final eval stage");
  all_cmd->callback([&] {
    std::exit(guarded([&] {
      pipeline::PipelineConfig cfg = pipeline::load_config(args.config);
      pipeline::StageOptions opt{args.workdir, args.overwrite};
      std::optional<std::filesystem::path> r;
      if (!records.empty()) r = records;
      return run_all(cfg, opt, r);
    }));
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
