// Regenerates the test fixtures: the tutorial corpus, the recorded service
// exchanges the replay transport feeds on, and the evaluation records.
//
//   guiharvest-fixturegen corpus <dir>
//   guiharvest-fixturegen eval-records <file>
//   guiharvest-fixturegen record <fixtures-dir> [--scratch <dir>]
//
// `record` runs the whole pipeline against an in-process mock of the four
// services and leaves the recorded exchanges in <fixtures-dir>.

#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "guiharvest/pipeline/config.hpp"
#include "guiharvest/pipeline/stages.hpp"
#include "guiharvest/util/fs.hpp"
#include "corpus.hpp"
#include "mock_brain.hpp"

namespace fs = std::filesystem;

namespace {

int run_record(const fs::path& fixtures, fs::path scratch) {
  if (scratch.empty())
    scratch = fs::temp_directory_path() / "guiharvest-fixturegen";
  fs::remove_all(scratch);
  fs::remove_all(fixtures);
  fs::create_directories(scratch);
  fs::create_directories(fixtures);

  fs::path corpus = scratch / "corpus";
  fixture::write_corpus(corpus);

  httplib::Server server;
  auto handle = [](const httplib::Request& req, httplib::Response& res) {
    guiharvest::services::HttpResult out = fixture::mock_brain(req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Post("/v1/chat/completions", handle);
  server.Post("/v1/audio/transcriptions", handle);
  int port = server.bind_to_any_port("127.0.0.1");
  if (port <= 0) {
    std::fprintf(stderr, "cannot bind a local port\n");
    return 1;
  }
  std::thread serving([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  int status = 0;
  try {
    std::string cfg_text = fixture::config_text(
        "record", "http://127.0.0.1:" + std::to_string(port),
        fs::absolute(corpus / "manifest.json"), fs::absolute(fixtures));
    fs::path cfg_path = scratch / "config.json";
    guiharvest::util::write_file_atomic(cfg_path, cfg_text);

    guiharvest::pipeline::PipelineConfig cfg =
        guiharvest::pipeline::load_config(cfg_path);
    guiharvest::pipeline::StageOptions opt;
    opt.workdir = scratch / "work";
    opt.overwrite = true;
    auto results = guiharvest::pipeline::run_all(cfg, opt);
    for (const auto& r : results)
      std::printf("%-10s %llu records\n", r.stage.c_str(),
                  static_cast<unsigned long long>(r.records_out));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "record run failed: %s\n", e.what());
    status = 1;
  }

  server.stop();
  serving.join();

  std::size_t exchanges = 0;
  if (status == 0) {
    for (const auto& entry : fs::directory_iterator(fixtures))
      if (entry.is_regular_file()) ++exchanges;
    std::printf("recorded %zu exchanges in %s\n", exchanges,
                fixtures.string().c_str());
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"test fixture generator"};
  app.require_subcommand(1);

  std::string corpus_dir;
  CLI::App* corpus = app.add_subcommand("corpus", "write the tutorial corpus");
  corpus->add_option("dir", corpus_dir, "output directory")->required();

  std::string records_file;
  CLI::App* records =
      app.add_subcommand("eval-records", "write the evaluation records");
  records->add_option("file", records_file, "output file")->required();

  std::string fixtures_dir;
  std::string scratch_dir;
  CLI::App* record =
      app.add_subcommand("record", "record service exchanges for replay");
  record->add_option("fixtures", fixtures_dir, "recorded exchange directory")
      ->required();
  record->add_option("--scratch", scratch_dir,
                     "working directory for the record run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (corpus->parsed()) {
      fixture::write_corpus(corpus_dir);
      std::printf("corpus written to %s\n", corpus_dir.c_str());
      return 0;
    }
    if (records->parsed()) {
      fixture::write_eval_records(records_file);
      std::printf("eval records written to %s\n", records_file.c_str());
      return 0;
    }
    return run_record(fixtures_dir, scratch_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
