#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "guiharvest/actions.hpp"
#include "guiharvest/dataset/sft.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/traj/parse.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "support/tmpdir.hpp"

using namespace guiharvest;
using namespace guiharvest::dataset;

namespace {

Trajectory make_traj(int steps, Platform platform = Platform::Desktop) {
  Trajectory t;
  t.source = {Source::Fixture, "sft01"};
  t.id = "fixture:sft01#0";
  t.task = "change the font size";
  t.platform = platform;
  for (int i = 1; i <= steps; ++i) {
    TrajStep step;
    step.observation = "images/o" + std::to_string(i) + ".pgm";
    step.rough_description = "step " + std::to_string(i);
    step.response.thought = "t" + std::to_string(i);
    Action a;
    a.kind = platform == Platform::Mobile ? ActionKind::Tap : ActionKind::Click;
    a.position = Point{0.1 * i, 0.5};
    step.response.actions.push_back(a);
    t.steps.push_back(std::move(step));
  }
  return t;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("sample history holds at most n prior steps, oldest first") {
  Trajectory t = make_traj(5);

  SUBCASE("first step has no history") {
    SftSample s = render_sft_sample(t, 1, 2);
    CHECK(s.history.empty());
    CHECK(s.current_observation == "images/o1.pgm");
    CHECK(s.target.thought == "t1");
  }
  SUBCASE("second step has one") {
    SftSample s = render_sft_sample(t, 2, 2);
    REQUIRE(s.history.size() == 1);
    CHECK(s.history[0].observation == "images/o1.pgm");
  }
  SUBCASE("later steps saturate at n") {
    SftSample s = render_sft_sample(t, 5, 2);
    REQUIRE(s.history.size() == 2);
    CHECK(s.history[0].observation == "images/o3.pgm");
    CHECK(s.history[1].observation == "images/o4.pgm");
    CHECK(s.current_observation == "images/o5.pgm");
    CHECK(s.target.thought == "t5");
  }
  SUBCASE("n zero keeps only the current step") {
    SftSample s = render_sft_sample(t, 4, 0);
    CHECK(s.history.empty());
  }
  SUBCASE("image count is min(i - 1, n) + 1 and never exceeds 3 at n = 2") {
    for (int i = 1; i <= 5; ++i) {
      SftSample s = render_sft_sample(t, i, 2);
      int images = static_cast<int>(s.history.size()) + 1;
      CHECK(images == std::min(i - 1, 2) + 1);
      CHECK(images <= 3);
    }
  }
  SUBCASE("indices outside the trajectory throw") {
    CHECK_THROWS_AS(render_sft_sample(t, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(render_sft_sample(t, 6, 2), std::out_of_range);
  }
  SUBCASE("negative n is a caller bug") {
    CHECK_THROWS_AS(render_sft_sample(t, 1, -1), std::invalid_argument);
  }
}

TEST_CASE("prompt layout") {
  Trajectory t = make_traj(3);
  SftSample s = render_sft_sample(t, 3, 2);
  std::string prompt = render_sft_prompt(s);

  SUBCASE("starts with the platform system prompt") {
    CHECK(prompt.rfind(prompts::agent_system(Platform::Desktop), 0) == 0);
  }
  SUBCASE("task line follows the system prompt") {
    CHECK(prompt.find("\nTask: change the font size\n") != std::string::npos);
  }
  SUBCASE("one placeholder per image, history responses interleaved") {
    CHECK(count_occurrences(prompt, "Observation: <image>") == 3);
    auto first_obs = prompt.find("Observation: <image>");
    auto first_resp = prompt.find("Thought: t1");
    auto second_obs = prompt.find("Observation: <image>", first_obs + 1);
    auto second_resp = prompt.find("Thought: t2");
    auto last_obs = prompt.rfind("Observation: <image>");
    REQUIRE(first_resp != std::string::npos);
    CHECK(first_obs < first_resp);
    CHECK(first_resp < second_obs);
    CHECK(second_obs < second_resp);
    CHECK(second_resp < last_obs);
    // The target never appears in the prompt.
    CHECK(prompt.find("Thought: t3") == std::string::npos);
  }
  SUBCASE("the prompt ends after the current observation") {
    CHECK(prompt.substr(prompt.size() - 21) == "Observation: <image>\n");
  }
  SUBCASE("mobile samples use the mobile system prompt") {
    Trajectory m = make_traj(1, Platform::Mobile);
    std::string mobile_prompt = render_sft_prompt(render_sft_sample(m, 1, 2));
    CHECK(mobile_prompt.rfind(prompts::agent_system(Platform::Mobile), 0) == 0);
    CHECK(mobile_prompt != prompt);
  }
}

TEST_CASE("sft lines carry refs in placeholder order") {
  Trajectory t = make_traj(4);
  SftSample s = render_sft_sample(t, 4, 2);
  ojson j = ojson::parse(encode_sft_line(s));

  CHECK(j["task"] == "change the font size");
  CHECK(j["platform"] == "desktop");
  CHECK(j["n"] == 2);
  REQUIRE(j["images"].size() == 3);
  CHECK(j["images"][0] == "images/o2.pgm");
  CHECK(j["images"][1] == "images/o3.pgm");
  CHECK(j["images"][2] == "images/o4.pgm");
  CHECK(j["target"] == traj::serialize_thought_action(t.steps[3].response));
  CHECK(count_occurrences(j["prompt"].get<std::string>(),
                          "Observation: <image>") == 3);
}

TEST_CASE("export_sft expands every step of every trajectory") {
  TempDir tmp("sft");
  auto out = tmp / "sft.jsonl";
  std::vector<Trajectory> trajectories{make_traj(3), make_traj(1),
                                       make_traj(5)};

  SftExport report = export_sft(trajectories, 2, out);
  CHECK(report.trajectories == 3);
  CHECK(report.samples == 9);

  std::ifstream in(out);
  std::string line;
  std::vector<ojson> lines;
  while (std::getline(in, line)) lines.push_back(ojson::parse(line));
  REQUIRE(lines.size() == 9);
  // Per-trajectory image counts follow min(i - 1, n) + 1.
  CHECK(lines[0]["images"].size() == 1);
  CHECK(lines[1]["images"].size() == 2);
  CHECK(lines[2]["images"].size() == 3);
  CHECK(lines[3]["images"].size() == 1);  // second trajectory, step 1
  CHECK(lines[4]["images"].size() == 1);  // third trajectory, step 1
  CHECK(lines[8]["images"].size() == 3);

  SUBCASE("an empty export still writes the file") {
    auto empty = tmp / "empty.jsonl";
    SftExport r = export_sft({}, 2, empty);
    CHECK(r.samples == 0);
    CHECK(std::filesystem::exists(empty));
  }
}
