#include "guiharvest/dataset/sft.hpp"

#include <stdexcept>

#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/prompts.hpp"
#include "guiharvest/traj/parse.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::dataset {

SftSample render_sft_sample(const Trajectory& traj, int i, int n) {
  if (n < 0) throw std::invalid_argument("negative history size");
  if (i < 1 || static_cast<std::size_t>(i) > traj.steps.size())
    throw std::out_of_range("step index " + std::to_string(i) +
                            " outside 1.." + std::to_string(traj.steps.size()));
  SftSample s;
  s.task = traj.task;
  s.platform = traj.platform;
  s.n = n;
  int begin = i - 1 - n;
  if (begin < 0) begin = 0;
  for (int j = begin; j < i - 1; ++j)
    s.history.push_back({traj.steps[j].observation, traj.steps[j].response});
  s.current_observation = traj.steps[i - 1].observation;
  s.target = traj.steps[i - 1].response;
  return s;
}

std::string render_sft_prompt(const SftSample& sample) {
  std::string out = prompts::agent_system(sample.platform);
  out += "\nTask: " + sample.task + "\n";
  for (const SftSample::HistoryEntry& h : sample.history) {
    out += "Observation: <image>\n";
    out += traj::serialize_thought_action(h.response);
    out += "\n";
  }
  out += "Observation: <image>\n";
  return out;
}

std::string encode_sft_line(const SftSample& sample) {
  ojson j;
  j["task"] = sample.task;
  j["platform"] = std::string(platform_name(sample.platform));
  j["n"] = sample.n;
  ojson images = ojson::array();
  for (const SftSample::HistoryEntry& h : sample.history)
    images.push_back(h.observation);
  images.push_back(sample.current_observation);
  j["images"] = images;
  j["prompt"] = render_sft_prompt(sample);
  j["target"] = traj::serialize_thought_action(sample.target);
  return canonical_dump(j);
}

SftExport export_sft(const std::vector<Trajectory>& trajectories, int n,
                     const std::filesystem::path& out) {
  SftExport report;
  std::string body;
  for (const Trajectory& traj : trajectories) {
    ++report.trajectories;
    for (std::size_t i = 1; i <= traj.steps.size(); ++i) {
      body += encode_sft_line(render_sft_sample(traj, static_cast<int>(i), n));
      body += "\n";
      ++report.samples;
    }
  }
  util::write_file_atomic(out, body);
  return report;
}

}  // namespace guiharvest::dataset
