#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "guiharvest/types.hpp"

namespace guiharvest::dataset {

// Produces the SFT sample for step i (1-based) of a trajectory with up to n
// preceding steps as history, oldest first. i outside [1, |steps|] throws
// std::out_of_range; n must be >= 0.
SftSample render_sft_sample(const Trajectory& traj, int i, int n);

// Renders the sample's training prompt. Layout: the platform system prompt,
// then "Task: <task>", then for each history step "Observation: <image>"
// followed by its serialized response, then "Observation: <image>" for the
// current step. "<image>" is a literal placeholder; images attach in the
// same order the placeholders appear (history first, current last), so a
// sample carries at most n + 1 images.
std::string render_sft_prompt(const SftSample& sample);

// One export line per sample:
//   {"task", "platform", "n", "images", "prompt", "target"}
// where images lists refs in placeholder order and target is the wire-format
// serialization of the step's response.
std::string encode_sft_line(const SftSample& sample);

struct SftExport {
  std::uint64_t samples = 0;
  std::uint64_t trajectories = 0;
};

// Expands every step of every trajectory into a sample and appends canonical
// lines to `out`. A trajectory of k steps yields exactly k samples.
SftExport export_sft(const std::vector<Trajectory>& trajectories, int n,
                     const std::filesystem::path& out);

}  // namespace guiharvest::dataset
