#include "guiharvest/dataset/dataset.hpp"

#include <fstream>

#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::dataset {

DatasetWriter::DatasetWriter(std::filesystem::path root, BlobLoader load)
    : root_(std::move(root)), load_(std::move(load)), store_(root_) {
  std::filesystem::create_directories(root_);
}

Trajectory DatasetWriter::add(const Trajectory& t) {
  if (finished_) throw std::logic_error("writer already finished");
  // Round-trip before any image lands in the store; a bad trajectory must
  // not leave partial output behind.
  decode_trajectory_line(encode_trajectory_line(t));
  Trajectory rewritten = t;
  for (TrajStep& step : rewritten.steps)
    step.observation = store_.put(load_(step.observation));
  lines_.push_back(encode_trajectory_line(rewritten));
  ++per_source_[std::string(source_name(t.source.source))];
  return rewritten;
}

DatasetManifest DatasetWriter::finish(const std::string& created_at) {
  if (finished_) throw std::logic_error("writer already finished");
  finished_ = true;

  std::string body;
  for (const std::string& line : lines_) {
    body += line;
    body += "\n";
  }
  util::write_file_atomic(root_ / "trajectories.jsonl", body);

  DatasetManifest m;
  m.created_at = created_at;
  m.trajectory_count = lines_.size();
  m.per_source_counts = per_source_;
  util::write_file_atomic(root_ / "manifest.json", encode_manifest(m));
  return m;
}

std::string encode_manifest(const DatasetManifest& m) {
  ojson j;
  j["version"] = m.version;
  j["created_at"] = m.created_at;
  j["trajectory_count"] = m.trajectory_count;
  j["image_root"] = m.image_root;
  ojson counts = ojson::object();
  for (const auto& [k, v] : m.per_source_counts) counts[k] = v;
  j["per_source_counts"] = counts;
  return canonical_dump(j) + "\n";
}

DatasetManifest decode_manifest(const std::string& text) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw SchemaViolation("manifest is not a JSON object");
  DatasetManifest m;
  m.version = util::require_string(j, "version");
  m.created_at = util::require_string(j, "created_at");
  m.trajectory_count = util::require_field(j, "trajectory_count").get<std::uint64_t>();
  m.image_root = util::require_string(j, "image_root");
  const ojson& counts = util::require_field(j, "per_source_counts");
  if (!counts.is_object())
    throw SchemaViolation("per_source_counts is not an object");
  for (const auto& [k, v] : counts.items())
    m.per_source_counts[k] = v.get<std::uint64_t>();
  return m;
}

void read_dataset(const std::filesystem::path& root,
                  const std::function<void(const Trajectory&)>& fn) {
  std::filesystem::path file = root / "trajectories.jsonl";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::string line;
  std::uint64_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    fn(decode_trajectory_line(line, number));
  }
}

std::vector<Trajectory> read_dataset(const std::filesystem::path& root) {
  std::vector<Trajectory> out;
  read_dataset(root, [&](const Trajectory& t) { out.push_back(t); });
  return out;
}

BlobLoader dataset_loader(const std::filesystem::path& root) {
  return [root](const std::string& ref) {
    return util::read_binary_file(root / ref);
  };
}

}  // namespace guiharvest::dataset
