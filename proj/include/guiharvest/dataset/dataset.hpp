#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "guiharvest/dataset/store.hpp"
#include "guiharvest/types.hpp"

namespace guiharvest::dataset {

// Dataset directory layout:
//   trajectories.jsonl   one canonical line per trajectory
//   manifest.json        counts and provenance of the export
//   images/              content-addressed observation blobs
struct DatasetManifest {
  std::string version = "1";
  std::string created_at;  // RFC 3339, supplied by the caller
  std::uint64_t trajectory_count = 0;
  std::string image_root = "images";
  std::map<std::string, std::uint64_t> per_source_counts;  // by source kind
};

// Accumulates trajectories into a dataset directory. Observation refs are
// resolved through `load` and rewritten to image-store refs, so the written
// dataset is self-contained regardless of where the inputs lived.
class DatasetWriter {
 public:
  DatasetWriter(std::filesystem::path root, BlobLoader load);

  // Validates, ingests observations, appends one canonical line. Returns the
  // rewritten trajectory.
  Trajectory add(const Trajectory& t);

  // Writes trajectories.jsonl and manifest.json. Must be called exactly once.
  DatasetManifest finish(const std::string& created_at);

  const ImageStore& store() const { return store_; }

 private:
  std::filesystem::path root_;
  BlobLoader load_;
  ImageStore store_;
  std::vector<std::string> lines_;
  std::map<std::string, std::uint64_t> per_source_;
  bool finished_ = false;
};

std::string encode_manifest(const DatasetManifest& m);
DatasetManifest decode_manifest(const std::string& text);

// Reads trajectories.jsonl under `root`, validating every line. Schema
// errors carry the 1-based line number. Blank lines are rejected.
std::vector<Trajectory> read_dataset(const std::filesystem::path& root);

// Streaming variant: `fn` sees each trajectory in file order.
void read_dataset(const std::filesystem::path& root,
                  const std::function<void(const Trajectory&)>& fn);

// Loader over a dataset's image store, for consumers of read_dataset.
BlobLoader dataset_loader(const std::filesystem::path& root);

}  // namespace guiharvest::dataset
