#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "guiharvest/actions.hpp"
#include "guiharvest/source_id.hpp"

namespace guiharvest {

// Relative path to an image file, resolved against the owning directory
// (work dir for intermediate stages, dataset root for exported data).
using ImageRef = std::string;

// Resolves a relative ref to file bytes. Stages bind this to their root
// directory; tests substitute in-memory stores.
using BlobLoader = std::function<std::vector<std::uint8_t>(const std::string&)>;

enum class Platform { Desktop, Mobile, Other };

std::string_view platform_name(Platform p);                 // "desktop", ...
std::optional<Platform> platform_from_name(std::string_view name);

struct TranscriptSegment {
  double start_s = 0;
  double end_s = 0;
  std::string text;
  bool operator==(const TranscriptSegment&) const = default;
};

struct Transcript {
  std::vector<TranscriptSegment> segments;
  bool empty() const { return segments.empty(); }
  bool operator==(const Transcript&) const = default;
};

enum class Modality { Video, Article };

std::string_view modality_name(Modality m);
std::optional<Modality> modality_from_name(std::string_view name);

struct TextBundle {
  std::string title;
  std::string body;                     // article body or video description
  std::optional<Transcript> transcript; // present when captions were crawled
  bool operator==(const TextBundle&) const = default;
};

// Reference to a directory of numbered frame images or to a packed frame
// stream file, plus enough metadata to iterate it.
struct FrameStreamRef {
  std::string path;  // directory or .frames file, relative to the corpus root
  double fps = 0;
  std::uint64_t frame_count = 0;
  bool operator==(const FrameStreamRef&) const = default;
};

struct VisualBundle {
  std::vector<ImageRef> images;          // article illustrations, in order
  std::optional<FrameStreamRef> frames;  // video frames
  bool operator==(const VisualBundle&) const = default;
};

// Crawl output: one tutorial as fetched, before any model touches it.
struct RawTutorial {
  SourceId source;
  Modality modality = Modality::Article;
  TextBundle text;
  VisualBundle visual;
  std::optional<std::string> audio;  // audio file for transcription
  bool operator==(const RawTutorial&) const = default;
};

// One tutorial step after processing: the observation image paired with the
// rough natural-language description used as the agent query.
struct StepPair {
  int index = 0;  // 1-based
  ImageRef observation;
  std::string rough_description;
  bool operator==(const StepPair&) const = default;
};

struct ProcessedTutorial {
  SourceId source;
  std::string task;
  Platform platform = Platform::Desktop;
  std::vector<StepPair> steps;
  bool operator==(const ProcessedTutorial&) const = default;
};

// One step of a finished trajectory.
struct TrajStep {
  ImageRef observation;
  std::string rough_description;
  ThoughtAction response;
  bool operator==(const TrajStep&) const = default;
};

struct Trajectory {
  std::string id;  // "<source>#<ordinal>", e.g. "youtube:abc123#0"
  std::string task;
  Platform platform = Platform::Desktop;
  SourceId source;
  std::vector<TrajStep> steps;
  bool operator==(const Trajectory&) const = default;
};

// Supervised fine-tuning sample: the i-th step of a trajectory with up to n
// preceding steps as context.
struct SftSample {
  std::string task;
  Platform platform = Platform::Desktop;
  struct HistoryEntry {
    ImageRef observation;
    ThoughtAction response;
    bool operator==(const HistoryEntry&) const = default;
  };
  std::vector<HistoryEntry> history;  // oldest first, size <= n
  ImageRef current_observation;
  ThoughtAction target;
  int n = 2;
  bool operator==(const SftSample&) const = default;
};

}  // namespace guiharvest
