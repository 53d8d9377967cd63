#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "guiharvest/types.hpp"
#include "guiharvest/vision/frame_source.hpp"
#include "guiharvest/vision/saliency.hpp"

namespace guiharvest::vision {

struct KeyframeParams {
  SaliencyParams saliency;
  // Salient frames kept per transcript segment, newest last. The whole-video
  // fallback (no transcript) keeps every salient frame instead.
  int keep_per_segment = 1;
  // Detection runs on a downscaled copy; emitted frames keep native size.
  int detect_long_side = 320;
};

struct Keyframe {
  int frame_index = 0;
  double timestamp_s = 0;
  int segment = -1;  // transcript segment, -1 in whole-video mode
  Frame frame;       // native resolution
};

// Runs change detection inside each transcript segment with a fresh model per
// segment. Frame f belongs to segment [start, end) by timestamp. Segments
// must be sorted and non-overlapping; frames outside every segment are
// skipped. Without a transcript the whole stream is one segment and every
// salient frame is kept. Single pass over the source.
std::vector<Keyframe> extract_keyframes(FrameSource& source,
                                        const std::optional<Transcript>& transcript,
                                        const KeyframeParams& params);

}  // namespace guiharvest::vision
