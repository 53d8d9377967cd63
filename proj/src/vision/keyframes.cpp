#include "guiharvest/vision/keyframes.hpp"

#include <deque>

#include "guiharvest/errors.hpp"

namespace guiharvest::vision {

namespace {

struct SegmentWindow {
  double start_s = 0;
  double end_s = 0;
};

std::vector<SegmentWindow> segment_windows(const Transcript& transcript) {
  std::vector<SegmentWindow> out;
  for (const TranscriptSegment& seg : transcript.segments)
    out.push_back({seg.start_s, seg.end_s});
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].start_s < out[i - 1].end_s)
      throw EmptyAfterAlignment("transcript segments overlap");
  }
  return out;
}

}  // namespace

std::vector<Keyframe> extract_keyframes(FrameSource& source,
                                        const std::optional<Transcript>& transcript,
                                        const KeyframeParams& params) {
  const bool segmented = transcript.has_value() && !transcript->empty();
  std::vector<SegmentWindow> windows;
  if (segmented) windows = segment_windows(*transcript);

  std::vector<Keyframe> kept;
  // Pending emissions for the current segment; trimmed to keep_per_segment.
  std::deque<Keyframe> pending;
  int current_segment = -1;
  std::optional<SalientFrameDetector> detector;
  std::vector<std::uint8_t> small;
  int small_w = 0, small_h = 0;

  auto flush_segment = [&] {
    for (Keyframe& k : pending) kept.push_back(std::move(k));
    pending.clear();
    detector.reset();
  };

  while (auto frame = source.next()) {
    int segment = -1;
    if (segmented) {
      for (std::size_t s = 0; s < windows.size(); ++s) {
        if (frame->timestamp_s >= windows[s].start_s &&
            frame->timestamp_s < windows[s].end_s) {
          segment = static_cast<int>(s);
          break;
        }
      }
      if (segment < 0) continue;  // between segments
      if (segment != current_segment) {
        flush_segment();
        current_segment = segment;
      }
    } else if (current_segment < 0) {
      current_segment = 0;  // whole-video mode, one implicit segment
    }

    auto gray = to_grayscale(*frame);
    downscale_gray(gray, frame->width, frame->height, params.detect_long_side,
                   small, small_w, small_h);
    if (!detector)
      detector.emplace(small_w, small_h, params.saliency);

    if (detector->push(small)) {
      Keyframe k;
      k.frame_index = frame->index;
      k.timestamp_s = frame->timestamp_s;
      k.segment = segmented ? segment : -1;
      k.frame = std::move(*frame);
      if (segmented) {
        pending.push_back(std::move(k));
        while (static_cast<int>(pending.size()) > params.keep_per_segment)
          pending.pop_front();
      } else {
        kept.push_back(std::move(k));
      }
    }
  }
  flush_segment();
  return kept;
}

}  // namespace guiharvest::vision
