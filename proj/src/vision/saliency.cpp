#include "guiharvest/vision/saliency.hpp"

#include "guiharvest/errors.hpp"

namespace guiharvest::vision {

SalientFrameDetector::SalientFrameDetector(int width, int height,
                                           SaliencyParams params)
    : params_(params), model_(width, height, params.gmm) {}

void SalientFrameDetector::reset() {
  model_.reset();
  global_t_ = 0;
  since_reset_ = 0;
  event_start_ = -1;
  last_emitted_ = -1;
}

bool SalientFrameDetector::push(std::span<const std::uint8_t> gray) {
  double ratio = foreground_ratio(model_.update(gray));
  int t = since_reset_;
  ++since_reset_;
  int global = global_t_;
  ++global_t_;

  if (event_start_ < 0) {
    if (t >= params_.burn_in && ratio >= params_.on_ratio) event_start_ = t;
    return false;
  }

  bool settled = ratio <= params_.off_ratio;
  bool forced = t - event_start_ >= params_.settle_window;
  if (!settled && !forced) return false;

  // The event closes on this frame. Reset the model so the next change is
  // measured against the new screen, not a blend of old and new.
  event_start_ = -1;
  model_.reset();
  since_reset_ = 0;

  if (last_emitted_ >= 0 && global - last_emitted_ < params_.min_gap)
    return false;
  last_emitted_ = global;
  return true;
}

std::vector<int> detect_salient_frames(const std::vector<Frame>& frames,
                                       const SaliencyParams& params) {
  std::vector<int> out;
  if (frames.empty()) return out;
  SalientFrameDetector detector(frames[0].width, frames[0].height, params);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    if (f.width != frames[0].width || f.height != frames[0].height)
      throw DimensionMismatch("frame geometry changes mid-stream");
    if (detector.push(to_grayscale(f))) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace guiharvest::vision
