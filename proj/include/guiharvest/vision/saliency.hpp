#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "guiharvest/vision/frame.hpp"
#include "guiharvest/vision/gmm.hpp"

namespace guiharvest::vision {

struct SaliencyParams {
  GmmParams gmm;
  double on_ratio = 0.05;   // foreground share that opens an activity event
  double off_ratio = 0.01;  // share at or below which the event settles
  int burn_in = 15;         // frames ignored after (re)start while the model learns
  int settle_window = 10;   // max frames an event may run before it is forced shut
  int min_gap = 5;          // minimum frame distance between emissions
};

// Turns a frame stream into "the screen just finished changing" events.
//
// An activity event opens when the foreground ratio reaches on_ratio (after
// burn-in) and closes on the first frame where the ratio falls to off_ratio,
// or after settle_window frames regardless. The closing frame itself is
// emitted, the model is reset so stacked changes register as separate events,
// and burn-in restarts. Emissions closer than min_gap to the previous one are
// suppressed; an event still open at end of stream emits nothing.
class SalientFrameDetector {
 public:
  SalientFrameDetector(int width, int height, SaliencyParams params = {});

  // Feeds the next frame. Returns true when this frame is salient.
  bool push(std::span<const std::uint8_t> gray);

  int frames_seen() const { return global_t_; }
  void reset();

 private:
  SaliencyParams params_;
  GmmBackgroundModel model_;
  int global_t_ = 0;       // frames pushed since construction/reset
  int since_reset_ = 0;    // frames since the model was last reset
  int event_start_ = -1;   // since_reset_ value at event open, -1 when closed
  int last_emitted_ = -1;  // global index of the last emission
};

// Indices of salient frames in `frames`. All frames must share dimensions.
std::vector<int> detect_salient_frames(const std::vector<Frame>& frames,
                                       const SaliencyParams& params = {});

}  // namespace guiharvest::vision
