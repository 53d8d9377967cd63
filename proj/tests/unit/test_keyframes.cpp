#include <doctest.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "guiharvest/errors.hpp"
#include "guiharvest/types.hpp"
#include "guiharvest/vision/frame_source.hpp"
#include "guiharvest/vision/keyframes.hpp"
#include "support/tmpdir.hpp"

using namespace guiharvest;
using namespace guiharvest::vision;

namespace {

Frame flat(int w, int h, int channels, std::uint8_t value) {
  Frame f;
  f.width = w;
  f.height = h;
  f.channels = channels;
  f.pixels.assign(static_cast<std::size_t>(w) * h * channels, value);
  return f;
}

// Flat-valued gray frames: `counts[i]` frames at `values[i]`, back to back.
std::vector<Frame> runs(int w, int h, const std::vector<int>& counts,
                        const std::vector<std::uint8_t>& values) {
  std::vector<Frame> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (int n = 0; n < counts[i]; ++n) out.push_back(flat(w, h, 1, values[i]));
  return out;
}

struct Clip {
  TempDir tmp{"keyframes"};
  std::filesystem::path path;

  explicit Clip(const std::vector<Frame>& frames, double fps = 10.0)
      : path(tmp / "clip.frames") {
    write_raw_stream(path, frames, fps);
  }
};

Transcript uniform_segments(int count, double seconds_each) {
  Transcript t;
  for (int s = 0; s < count; ++s)
    t.segments.push_back(
        {s * seconds_each, (s + 1) * seconds_each, "segment"});
  return t;
}

}  // namespace

TEST_CASE("one keyframe per transcript segment, fresh model each segment") {
  // Three 4 s segments at 10 fps, each with a hard cut at local frame 20.
  // The change event settles 10 frames later, so local emission is frame 30.
  std::vector<Frame> frames;
  for (int s = 0; s < 3; ++s) {
    auto seg = runs(8, 6, {20, 20},
                    {static_cast<std::uint8_t>(40 + 10 * s),
                     static_cast<std::uint8_t>(160 + 10 * s)});
    frames.insert(frames.end(), seg.begin(), seg.end());
  }
  Clip clip(frames);
  RawStreamSource src(clip.path);

  auto kept = extract_keyframes(src, uniform_segments(3, 4.0), {});
  REQUIRE(kept.size() == 3);
  for (int s = 0; s < 3; ++s) {
    CHECK(kept[s].frame_index == 40 * s + 30);
    CHECK(kept[s].timestamp_s == doctest::Approx((40 * s + 30) / 10.0));
    CHECK(kept[s].segment == s);
    CHECK(kept[s].frame.pixels[0] == 160 + 10 * s);
    CHECK(kept[s].frame.width == 8);
  }
}

TEST_CASE("keep_per_segment keeps the newest emissions") {
  // One 12 s segment with two cuts; emissions land at frames 40 and 85.
  auto frames = runs(8, 6, {30, 45, 45}, {30, 180, 70});
  Clip clip(frames);

  SUBCASE("default keeps only the last") {
    RawStreamSource src(clip.path);
    auto kept = extract_keyframes(src, uniform_segments(1, 12.0), {});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].frame_index == 85);
    CHECK(kept[0].segment == 0);
  }
  SUBCASE("keep_per_segment = 2 keeps both in order") {
    KeyframeParams params;
    params.keep_per_segment = 2;
    RawStreamSource src(clip.path);
    auto kept = extract_keyframes(src, uniform_segments(1, 12.0), params);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].frame_index == 40);
    CHECK(kept[1].frame_index == 85);
  }
}

TEST_CASE("whole-video mode keeps every salient frame") {
  auto frames = runs(8, 6, {30, 45, 45}, {30, 180, 70});
  Clip clip(frames);

  SUBCASE("no transcript") {
    RawStreamSource src(clip.path);
    auto kept = extract_keyframes(src, std::nullopt, {});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].frame_index == 40);
    CHECK(kept[1].frame_index == 85);
    CHECK(kept[0].segment == -1);
    CHECK(kept[1].segment == -1);
  }
  SUBCASE("empty transcript behaves like none") {
    RawStreamSource src(clip.path);
    auto kept = extract_keyframes(src, Transcript{}, {});
    CHECK(kept.size() == 2);
  }
}

TEST_CASE("frames between segments never feed the detector") {
  // Cut happens at frame 30, inside the gap between [0,2) and [6,8). Each
  // segment sees only flat frames, so nothing is salient.
  auto frames = runs(8, 6, {30, 50}, {50, 180});
  Clip clip(frames);
  RawStreamSource src(clip.path);

  Transcript t;
  t.segments.push_back({0.0, 2.0, "a"});
  t.segments.push_back({6.0, 8.0, "b"});
  auto kept = extract_keyframes(src, t, {});
  CHECK(kept.empty());
}

TEST_CASE("overlapping transcript segments are rejected") {
  auto frames = runs(8, 6, {10}, {50});
  Clip clip(frames);
  RawStreamSource src(clip.path);

  Transcript t;
  t.segments.push_back({0.0, 2.0, "a"});
  t.segments.push_back({1.5, 3.0, "b"});
  CHECK_THROWS_AS(extract_keyframes(src, t, {}), EmptyAfterAlignment);
}

TEST_CASE("detection runs on the downscaled copy, output keeps native size") {
  // Native 40x30 with a cut; detection at long side 10 sees the same flat
  // values, so emission timing is unchanged.
  auto frames = runs(40, 30, {20, 30}, {50, 200});
  Clip clip(frames);
  RawStreamSource src(clip.path);

  KeyframeParams params;
  params.detect_long_side = 10;
  auto kept = extract_keyframes(src, std::nullopt, params);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].frame_index == 30);
  CHECK(kept[0].frame.width == 40);
  CHECK(kept[0].frame.height == 30);
  CHECK(kept[0].frame.pixels.size() == 40u * 30u);
}

TEST_CASE("rgb input is converted before detection and kept as rgb") {
  std::vector<Frame> frames;
  for (int i = 0; i < 50; ++i)
    frames.push_back(flat(8, 6, 3, i < 20 ? 50 : 200));
  Clip clip(frames);
  RawStreamSource src(clip.path);

  auto kept = extract_keyframes(src, std::nullopt, {});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].frame_index == 30);
  CHECK(kept[0].frame.channels == 3);
}
