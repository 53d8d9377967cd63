#include "corpus.hpp"

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/eval/eval.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/vision/frame.hpp"
#include "guiharvest/vision/frame_source.hpp"
#include "guiharvest/vision/image_io.hpp"

namespace fixture {

namespace {

namespace fs = std::filesystem;
using guiharvest::ojson;
using guiharvest::vision::Frame;

struct ArticleSpec {
  const char* id;
  const char* title;
  const char* goal;
  std::vector<const char*> steps;
  int screenshots;
  int photos;
  const char* extra;  // marker sentence appended to the body, or nullptr
};

enum class TranscriptMode { Crawled, Audio, None };

struct VideoSpec {
  const char* id;
  const char* title;
  const char* goal;
  std::vector<const char*> steps;
  int segments;  // 0: whole-video layout with two cuts
  TranscriptMode transcript;
  const char* extra;
};

// 20 articles. Markers: "casserole" fails the content filter, "on your
// phone" classifies mobile, "solder" classifies other, "flaky-extract"
// makes the first extraction reply violate the schema, judge drop words
// (confusing, blurry, slowly, partially) live in the GOAL line.
const std::vector<ArticleSpec> kArticles = {
    {"art01", "Adjust editor font size", "Change the font size in the writer preferences.",
     {"click the preferences button at (0.1200, 0.0800)",
      "type \"14\" into the font size field at (0.4500, 0.3200)",
      "finish the task"},
     3, 1, nullptr},
    {"art02", "Set custom page margins", "Set custom page margins for the report layout.",
     {"click the layout menu at (0.1000, 0.0500)",
      "scroll down in the page list at (0.5000, 0.6000)",
      "drag the margin handle from (0.2000, 0.3000) to (0.2000, 0.7000)",
      "finish the task"},
     5, 0, nullptr},
    {"art03", "Upload a document for review", "Upload a document and confirm the review request.",
     {"click the upload button at (0.5000, 0.1000)",
      "wait for the upload to finish",
      "click the confirm button at (0.6000, 0.7000)",
      "finish the task"},
     4, 0, nullptr},
    {"art04", "Weeknight casserole ideas", "Bake a comforting dish for the week.",
     {"click the oven dial at (0.5000, 0.5000)", "finish the task"},
     1, 1, "Try this casserole with seasonal vegetables."},
    {"art05", "Crop a photo without quality loss", "Crop an image to a fixed aspect ratio.",
     {"right-click the image canvas at (0.3000, 0.4000)",
      "hover over the crop menu entry at (0.3500, 0.4500)",
      "click the crop option at (0.4000, 0.5000)",
      "press keys ctrl+s",
      "finish the task"},
     5, 2, nullptr},
    {"art06", "Resize images in bulk", "Resize a batch of images to a fixed width.",
     {"click the resize entry at (0.2000, 0.2000)",
      "scroll down in the options list at (0.5000, 0.5000)",
      "type \"800\" into the width field at (0.4000, 0.3000)",
      "improvise freely for this step"},
     4, 0, nullptr},
    {"art07", "Export slides as a handout", "Export the slide deck as a printable handout.",
     {"click the export button at (0.8000, 0.1000)", "finish the task"},
     2, 0, nullptr},
    {"art08", "Tame the export dialog", "Fix the confusing export dialog settings.",
     {"click the export menu at (0.7000, 0.1500)",
      "double-click the preset entry at (0.5000, 0.5000)",
      "finish the task"},
     3, 0, nullptr},
    {"art09", "Show the layout grid", "Turn on the layout grid and align the ruler.",
     {"click the settings icon at (0.9000, 0.0500)",
      "type \"grid\" into the search field at (0.3000, 0.1000)",
      "scroll down in the results at (0.5000, 0.5000)",
      "drag the ruler from (0.1000, 0.1000) to (0.9000, 0.1000)",
      "press keys ctrl+shift+p",
      "finish the task"},
     6, 0, nullptr},
    {"art10", "Slow-cooker casserole basics", "Prepare a slow-cooked family dinner.",
     {"click the timer knob at (0.5000, 0.5000)", "finish the task"},
     1, 2, "A casserole rewards patience more than precision."},
    {"art11", "Add a signature in the mail app", "Add a signature to outgoing mail in the phone app.",
     {"tap the profile icon at (0.9000, 0.1000)",
      "type \"weekly digest\" into the signature field at (0.5000, 0.4000)",
      "finish the task"},
     3, 1, "Works the same on your phone and tablet."},
    {"art12", "Free up storage space", "Clear cached data slowly app by app.",
     {"tap the storage entry at (0.5000, 0.3000)",
      "swipe from (0.5000, 0.8000) to (0.5000, 0.2000)",
      "finish the task"},
     3, 0, "All screenshots taken on your phone."},
    {"art13", "Grant camera access", "Enable the camera permission for the scanner app.",
     {"tap the permissions row at (0.5000, 0.2500)",
      "tap the camera toggle at (0.8000, 0.2500)",
      "ask the user to approve the system dialog",
      "finish the task"},
     4, 0, "Screens recorded on your phone."},
    {"art14", "Force an account sync", "Trigger a manual account sync.",
     {"tap the accounts entry at (0.5000, 0.3500)",
      "tap the sync button at (0.5000, 0.2000) then wait for the spinner",
      "finish the task"},
     3, 0, "Menus may differ slightly on your phone."},
    {"art15", "Share a photo from the gallery", "Share a gallery photo with another app.",
     {"long press the photo tile at (0.3000, 0.6000) holding \"1200\"",
      "tap the share option at (0.7000, 0.2000)",
      "go back",
      "finish the task"},
     4, 1, "The gallery looks identical on your phone."},
    {"art16", "One-pan casserole cleanup", "Cook and clean up a one-pan meal.",
     {"click the burner control at (0.5000, 0.5000)", "finish the task"},
     2, 0, "This casserole needs just one pan."},
    {"art17", "Import bookmarks", "Import bookmarks, partially migrating old folders.",
     {"click the import entry at (0.2000, 0.1000)",
      "click the source row at (0.4000, 0.4000)",
      "finish the task"},
     3, 0, nullptr},
    {"art18", "Replace a worn key switch", "Replace a worn key switch on the keyboard.",
     {"click the parts list at (0.5000, 0.5000)", "finish the task"},
     2, 0, "You will need to solder the new switch in place."},
    {"art19", "Switch to the dark theme", "Switch the editor to the dark theme.",
     {"click the theme menu at (0.1500, 0.1000)",
      "type \"dark\" into the theme search at (0.5000, 0.2000)",
      "finish the task"},
     3, 0, "Some mirrors label this page flaky-extract for caching reasons."},
    {"art20", "Print double-sided", "Print a document double-sided.",
     {"click the print entry at (0.1000, 0.9000)", "finish the task"},
     0, 3, nullptr},
};

// 10 videos. Each transcript segment spans 4 s at 10 fps (40 frames) with a
// hard cut 2 s in; the whole-video layout (segments = 0) is 80 frames with
// cuts at frames 20 and 55.
const std::vector<VideoSpec> kVideos = {
    {"vid01", "Zoom the document view", "Set the document zoom to a fixed level.",
     {"click the view menu at (0.2000, 0.0500)",
      "type \"150\" into the zoom field at (0.5000, 0.5000)",
      "finish the task"},
     3, TranscriptMode::Crawled, nullptr},
    {"vid02", "Record a macro", "Record and save an editing macro.",
     {"click the tools menu at (0.3000, 0.0500)",
      "scroll down in the macro list at (0.5000, 0.5000)",
      "drag the toolbar from (0.5000, 0.1000) to (0.5000, 0.9000)",
      "finish the task"},
     4, TranscriptMode::Crawled, nullptr},
    {"vid03", "Open the shortcut reference", "Open the built-in shortcut reference.",
     {"click the help menu at (0.9500, 0.0500)", "finish the task"},
     3, TranscriptMode::Crawled, nullptr},
    {"vid04", "Fill a column down", "Copy a formula down a spreadsheet column.",
     {"click the fill handle at (0.4000, 0.6000)",
      "press keys ctrl+d",
      "finish the task"},
     3, TranscriptMode::Audio, nullptr},
    {"vid05", "Casserole night, start to finish", "Cook a casserole from scratch.",
     {"click the recipe card at (0.5000, 0.5000)"},
     1, TranscriptMode::Crawled, "A casserole video for the weekend."},
    {"vid06", "Style a title slide", "Apply a template to the title slide.",
     {"click the slide menu at (0.2000, 0.0500)",
      "type \"Title\" into the header box at (0.5000, 0.2000)",
      "click the apply button at (0.7000, 0.8000)",
      "finish the task"},
     2, TranscriptMode::Audio, nullptr},
    {"vid07", "Start a screen recording", "Start and stop a screen recording.",
     {"click the record button at (0.1000, 0.9000)", "finish the task"},
     0, TranscriptMode::None, nullptr},
    {"vid08", "Blur a photo background", "Blur the background of a portrait.",
     {"click the filter icon at (0.6000, 0.1000)",
      "hover over the blur entry at (0.6500, 0.3000)",
      "finish the task"},
     3, TranscriptMode::Audio, nullptr},
    {"vid09", "Trim a clip on the timeline", "Trim a blurry clip on the timeline.",
     {"click the timeline at (0.5000, 0.8000)", "finish the task"},
     2, TranscriptMode::Crawled, nullptr},
    {"vid10", "Scan a document with the camera", "Scan a paper document with the camera app.",
     {"tap the camera icon at (0.5000, 0.9000)",
      "swipe from (0.8000, 0.5000) to (0.2000, 0.5000)",
      "finish the task"},
     3, TranscriptMode::Audio, "Recorded on your phone with the stock camera."},
};

std::string body_text(const char* goal, const std::vector<const char*>& steps,
                      const char* extra) {
  std::string b = "This walkthrough shows every screen along the way.\n";
  b += std::string("GOAL: ") + goal + "\n";
  for (std::size_t i = 0; i < steps.size(); ++i)
    b += "Step " + std::to_string(i + 1) + ": " + steps[i] + "\n";
  if (extra) b += std::string(extra) + "\n";
  return b;
}

// Screenshots carry a bright top-left pixel (>= 128), photos a dark one.
Frame article_image(int art_idx, int img_idx, bool screenshot, bool color) {
  Frame f;
  f.width = 32;
  f.height = 24;
  f.channels = color ? 3 : 1;
  f.pixels.resize(static_cast<std::size_t>(f.width) * f.height * f.channels);
  int base = screenshot ? 160 : 32;
  std::size_t at = 0;
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x)
      for (int c = 0; c < f.channels; ++c)
        f.pixels[at++] = static_cast<std::uint8_t>(
            base + (x * 7 + y * 5 + art_idx * 11 + img_idx * 17 + c * 3) % 64);
  for (int c = 0; c < f.channels; ++c)
    f.pixels[c] = screenshot ? 220 : 40;
  return f;
}

Frame constant_frame(int width, int height, std::uint8_t value) {
  Frame f;
  f.width = width;
  f.height = height;
  f.channels = 1;
  f.pixels.assign(static_cast<std::size_t>(width) * height, value);
  return f;
}

std::vector<Frame> video_frames(int video_idx, int segments) {
  std::vector<Frame> frames;
  if (segments == 0) {
    // Whole-video layout: static, cut, static, cut, static.
    for (int i = 0; i < 80; ++i) {
      std::uint8_t v = i < 20 ? 50 : i < 55 ? 150 : 60;
      frames.push_back(constant_frame(48, 36, v));
    }
    return frames;
  }
  for (int s = 0; s < segments; ++s) {
    std::uint8_t pre = static_cast<std::uint8_t>(40 + 6 * video_idx + 4 * s);
    std::uint8_t post = static_cast<std::uint8_t>(pre + 100);
    for (int i = 0; i < 40; ++i)
      frames.push_back(constant_frame(48, 36, i < 20 ? pre : post));
  }
  return frames;
}

ojson transcript_json(int segments) {
  ojson arr = ojson::array();
  for (int s = 0; s < segments; ++s) {
    ojson seg;
    seg["start"] = 4.0 * s;
    seg["end"] = 4.0 * s + 4.0;
    seg["text"] = "Part " + std::to_string(s + 1) + " of the walkthrough.";
    arr.push_back(seg);
  }
  return arr;
}

void write_article(const fs::path& root, const ArticleSpec& spec, int idx) {
  fs::path dir = root / spec.id;
  ojson j;
  j["modality"] = "article";
  j["title"] = spec.title;
  j["body"] = body_text(spec.goal, spec.steps, spec.extra);
  j["transcript"] = nullptr;
  j["audio"] = nullptr;
  ojson images = ojson::array();
  int file = 0;
  auto add_image = [&](bool screenshot) {
    bool color = file % 2 == 1;
    char name[32];
    std::snprintf(name, sizeof name, "images/img%02d.%s", file + 1,
                  color ? "ppm" : "pgm");
    guiharvest::vision::write_pnm(
        dir / name, article_image(idx, file, screenshot, color));
    images.push_back(name);
    ++file;
  };
  for (int i = 0; i < spec.screenshots; ++i) add_image(true);
  for (int i = 0; i < spec.photos; ++i) add_image(false);
  j["images"] = images;
  j["frames"] = nullptr;
  guiharvest::util::write_file_atomic(dir / "tutorial.json", j.dump(2) + "\n");
}

void write_video(const fs::path& root, const VideoSpec& spec, int idx) {
  fs::path dir = root / spec.id;
  std::vector<Frame> frames = video_frames(idx, spec.segments);
  fs::create_directories(dir);
  guiharvest::vision::write_raw_stream(dir / "frames.frames", frames, 10.0);

  ojson j;
  j["modality"] = "video";
  j["title"] = spec.title;
  j["body"] = body_text(spec.goal, spec.steps, spec.extra);
  int segment_count = spec.segments == 0 ? 0 : spec.segments;
  if (spec.transcript == TranscriptMode::Crawled)
    j["transcript"] = transcript_json(segment_count);
  else
    j["transcript"] = nullptr;
  if (spec.transcript == TranscriptMode::Audio) {
    guiharvest::util::write_file_atomic(
        dir / "audio.json", transcript_json(segment_count).dump() + "\n");
    j["audio"] = "audio.json";
  } else {
    j["audio"] = nullptr;
  }
  j["images"] = ojson::array();
  ojson f;
  f["path"] = "frames.frames";
  f["fps"] = 10.0;
  f["count"] = frames.size();
  j["frames"] = f;
  guiharvest::util::write_file_atomic(dir / "tutorial.json", j.dump(2) + "\n");
}

}  // namespace

void write_corpus(const fs::path& dir) {
  fs::create_directories(dir);
  int idx = 0;
  for (const ArticleSpec& a : kArticles) write_article(dir, a, ++idx);
  idx = 0;
  for (const VideoSpec& v : kVideos) write_video(dir, v, ++idx);

  ojson keywords;
  keywords["writer change font size"] = {"vid01", "vid02", "vid03", "vid04",
                                         "vid05", "art01", "art02", "art03",
                                         "art04"};
  keywords["photos crop an image"] = {"vid06", "vid07", "vid08", "art05",
                                      "art06", "art07", "art08", "art09",
                                      "art10"};
  keywords["mailer add a signature"] = {"vid09", "vid10", "art11", "art12",
                                        "art13", "art14", "art15", "art16"};
  keywords["writer change font size tutorial"] = {"art17", "art18", "vid01",
                                                  "art01"};
  keywords["photos crop an image guide"] = {"art19", "art20", "vid06",
                                            "art05", "badid"};

  ojson tutorials;
  for (const ArticleSpec& a : kArticles) tutorials[a.id] = {{"dir", a.id}};
  for (const VideoSpec& v : kVideos) tutorials[v.id] = {{"dir", v.id}};
  tutorials["badid"] = {{"dir", "badid"}, {"fail_download", true}};

  ojson manifest;
  manifest["keywords"] = keywords;
  manifest["tutorials"] = tutorials;
  guiharvest::util::write_file_atomic(dir / "manifest.json",
                                      manifest.dump(2) + "\n");
}

void write_eval_records(const fs::path& file) {
  using guiharvest::Action;
  using guiharvest::ActionKind;
  using guiharvest::Point;
  using guiharvest::PointPair;
  using guiharvest::ThoughtAction;
  namespace ev = guiharvest::eval;

  auto predicted = [](Action a) {
    ThoughtAction ta;
    ta.thought = "Stepping through the task.";
    ta.actions.push_back(std::move(a));
    return ta;
  };
  auto click = [](double x, double y) {
    Action a;
    a.kind = ActionKind::Click;
    a.position = Point{x, y};
    return a;
  };
  auto input = [](const char* v, double x, double y) {
    Action a;
    a.kind = ActionKind::Input;
    a.value = v;
    a.position = Point{x, y};
    return a;
  };

  std::vector<ev::EvalRecord> records;
  // Fully correct click.
  records.push_back({predicted(click(0.5, 0.5)),
                     {ActionKind::Click, std::nullopt,
                      ev::BBox{0.4, 0.4, 0.6, 0.6}, std::nullopt}});
  // Right kind, point outside the box.
  records.push_back({predicted(click(0.9, 0.9)),
                     {ActionKind::Click, std::nullopt,
                      ev::BBox{0.4, 0.4, 0.6, 0.6}, std::nullopt}});
  // Fully correct input.
  records.push_back({predicted(input("hello", 0.2, 0.2)),
                     {ActionKind::Input, "hello",
                      ev::BBox{0.1, 0.1, 0.3, 0.3}, std::nullopt}});
  // Wrong value, in the box.
  records.push_back({predicted(input("hello", 0.2, 0.2)),
                     {ActionKind::Input, "world",
                      ev::BBox{0.1, 0.1, 0.3, 0.3}, std::nullopt}});
  // Wrong kind for a gesture gold.
  {
    Action drag;
    drag.kind = ActionKind::Drag;
    drag.position = PointPair{{0.2, 0.2}, {0.8, 0.8}};
    records.push_back(
        {predicted(drag),
         {ActionKind::Swipe, std::nullopt, std::nullopt,
          std::make_pair(ev::BBox{0.1, 0.1, 0.3, 0.3},
                         ev::BBox{0.7, 0.7, 0.9, 0.9})}});
  }
  // Correct, nothing to ground.
  {
    Action finish;
    finish.kind = ActionKind::Finish;
    records.push_back({predicted(finish),
                       {ActionKind::Finish, std::nullopt, std::nullopt,
                        std::nullopt}});
  }

  std::string body;
  for (const ev::EvalRecord& r : records)
    body += ev::encode_eval_record(r) + "\n";
  guiharvest::util::write_file_atomic(file, body);
}

std::string config_text(const std::string& mode, const std::string& base_url,
                        const fs::path& manifest, const fs::path& fixtures) {
  ojson services;
  services["mode"] = mode;
  services["base_url"] = base_url;
  services["timeout_s"] = 30.0;
  services["fixtures"] = fixtures.string();
  ojson j;
  j["seeds"] = ojson::array({ojson{{"app_or_web", "writer"}, {"task", "change font size"}},
                             ojson{{"app_or_web", "photos"}, {"task", "crop an image"}},
                             ojson{{"app_or_web", "mailer"}, {"task", "add a signature"}}});
  j["keyword_target"] = 5;
  j["adapter"] = "fixture";
  j["manifest"] = manifest.string();
  j["per_keyword_limit"] = 10;
  j["crawl_workers"] = 4;
  j["max_steps"] = 8;
  j["history_window"] = 2;
  j["sft_history"] = 2;
  j["seed"] = 20240601;
  j["created_at"] = "2024-06-01T00:00:00Z";
  j["services"] = services;
  return j.dump(2) + "\n";
}

}  // namespace fixture
