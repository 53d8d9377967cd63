#include "guiharvest/crawl/fixture_adapter.hpp"

#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::crawl {

namespace fs = std::filesystem;

FixtureAdapter::FixtureAdapter(const fs::path& manifest_path)
    : root_(manifest_path.parent_path()) {
  ojson manifest = ojson::parse(util::read_text_file(manifest_path));
  for (auto it = manifest.at("keywords").begin();
       it != manifest.at("keywords").end(); ++it) {
    std::vector<std::string>& ids = keywords_[it.key()];
    for (const ojson& id : it.value()) ids.push_back(id.get<std::string>());
  }
  for (auto it = manifest.at("tutorials").begin();
       it != manifest.at("tutorials").end(); ++it) {
    Entry entry;
    entry.dir = it.value().at("dir").get<std::string>();
    if (auto fail = it.value().find("fail_download"); fail != it.value().end())
      entry.fail_download = fail->get<bool>();
    tutorials_[it.key()] = std::move(entry);
  }
}

std::vector<SourceId> FixtureAdapter::search(const std::string& keyword,
                                             int limit) {
  std::vector<SourceId> out;
  auto it = keywords_.find(keyword);
  if (it == keywords_.end()) return out;
  for (const std::string& id : it->second) {
    if (limit > 0 && static_cast<int>(out.size()) >= limit) break;
    out.push_back(canonicalize_source_id(id, Source::Fixture));
  }
  return out;
}

RawTutorial FixtureAdapter::download(const SourceId& id) {
  auto it = tutorials_.find(id.native_id);
  if (it == tutorials_.end())
    throw UnrecognizedSource("fixture corpus has no tutorial " + id.native_id);
  if (it->second.fail_download)
    throw ServiceUnavailable("simulated download failure for " + id.str());

  const std::string& dir = it->second.dir;
  ojson j = ojson::parse(util::read_text_file(root_ / dir / "tutorial.json"));

  RawTutorial t;
  t.source = id;
  auto modality = modality_from_name(j.at("modality").get<std::string>());
  if (!modality) throw SchemaViolation("bad modality in " + dir);
  t.modality = *modality;
  t.text.title = j.at("title").get<std::string>();
  t.text.body = j.at("body").get<std::string>();
  if (!j.at("transcript").is_null())
    t.text.transcript = dataset::decode_transcript(j.at("transcript"));

  auto rebase = [&](const std::string& rel) { return dir + "/" + rel; };
  if (!j.at("audio").is_null())
    t.audio = rebase(j.at("audio").get<std::string>());
  for (const ojson& image : j.at("images"))
    t.visual.images.push_back(rebase(image.get<std::string>()));
  if (!j.at("frames").is_null()) {
    const ojson& frames = j.at("frames");
    FrameStreamRef ref;
    ref.path = rebase(frames.at("path").get<std::string>());
    ref.fps = frames.at("fps").get<double>();
    ref.frame_count = frames.at("count").get<std::uint64_t>();
    t.visual.frames = std::move(ref);
  }
  return t;
}

}  // namespace guiharvest::crawl
