#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "guiharvest/actions.hpp"

namespace guiharvest::eval {

// Normalized screen-space box, corners inclusive.
struct BBox {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  bool operator==(const BBox&) const = default;
};

bool point_in_bbox(const Point& p, const BBox& box);

// Ground truth for one evaluation step. bbox constrains single-point
// actions, bbox_pair the two endpoints of DRAG or SWIPE; both absent means
// the step has no grounding target.
struct GoldAnnotation {
  ActionKind action = ActionKind::Click;
  std::optional<std::string> value;
  std::optional<BBox> bbox;
  std::optional<std::pair<BBox, BBox>> bbox_pair;
  bool operator==(const GoldAnnotation&) const = default;
};

struct EvalRecord {
  ThoughtAction predicted;
  GoldAnnotation gold;
  bool operator==(const EvalRecord&) const = default;
};

// Scoring uses the first predicted action only.
bool type_correct(const EvalRecord& r);

// Values compare trimmed and case-insensitive; both absent also matches.
bool value_correct(const EvalRecord& r);

// Inclusive containment of the predicted point(s) in the gold box(es).
// False when the prediction lacks the position shape the gold demands.
// Records without a gold box are not gradeable for grounding.
bool grounding_correct(const EvalRecord& r);

// Type and value correct, and grounding correct whenever the gold carries a
// box.
bool step_correct(const EvalRecord& r);

struct EvalReport {
  std::uint64_t records = 0;
  std::uint64_t type_correct = 0;
  std::uint64_t grounding_total = 0;  // records with a gold box
  std::uint64_t grounding_correct = 0;
  std::uint64_t step_correct = 0;
  bool operator==(const EvalReport&) const = default;
};

EvalReport aggregate(const std::vector<EvalRecord>& records);

// JSONL, one record per line:
//   {"predicted": {"thought", "actions"}, "gold": {"action", "value",
//    "bbox", "bbox_pair"}}
// bbox is [x1, y1, x2, y2], bbox_pair a pair of those, null when absent.
// Schema errors carry the 1-based line number.
std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path);
EvalRecord decode_eval_record(const std::string& text, std::uint64_t line = 0);
std::string encode_eval_record(const EvalRecord& r);

// Accuracies at 4 decimals: type and step over all records, grounding over
// grounding_total. Empty denominators yield 0.
std::string report_json(const EvalReport& report);

}  // namespace guiharvest::eval
