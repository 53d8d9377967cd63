#include "guiharvest/eval/eval.hpp"

#include <fstream>

#include "guiharvest/dataset/codec.hpp"
#include "guiharvest/errors.hpp"
#include "guiharvest/util/jsonio.hpp"
#include "guiharvest/util/strings.hpp"

namespace guiharvest::eval {

bool point_in_bbox(const Point& p, const BBox& box) {
  return p.x >= box.x1 && p.x <= box.x2 && p.y >= box.y1 && p.y <= box.y2;
}

bool type_correct(const EvalRecord& r) {
  return r.predicted.actions.front().kind == r.gold.action;
}

bool value_correct(const EvalRecord& r) {
  const std::optional<std::string>& got = r.predicted.actions.front().value;
  if (got.has_value() != r.gold.value.has_value()) return false;
  if (!got) return true;
  return util::iequals(util::trim(*got), util::trim(*r.gold.value));
}

bool grounding_correct(const EvalRecord& r) {
  const Position& pos = r.predicted.actions.front().position;
  if (r.gold.bbox) {
    const Point* p = std::get_if<Point>(&pos);
    return p && point_in_bbox(*p, *r.gold.bbox);
  }
  if (r.gold.bbox_pair) {
    const PointPair* pp = std::get_if<PointPair>(&pos);
    return pp && point_in_bbox(pp->from, r.gold.bbox_pair->first) &&
           point_in_bbox(pp->to, r.gold.bbox_pair->second);
  }
  return false;  // nothing to grade
}

bool step_correct(const EvalRecord& r) {
  if (!type_correct(r) || !value_correct(r)) return false;
  if (r.gold.bbox || r.gold.bbox_pair) return grounding_correct(r);
  return true;
}

EvalReport aggregate(const std::vector<EvalRecord>& records) {
  EvalReport report;
  for (const EvalRecord& r : records) {
    ++report.records;
    if (type_correct(r)) ++report.type_correct;
    if (r.gold.bbox || r.gold.bbox_pair) {
      ++report.grounding_total;
      if (grounding_correct(r)) ++report.grounding_correct;
    }
    if (step_correct(r)) ++report.step_correct;
  }
  return report;
}

namespace {

BBox decode_bbox(const ojson& j, std::uint64_t line) {
  if (!j.is_array() || j.size() != 4)
    throw SchemaViolation("bbox must be [x1, y1, x2, y2]", line);
  BBox b;
  double* fields[4] = {&b.x1, &b.y1, &b.x2, &b.y2};
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number())
      throw SchemaViolation("bbox coordinate must be a number", line);
    *fields[i] = util::quantize_coord(j[i].get<double>());
    if (*fields[i] < 0.0 || *fields[i] > 1.0)
      throw SchemaViolation("bbox coordinate outside [0, 1]", line);
  }
  if (b.x1 > b.x2 || b.y1 > b.y2)
    throw SchemaViolation("bbox corners out of order", line);
  return b;
}

ojson encode_bbox(const BBox& b) {
  return ojson::array({b.x1, b.y1, b.x2, b.y2});
}

}  // namespace

EvalRecord decode_eval_record(const std::string& text, std::uint64_t line) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw SchemaViolation("record is not a JSON object", line);

  EvalRecord r;
  const ojson& predicted = util::require_field(j, "predicted", line);
  r.predicted = dataset::decode_thought_action(predicted, line);

  const ojson& gold = util::require_field(j, "gold", line);
  if (!gold.is_object()) throw SchemaViolation("gold must be an object", line);
  std::string name = util::require_string(gold, "action", line);
  std::optional<ActionKind> kind = kind_from_name(name);
  if (!kind) throw SchemaViolation("unknown gold action \"" + name + "\"", line);
  r.gold.action = *kind;

  const ojson& value = util::require_field(gold, "value", line);
  if (value.is_string()) r.gold.value = value.get<std::string>();
  else if (!value.is_null())
    throw SchemaViolation("gold value must be a string or null", line);

  const ojson& bbox = util::require_field(gold, "bbox", line);
  if (!bbox.is_null()) r.gold.bbox = decode_bbox(bbox, line);

  const ojson& pair = util::require_field(gold, "bbox_pair", line);
  if (!pair.is_null()) {
    if (!pair.is_array() || pair.size() != 2)
      throw SchemaViolation("bbox_pair must hold two boxes", line);
    r.gold.bbox_pair = {decode_bbox(pair[0], line), decode_bbox(pair[1], line)};
  }
  if (r.gold.bbox && r.gold.bbox_pair)
    throw SchemaViolation("gold carries both bbox and bbox_pair", line);
  return r;
}

std::string encode_eval_record(const EvalRecord& r) {
  ojson gold;
  gold["action"] = std::string(kind_name(r.gold.action));
  gold["value"] = r.gold.value ? ojson(*r.gold.value) : ojson(nullptr);
  gold["bbox"] = r.gold.bbox ? encode_bbox(*r.gold.bbox) : ojson(nullptr);
  gold["bbox_pair"] =
      r.gold.bbox_pair
          ? ojson::array({encode_bbox(r.gold.bbox_pair->first),
                          encode_bbox(r.gold.bbox_pair->second)})
          : ojson(nullptr);
  ojson j;
  j["predicted"] = dataset::encode_thought_action(r.predicted);
  j["gold"] = gold;
  return dataset::canonical_dump(j);
}

std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<EvalRecord> out;
  std::string line;
  std::uint64_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    out.push_back(decode_eval_record(line, number));
  }
  return out;
}

std::string report_json(const EvalReport& report) {
  auto frac = [](std::uint64_t num, std::uint64_t den) {
    return den ? util::quantize_coord(static_cast<double>(num) /
                                      static_cast<double>(den))
               : 0.0;
  };
  ojson grounding;
  grounding["total"] = report.grounding_total;
  grounding["correct"] = report.grounding_correct;
  grounding["accuracy"] = frac(report.grounding_correct, report.grounding_total);

  ojson j;
  j["records"] = report.records;
  j["type_accuracy"] = frac(report.type_correct, report.records);
  j["grounding"] = grounding;
  j["step_accuracy"] = frac(report.step_correct, report.records);
  return dataset::canonical_dump(j) + "\n";
}

}  // namespace guiharvest::eval
