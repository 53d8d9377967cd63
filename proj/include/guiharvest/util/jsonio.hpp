#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "guiharvest/errors.hpp"

namespace guiharvest {

// Insertion-ordered JSON. All persisted records use this alias so key order
// is stable across encode/decode cycles.
using ojson = nlohmann::ordered_json;

namespace util {

// Rounds a coordinate to 4 decimal places. All stored and compared
// coordinates pass through this.
inline double quantize_coord(double v) {
  return std::round(v * 10000.0) / 10000.0;
}

// Fixed 4-decimal rendering, matching quantize_coord's grid.
inline std::string format_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline const ojson& require_field(const ojson& obj, const char* key,
                                  std::uint64_t line = 0) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaViolation(std::string("missing field \"") + key + "\"", line);
  return *it;
}

inline std::string require_string(const ojson& obj, const char* key,
                                  std::uint64_t line = 0) {
  const ojson& v = require_field(obj, key, line);
  if (!v.is_string())
    throw SchemaViolation(std::string("field \"") + key + "\" must be a string",
                          line);
  return v.get<std::string>();
}

inline double require_number(const ojson& obj, const char* key,
                             std::uint64_t line = 0) {
  const ojson& v = require_field(obj, key, line);
  if (!v.is_number())
    throw SchemaViolation(std::string("field \"") + key + "\" must be a number",
                          line);
  return v.get<double>();
}

}  // namespace util
}  // namespace guiharvest
