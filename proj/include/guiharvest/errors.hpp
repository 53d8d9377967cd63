#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace guiharvest {

// Base class for all library errors so callers can catch one type at the
// pipeline boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A source reference that no adapter rule recognizes.
class UnrecognizedSource : public Error {
 public:
  using Error::Error;
};

// Transport-level failure after retries are exhausted, or a non-retriable
// HTTP error from a model service.
class ServiceUnavailable : public Error {
 public:
  using Error::Error;
};

// The service answered but the payload cannot be decoded.
class MalformedResponse : public Error {
 public:
  using Error::Error;
};

// A persisted record violates the on-disk schema. `line` is 1-based when the
// record came from a line-delimited file, 0 otherwise.
class SchemaViolation : public Error {
 public:
  SchemaViolation(const std::string& msg, std::uint64_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::uint64_t line() const { return line_; }

 private:
  std::uint64_t line_;
};

// Frame dimensions disagree with the model or stream header.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A later pipeline stage reports more survivors than an earlier one.
class MonotonicityViolation : public Error {
 public:
  using Error::Error;
};

// Step/observation alignment was asked to work on an empty side.
class EmptyAfterAlignment : public Error {
 public:
  using Error::Error;
};

// Invalid configuration. `key_path` names the offending entry, e.g.
// "services.agent.timeout_s".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, std::string key_path)
      : Error(key_path.empty() ? msg : key_path + ": " + msg),
        key_path_(std::move(key_path)) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

// A stage was started before the stage it consumes has produced output.
class StageInputMissing : public Error {
 public:
  using Error::Error;
};

// Replay transport has no recording for a request.
class ReplayMiss : public ServiceUnavailable {
 public:
  using ServiceUnavailable::ServiceUnavailable;
};

}  // namespace guiharvest
