#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>

namespace guiharvest::services {

// status 0 means the request never completed (connect failure or timeout).
struct HttpResult {
  int status = 0;
  std::string body;
};

// POST-only JSON transport. Implementations are thread-safe.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResult post(const std::string& path, const std::string& body) = 0;
};

// Real HTTP, one host per transport.
class HttpTransport : public Transport {
 public:
  HttpTransport(std::string base_url, double timeout_s,
                std::string auth_token = {});
  ~HttpTransport() override;
  HttpResult post(const std::string& path, const std::string& body) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::mutex mutex_;
};

// Serves recorded responses from <dir>/<sha256(body) prefix>.json. A request
// with no recording raises ReplayMiss. Responses replay with their recorded
// status, including failures.
class ReplayTransport : public Transport {
 public:
  explicit ReplayTransport(std::filesystem::path dir);
  HttpResult post(const std::string& path, const std::string& body) override;

  static std::string key_for(const std::string& body);

 private:
  std::filesystem::path dir_;
};

// Forwards to `inner` and records each exchange where ReplayTransport will
// find it. Re-recording an identical request overwrites in place.
class RecordTransport : public Transport {
 public:
  RecordTransport(std::shared_ptr<Transport> inner, std::filesystem::path dir);
  HttpResult post(const std::string& path, const std::string& body) override;

 private:
  std::shared_ptr<Transport> inner_;
  std::filesystem::path dir_;
  std::mutex mutex_;
};

// Test double backed by a function.
class LambdaTransport : public Transport {
 public:
  using Handler = std::function<HttpResult(const std::string& path,
                                           const std::string& body)>;
  explicit LambdaTransport(Handler handler) : handler_(std::move(handler)) {}
  HttpResult post(const std::string& path, const std::string& body) override {
    std::lock_guard lock(mutex_);
    return handler_(path, body);
  }

 private:
  Handler handler_;
  std::mutex mutex_;
};

}  // namespace guiharvest::services
