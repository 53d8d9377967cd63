#include "guiharvest/services/transport.hpp"

#include <httplib.h>

#include "guiharvest/errors.hpp"
#include "guiharvest/util/fs.hpp"
#include "guiharvest/util/hash.hpp"
#include "guiharvest/util/jsonio.hpp"

namespace guiharvest::services {

namespace fs = std::filesystem;

struct HttpTransport::Impl {
  httplib::Client client;
  std::string auth_token;

  Impl(const std::string& base_url, double timeout_s, std::string token)
      : client(base_url), auth_token(std::move(token)) {
    auto usec = std::chrono::microseconds(
        static_cast<long long>(timeout_s * 1e6));
    client.set_connection_timeout(usec);
    client.set_read_timeout(usec);
    client.set_write_timeout(usec);
  }
};

HttpTransport::HttpTransport(std::string base_url, double timeout_s,
                             std::string auth_token)
    : impl_(std::make_unique<Impl>(base_url, timeout_s, std::move(auth_token))) {}

HttpTransport::~HttpTransport() = default;

HttpResult HttpTransport::post(const std::string& path,
                               const std::string& body) {
  std::lock_guard lock(mutex_);
  httplib::Headers headers;
  if (!impl_->auth_token.empty())
    headers.emplace("Authorization", "Bearer " + impl_->auth_token);
  auto res = impl_->client.Post(path, headers, body, "application/json");
  if (!res) return {0, {}};
  return {res->status, res->body};
}

ReplayTransport::ReplayTransport(fs::path dir) : dir_(std::move(dir)) {}

std::string ReplayTransport::key_for(const std::string& body) {
  return util::sha256_hex(body).substr(0, 24);
}

HttpResult ReplayTransport::post(const std::string& path,
                                 const std::string& body) {
  fs::path file = dir_ / (key_for(body) + ".json");
  if (!fs::exists(file))
    throw ReplayMiss("no recording for " + path + " request " +
                     key_for(body) + " in " + dir_.string());
  ojson j = ojson::parse(util::read_text_file(file));
  return {j.at("status").get<int>(), j.at("response").get<std::string>()};
}

RecordTransport::RecordTransport(std::shared_ptr<Transport> inner, fs::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {}

HttpResult RecordTransport::post(const std::string& path,
                                 const std::string& body) {
  HttpResult result = inner_->post(path, body);
  ojson j;
  j["path"] = path;
  j["request"] = body;
  j["status"] = result.status;
  j["response"] = result.body;
  std::lock_guard lock(mutex_);
  util::write_file_atomic(dir_ / (ReplayTransport::key_for(body) + ".json"),
                          j.dump(2) + "\n");
  return result;
}

}  // namespace guiharvest::services
