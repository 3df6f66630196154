#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "disco/agents.hpp"

#include "httplib.h"

namespace disco {

namespace {

std::string require_api_key(const std::string& env) {
  if (env.empty()) return "";
  const char* v = std::getenv(env.c_str());
  if (!v || !*v)
    throw std::runtime_error("environment variable " + env +
                             " is not set (required for the remote backend)");
  return v;
}

json message_to_json(const AgentMessage& m) {
  if (m.image_png_base64.empty())
    return {{"role", m.role}, {"content", m.text}};
  json content = json::array();
  content.push_back({{"type", "text"}, {"text", m.text}});
  content.push_back(
      {{"type", "image_url"},
       {"image_url",
        {{"url", "data:image/png;base64," + m.image_png_base64}}}});
  return {{"role", m.role}, {"content", content}};
}

}  // namespace

struct RemoteBackend::Impl {
  RemoteBackendConfig config;
  std::string api_key;
  std::string host;
  bool https = false;

  std::mutex mu;
  std::condition_variable cv;
  int inflight = 0;

  explicit Impl(RemoteBackendConfig cfg) : config(std::move(cfg)) {
    if (config.endpoint.empty())
      throw std::runtime_error("remote backend requires an endpoint");
    api_key = require_api_key(config.api_key_env);
    host = config.endpoint;
    if (host.rfind("https://", 0) == 0) {
      https = true;
    } else if (host.rfind("http://", 0) != 0) {
      host = "http://" + host;
    }
  }

  std::string post(const json& body, std::string& error) {
    httplib::Client cli(host);
    cli.set_connection_timeout(config.timeout_sec, 0);
    cli.set_read_timeout(config.timeout_sec, 0);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
    auto res = cli.Post(config.path, headers, body.dump(), "application/json");
    if (!res) {
      error = "transport error: " + httplib::to_string(res.error());
      return "";
    }
    if (res->status < 200 || res->status >= 300) {
      error = "http " + std::to_string(res->status) + ": " + res->body;
      return "";
    }
    return res->body;
  }
};

RemoteBackend::RemoteBackend(RemoteBackendConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

RemoteBackend::~RemoteBackend() = default;

std::string RemoteBackend::name() const { return "remote:" + impl_->config.model; }

std::string RemoteBackend::complete(const AgentRequest& request) {
  json body = {{"model", impl_->config.model},
               {"temperature", impl_->config.temperature},
               {"messages", json::array()}};
  for (const auto& m : request.messages)
    body["messages"].push_back(message_to_json(m));

  {
    std::unique_lock lock(impl_->mu);
    impl_->cv.wait(lock,
                   [&] { return impl_->inflight < impl_->config.max_inflight; });
    ++impl_->inflight;
  }
  struct Release {
    Impl* impl;
    ~Release() {
      {
        std::lock_guard lock(impl->mu);
        --impl->inflight;
      }
      impl->cv.notify_one();
    }
  } release{impl_.get()};

  std::string last_error;
  for (int attempt = 0; attempt < impl_->config.max_attempts; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(impl_->config.backoff_ms << (attempt - 1)));
    std::string error;
    std::string raw = impl_->post(body, error);
    if (raw.empty()) {
      last_error = error;
      continue;
    }
    json reply;
    try {
      reply = json::parse(raw);
    } catch (const json::parse_error& e) {
      last_error = std::string("unparseable response body: ") + e.what();
      continue;
    }
    if (!reply.contains("choices") || reply["choices"].empty() ||
        !reply["choices"][0].contains("message")) {
      last_error = "response missing choices[0].message";
      continue;
    }
    std::string text =
        reply["choices"][0]["message"].value("content", std::string());
    if (on_exchange) {
      json logged = {{"endpoint", impl_->host + impl_->config.path},
                     {"model", impl_->config.model},
                     {"expect", request.expect},
                     {"attempt", attempt},
                     {"request", body},
                     {"response", reply}};
      on_exchange(logged);  // key lives only in the header, never logged
    }
    return text;
  }
  throw std::runtime_error("remote backend failed after " +
                           std::to_string(impl_->config.max_attempts) +
                           " attempts: " + last_error);
}

}  // namespace disco
