#include "slisum/http_backend.hpp"

#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "slisum/error.hpp"
#include "slisum/hashing.hpp"

namespace slisum {
namespace {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

HttplibTransport::HttplibTransport(std::string base_url, std::chrono::seconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

HttpResponse HttplibTransport::post(const std::string& path, const std::string& body,
                                    const HttpHeaders& headers) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto result = client.Post(path, h, body, "application/json");
  if (!result)
    throw TransportError("POST " + base_url_ + path + " failed: " +
                         httplib::to_string(result.error()));
  return {result->status, result->body};
}

FixtureRecorder::FixtureRecorder(HttpTransport& inner, std::filesystem::path file)
    : inner_(inner), file_(std::move(file)) {}

HttpResponse FixtureRecorder::post(const std::string& path, const std::string& body,
                                   const HttpHeaders& headers) {
  HttpResponse response = inner_.post(path, body, headers);
  json request = json::parse(body, nullptr, false);
  if (request.is_discarded()) request = body;
  const json exchange = {
      {"request_hash", sha256_hex(body)},
      {"request", request},
      {"response", {{"status", response.status}, {"body", response.body}}},
      {"timestamp", utc_timestamp()},
  };
  std::lock_guard lock(mutex_);
  std::ofstream out(file_, std::ios::app | std::ios::binary);
  out << exchange.dump() << '\n';
  return response;
}

FixtureReplay::FixtureReplay(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ArgumentError("cannot open fixture file " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    if (trimmed(line).empty()) continue;
    const json exchange = json::parse(line);
    HttpResponse response;
    response.status = exchange.at("response").at("status").get<int>();
    response.body = exchange.at("response").at("body").get<std::string>();
    responses_[exchange.at("request_hash").get<std::string>()] = std::move(response);
  }
}

HttpResponse FixtureReplay::post(const std::string&, const std::string& body,
                                 const HttpHeaders&) {
  const std::string hash = sha256_hex(body);
  auto it = responses_.find(hash);
  if (it == responses_.end()) throw TransportError("no fixture recorded for request " + hash);
  return it->second;
}

HttpBackend::HttpBackend(HttpTransport& transport, HttpSettings settings)
    : transport_(transport), settings_(std::move(settings)) {
  if (settings_.max_inflight < 1 || settings_.max_inflight > 1024)
    throw ConfigError("max_inflight must be in [1, 1024]");
  if (settings_.retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be >= 1");
  if (!settings_.sleep)
    settings_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  inflight_ = std::make_unique<std::counting_semaphore<1024>>(settings_.max_inflight);
}

std::string HttpBackend::request_body(const EngineRequest& request) {
  json body = {
      {"model", request.params.model},
      {"messages",
       json::array({
           {{"role", "system"}, {"content", std::string(instruction(request.task))}},
           {{"role", "user"}, {"content", request.prompt_body}},
       })},
      {"temperature", request.params.temperature},
      {"max_tokens", request.params.max_tokens},
  };
  if (request.params.seed) body["seed"] = *request.params.seed;
  return body.dump();
}

std::string HttpBackend::complete(const EngineRequest& request) {
  const std::string body = request_body(request);
  const std::string request_id = sha256_hex(body).substr(0, 16);
  HttpHeaders headers;
  if (!settings_.api_key.empty())
    headers.emplace_back("Authorization", "Bearer " + settings_.api_key);

  inflight_->acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{*inflight_};

  std::string last_error;
  for (int attempt = 1; attempt <= settings_.retry.max_attempts; ++attempt) {
    if (attempt > 1) {
      const double scale = std::pow(settings_.retry.factor, attempt - 2);
      settings_.sleep(std::chrono::milliseconds(static_cast<std::int64_t>(
          static_cast<double>(settings_.retry.base_delay.count()) * scale)));
    }
    HttpResponse response;
    try {
      response = transport_.post(settings_.path, body, headers);
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    }
    if (retryable_status(response.status)) {
      last_error = "HTTP " + std::to_string(response.status);
      continue;
    }
    if (response.status < 200 || response.status >= 300)
      throw EngineError("HTTP " + std::to_string(response.status) + ": " + response.body,
                        request_id, attempt);

    const json parsed = json::parse(response.body, nullptr, false);
    if (parsed.is_discarded())
      throw EngineError("response is not JSON", request_id, attempt);
    try {
      const auto& content = parsed.at("choices").at(0).at("message").at("content");
      std::string text = content.is_string() ? trimmed(content.get<std::string>()) : "";
      if (text.empty()) throw EngineError("empty response content", request_id, attempt);
      return text;
    } catch (const json::exception& e) {
      throw EngineError(std::string("malformed chat completion: ") + e.what(), request_id,
                        attempt);
    }
  }
  throw EngineError("giving up after " + std::to_string(settings_.retry.max_attempts) +
                        " attempts: " + last_error,
                    request_id, settings_.retry.max_attempts);
}

}  // namespace slisum
