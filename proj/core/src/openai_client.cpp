// Copyright 2026 The BriefForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "briefforge/openai_client.hpp"

#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "briefforge/errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace briefforge {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string scheme_host_port;
  std::string path_prefix;
};

Endpoint ParseEndpoint(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw UsageError("endpoint url must include a scheme: '" + url + "'");
  }
  const std::size_t path = url.find('/', scheme + 3);
  Endpoint out;
  out.scheme_host_port = url.substr(0, path);
  out.path_prefix = path == std::string::npos ? "" : url.substr(path);
  while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
    out.path_prefix.pop_back();
  }
  return out;
}

bool Retryable(const httplib::Result& result) {
  if (!result) return true;
  return result->status == 429 || result->status >= 500;
}

}  // namespace

struct OpenAIClient::Impl {
  explicit Impl(LMBackendConfig cfg)
      : config(std::move(cfg)),
        endpoint(ParseEndpoint(config.endpoint_url)),
        in_flight(static_cast<std::ptrdiff_t>(config.max_parallel_requests)) {}

  // POSTs `body` to `path`, honoring the in-flight cap and retry policy.
  json Post(const std::string& path, const json& body,
            const std::string& request_id) {
    httplib::Headers headers;
    if (!config.api_key_env.empty()) {
      if (const char* key = std::getenv(config.api_key_env.c_str());
          key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
      }
    }
    const std::string payload = body.dump();
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= config.retry_limit; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50) *
                                    (1 << std::min(attempt - 1, 6)));
      }
      httplib::Result result;
      {
        in_flight.acquire();
        httplib::Client client(endpoint.scheme_host_port);
        const auto timeout = config.timeout;
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        result = client.Post(endpoint.path_prefix + path, headers, payload,
                             "application/json");
        in_flight.release();
      }
      if (Retryable(result)) {
        last_error = result ? "HTTP " + std::to_string(result->status)
                            : httplib::to_string(result.error());
        continue;
      }
      if (result->status != 200) {
        throw LMError("backend returned HTTP " + std::to_string(result->status) +
                          ": " + result->body.substr(0, 200),
                      request_id);
      }
      try {
        return json::parse(result->body);
      } catch (const json::exception& e) {
        throw LMError(std::string("malformed backend response: ") + e.what(),
                      request_id);
      }
    }
    throw TransportError("backend unreachable after " +
                             std::to_string(config.retry_limit + 1) +
                             " attempts: " + last_error,
                         request_id);
  }

  LMBackendConfig config;
  Endpoint endpoint;
  std::counting_semaphore<4096> in_flight;
};

OpenAIClient::OpenAIClient(LMBackendConfig config) {
  config.Validate();
  impl_ = std::make_unique<Impl>(std::move(config));
}

OpenAIClient::~OpenAIClient() = default;

double OpenAIClient::ScoreLoglik(const ScoreRequest& request) {
  ValidateScoreRequest(request);
  const std::string id = RequestId(ScoreFingerprint(request));
  json body = {{"model", impl_->config.model_name},
               {"prompt", request.context + request.target},
               {"max_tokens", 0},
               {"echo", true},
               {"logprobs", 1},
               {"temperature", 0}};
  const json response = impl_->Post("/completions", body, id);
  try {
    const json& choice = response.at("choices").at(0);
    auto lp = choice.find("logprobs");
    if (lp == choice.end() || lp->is_null() || !lp->contains("token_logprobs") ||
        !lp->contains("text_offset")) {
      throw CapabilityError("backend did not return token log-probabilities",
                            id);
    }
    const json& logprobs = lp->at("token_logprobs");
    const json& offsets = lp->at("text_offset");
    const std::size_t target_begin = request.context.size();
    double total = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < logprobs.size() && i < offsets.size(); ++i) {
      if (offsets[i].get<std::size_t>() < target_begin || logprobs[i].is_null()) {
        continue;
      }
      total += logprobs[i].get<double>();
      any = true;
    }
    if (!any) {
      throw CapabilityError("no target tokens carried log-probabilities", id);
    }
    return total;
  } catch (const json::exception& e) {
    throw LMError(std::string("malformed completions response: ") + e.what(),
                  id);
  }
}

Generation OpenAIClient::Generate(const GenerateRequest& request) {
  ValidateGenerateRequest(request);
  const std::string id = RequestId(GenerateFingerprint(request));
  json body = {
      {"model", impl_->config.model_name},
      {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"max_tokens", request.max_new_tokens},
      {"temperature", 0}};
  const auto start = std::chrono::steady_clock::now();
  const json response = impl_->Post("/chat/completions", body, id);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  try {
    const json& choice = response.at("choices").at(0);
    Generation out;
    const json& content = choice.at("message").at("content");
    out.text = content.is_null() ? "" : content.get<std::string>();
    out.truncated = choice.value("finish_reason", std::string()) == "length";
    out.latency_ms =
        std::chrono::duration<double, std::milli>(elapsed).count();
    return out;
  } catch (const json::exception& e) {
    throw LMError(std::string("malformed chat response: ") + e.what(), id);
  }
}

std::string OpenAIClient::Name() const {
  return "openai:" + impl_->config.endpoint_url + "#" +
         impl_->config.model_name;
}

}  // namespace briefforge
