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

// Uniform access to language-model backends for the two capabilities the
// pipeline needs: target log-likelihood scoring and text generation.

#ifndef BRIEFFORGE_LM_HPP_
#define BRIEFFORGE_LM_HPP_

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>

#include "briefforge/errors.hpp"

namespace briefforge {

// Carries the request fingerprint so failures can be traced back to inputs.
class LMError : public Error {
 public:
  LMError(const std::string& what, std::string request_id)
      : Error(what + " [request " + request_id + "]"),
        request_id_(std::move(request_id)) {}
  const std::string& request_id() const { return request_id_; }

 private:
  std::string request_id_;
};

// Backend unreachable, timed out or kept failing after the retry budget.
class TransportError : public LMError {
 public:
  using LMError::LMError;
};

// Backend cannot provide what was asked (e.g. no target log-probabilities).
class CapabilityError : public LMError {
 public:
  using LMError::LMError;
};

// A scripted mock was asked something it has no answer for.
class ScriptMissError : public LMError {
 public:
  using LMError::LMError;
};

struct ScoreRequest {
  std::string context;
  std::string target;
};

struct GenerateRequest {
  std::string prompt;
  int max_new_tokens = 256;
};

struct Generation {
  std::string text;
  // Backend stopped on the length limit.
  bool truncated = false;
  // Wall time for live backends, a deterministic estimate for mocks.
  double latency_ms = 0.0;
};

struct LMBackendConfig {
  std::string endpoint_url;
  std::string model_name;
  // Name of the environment variable holding the API key. The key itself is
  // never stored in configs or logs.
  std::string api_key_env;
  std::size_t max_parallel_requests = 4;
  std::chrono::milliseconds timeout{60000};
  int retry_limit = 2;

  void Validate() const;
};

// Thread-safe; implementations may be shared across workers.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  // Natural-log likelihood of `target` following `context`.
  virtual double ScoreLoglik(const ScoreRequest& request) = 0;
  virtual Generation Generate(const GenerateRequest& request) = 0;
  // Stable backend identity, used in cache keys.
  virtual std::string Name() const = 0;
};

using LanguageModelPtr = std::shared_ptr<LanguageModel>;

std::string ScoreFingerprint(const ScoreRequest& request);
std::string GenerateFingerprint(const GenerateRequest& request);
// Short form of a fingerprint for error messages.
std::string RequestId(const std::string& fingerprint);

// Throws UsageError when the target is blank.
void ValidateScoreRequest(const ScoreRequest& request);
// Throws UsageError when the prompt is blank or the token budget is < 1.
void ValidateGenerateRequest(const GenerateRequest& request);

}  // namespace briefforge

#endif  // BRIEFFORGE_LM_HPP_
