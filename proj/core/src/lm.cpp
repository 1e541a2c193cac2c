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

#include "briefforge/lm.hpp"

#include "briefforge/fingerprint.hpp"
#include "briefforge/text.hpp"

namespace briefforge {

void LMBackendConfig::Validate() const {
  if (endpoint_url.empty()) throw UsageError("endpoint_url must be set");
  if (max_parallel_requests < 1) {
    throw UsageError("max_parallel_requests must be >= 1");
  }
  if (retry_limit < 0) throw UsageError("retry_limit must be >= 0");
  if (timeout.count() <= 0) throw UsageError("timeout must be positive");
}

std::string ScoreFingerprint(const ScoreRequest& request) {
  return RequestFingerprint({"score", request.context, request.target});
}

std::string GenerateFingerprint(const GenerateRequest& request) {
  return RequestFingerprint({"generate", request.prompt});
}

std::string RequestId(const std::string& fingerprint) {
  return fingerprint.substr(0, 12);
}

void ValidateScoreRequest(const ScoreRequest& request) {
  if (Trim(request.target).empty()) {
    throw UsageError("score request target must be non-empty");
  }
}

void ValidateGenerateRequest(const GenerateRequest& request) {
  if (Trim(request.prompt).empty()) {
    throw UsageError("generation prompt must be non-empty");
  }
  if (request.max_new_tokens < 1) {
    throw UsageError("max_new_tokens must be >= 1");
  }
}

}  // namespace briefforge
