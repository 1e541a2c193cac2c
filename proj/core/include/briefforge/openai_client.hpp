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

#ifndef BRIEFFORGE_OPENAI_CLIENT_HPP_
#define BRIEFFORGE_OPENAI_CLIENT_HPP_

#include <memory>
#include <string>

#include "briefforge/lm.hpp"

namespace briefforge {

// Client for OpenAI-compatible HTTP endpoints.
//
// Generation uses POST {endpoint}/chat/completions at temperature 0. Scoring
// uses POST {endpoint}/completions with echo=true, max_tokens=0 and logprobs,
// summing the log-probabilities of the tokens whose text offset falls inside
// the target. A backend that omits token log-probabilities or offsets raises
// CapabilityError; likelihoods are never approximated.
//
// At most `max_parallel_requests` requests are in flight per client. Failed
// connections, 429 and 5xx responses are retried up to `retry_limit` times
// with exponential backoff, then surface as TransportError.
class OpenAIClient final : public LanguageModel {
 public:
  // `endpoint_url` is a base such as "http://127.0.0.1:8000/v1".
  explicit OpenAIClient(LMBackendConfig config);
  ~OpenAIClient() override;

  double ScoreLoglik(const ScoreRequest& request) override;
  Generation Generate(const GenerateRequest& request) override;
  std::string Name() const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace briefforge

#endif  // BRIEFFORGE_OPENAI_CLIENT_HPP_
