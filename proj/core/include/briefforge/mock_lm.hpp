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

// Deterministic offline language models used by tests, the acceptance suite
// and dry runs of the CLI.

#ifndef BRIEFFORGE_MOCK_LM_HPP_
#define BRIEFFORGE_MOCK_LM_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "briefforge/lm.hpp"

namespace briefforge {

enum class MockMode {
  // Scores by content-word overlap; generates by extractive echo.
  kUnigramOverlap,
  // Answers from a fingerprint-keyed script; anything else is a ScriptMiss.
  kScripted,
  // Returns the documents block of a compressor prompt (or the passages of a
  // reader prompt) verbatim. Cannot score.
  kEcho,
};

struct MockLMSpec {
  MockMode mode = MockMode::kUnigramOverlap;
  double overlap_weight = 1.0;
  // Sentences kept by the extractive echo when the prompt has no budget.
  std::size_t auto_sentences = 3;
  // Simulated latency: base + per_word * (prompt words + output words).
  double latency_base_ms = 5.0;
  double latency_per_word_ms = 0.01;
  // Fingerprint -> generated text / log-likelihood.
  std::map<std::string, std::string> generations;
  std::map<std::string, double> scores;

  void AddGeneration(std::string_view prompt, std::string response);
  void AddScore(std::string_view context, std::string_view target,
                double loglik);
};

// Accepts {"mode": "unigram_overlap"|"scripted"|"echo", "overlap_weight",
// "auto_sentences", "latency_base_ms", "latency_per_word_ms",
// "script": {fingerprint: text-or-number},
// "generations": [{"prompt", "response"}],
// "scores": [{"context", "target", "loglik"}]}. Throws FormatError.
MockLMSpec ParseMockSpec(std::string_view json_text);

LanguageModelPtr MakeMockLM(MockLMSpec spec);

// Lowercased content-word types (stopwords removed).
std::vector<std::string> ContentTypes(std::string_view text);

// Sentences of a documents/passages block with "Passage N:" headers and
// title lines removed.
std::vector<std::string> PassageSentences(std::string_view block);

// Indices (ascending) of the `k` sentences sharing the most content-word
// types with `query`; ties prefer earlier sentences.
std::vector<std::size_t> TopOverlapSentences(
    const std::vector<std::string>& sentences, std::string_view query,
    std::size_t k);

}  // namespace briefforge

#endif  // BRIEFFORGE_MOCK_LM_HPP_
