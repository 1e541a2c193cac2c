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

// Compress-then-read inference: the compressor condenses the documents under
// a budget mode, then the reader answers from the summary.

#ifndef BRIEFFORGE_RUNTIME_HPP_
#define BRIEFFORGE_RUNTIME_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "briefforge/corpus.hpp"
#include "briefforge/errors.hpp"
#include "briefforge/evaluation.hpp"
#include "briefforge/lm.hpp"
#include "briefforge/prompts.hpp"

namespace briefforge {

// The compressor returned nothing.
class EmptySummaryError : public Error {
 public:
  EmptySummaryError() : Error("empty_summary") {}
};

inline constexpr int kDefaultCompressorMaxTokens = 1024;
inline constexpr int kDefaultReaderMaxTokens = 64;

struct CompressResult {
  std::string summary;
  std::size_t pre_words = 0;
  std::size_t post_words = 0;
  std::size_t sentence_count = 0;
  double compressor_latency_ms = 0.0;
  bool truncated = false;
};

CompressResult Compress(LanguageModel& backend, std::string_view question,
                        std::string_view documents_text,
                        const BudgetMode& mode,
                        int max_new_tokens = kDefaultCompressorMaxTokens);

// Reader output, verbatim. Throws UsageError for a blank question or summary.
Generation Answer(LanguageModel& reader, std::string_view question,
                  std::string_view summary,
                  int max_new_tokens = kDefaultReaderMaxTokens);

struct PipelineOptions {
  std::size_t parallelism = 1;
  int compressor_max_tokens = kDefaultCompressorMaxTokens;
  int reader_max_tokens = kDefaultReaderMaxTokens;
};

// One record per example, in input order. A nullopt mode skips the
// compressor and hands the full documents to the reader. Per-example
// failures are captured in EvalRecord::error.
std::vector<EvalRecord> RunPipeline(std::span<const QAExample> examples,
                                    LanguageModel* compressor,
                                    LanguageModel& reader,
                                    const std::optional<BudgetMode>& mode,
                                    const PipelineOptions& options = {});

}  // namespace briefforge

#endif  // BRIEFFORGE_RUNTIME_HPP_
