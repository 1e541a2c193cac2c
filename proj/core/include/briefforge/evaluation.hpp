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

// QA metrics, compression rate, sentence-budget adherence and the analytical
// FLOPs / latency cost model.

#ifndef BRIEFFORGE_EVALUATION_HPP_
#define BRIEFFORGE_EVALUATION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "briefforge/errors.hpp"
#include "briefforge/prompts.hpp"

namespace briefforge {

class UndefinedRateError : public Error {
 public:
  using Error::Error;
};

struct EvalRecord {
  std::string id;
  std::string prediction;
  std::vector<std::string> gold_answers;
  std::size_t pre_words = 0;
  std::size_t post_words = 0;
  double compressor_ms = 0.0;
  double reader_ms = 0.0;
  std::size_t sentence_count = 0;
  // nullopt: documents went to the reader uncompressed.
  std::optional<BudgetMode> mode;
  bool truncated = false;
  std::optional<std::string> error;
};

// "none" for uncompressed runs, otherwise BudgetMode::ToString().
std::string ModeName(const std::optional<BudgetMode>& mode);
std::optional<BudgetMode> ParseModeName(std::string_view text);

// Lowercase, drop ASCII punctuation, drop the articles a/an/the, collapse
// whitespace.
std::string NormalizeAnswer(std::string_view text);

// Both throw UsageError when `golds` is empty.
int ExactMatch(std::string_view prediction, std::span<const std::string> golds);
// Max over golds of bag-of-tokens F1 on normalized strings. When either side
// normalizes to nothing, F1 is 1 if both do and 0 otherwise.
double F1Score(std::string_view prediction, std::span<const std::string> golds);

struct CompressionRate {
  double exact = 0.0;
  long display = 0;

  // "36x"
  std::string ToString() const;
};

// pre / post, displayed rounded to the nearest integer. Throws
// UndefinedRateError when post_words is 0.
CompressionRate ComputeCompressionRate(std::size_t pre_words,
                                       std::size_t post_words);

struct AdherenceStats {
  int expected_k = 0;
  std::size_t n = 0;
  double mean = 0.0;
  // |mean - expected_k|
  double deviation_of_mean = 0.0;
  // mean of |count - expected_k|
  double mean_abs_deviation = 0.0;
  std::map<std::size_t, std::size_t> histogram;
};

AdherenceStats ComputeAdherence(std::span<const std::size_t> sentence_counts,
                                int expected_k);
AdherenceStats ComputeAdherence(std::span<const EvalRecord> records,
                                int expected_k);

struct CostModel {
  double compressor_params = 3e9;
  double reader_params = 8e9;
  // Forward-pass FLOPs per token per parameter.
  double flops_per_token_coeff = 2.0;
  double words_to_tokens = 1.3;

  void Validate() const;
};

enum class CostRole { kCompressor, kReader };

// coeff * params * words_to_tokens * (prompt + generated words), in TFLOPs.
double EstimateTflops(const CostModel& model, double prompt_words,
                      double generated_words, CostRole role);

struct RunReport {
  std::size_t n = 0;
  std::size_t failed = 0;
  // Percentages in [0, 100].
  double em = 0.0;
  double f1 = 0.0;
  // Mean of per-example pre/post ratios.
  double rate_mean_exact = 0.0;
  std::string rate_display = "0x";
  // Total pre words / total post words.
  double rate_ratio_of_totals = 0.0;
  std::optional<AdherenceStats> adherence;
  double tflops_compressor = 0.0;
  double tflops_reader = 0.0;
  double tflops_total = 0.0;
  // Reader alone on the uncompressed documents, for comparison.
  double tflops_full_context = 0.0;
  double compressor_ms = 0.0;
  double reader_ms = 0.0;
  double total_ms = 0.0;
};

// Adherence is filled when every record shares one Sentences(k) mode.
RunReport BuildReport(std::span<const EvalRecord> records,
                      const CostModel& cost_model);

// Fixed-width human-readable rendering of a report.
std::string FormatReportTable(const RunReport& report);

}  // namespace briefforge

#endif  // BRIEFFORGE_EVALUATION_HPP_
