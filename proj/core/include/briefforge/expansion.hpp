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

// Short-to-long context expansion. Each seed document is located in its
// source page and grown with the page sentences around it, by a ratio drawn
// per document from a floor-clamped normal distribution.

#ifndef BRIEFFORGE_EXPANSION_HPP_
#define BRIEFFORGE_EXPANSION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "briefforge/corpus.hpp"

namespace briefforge {

enum class ExpansionPolicy {
  // Every locatable document grows by its own sampled ratio.
  kOracleAndDistractor,
  // Oracle documents become their whole source page; distractors untouched.
  kOracleOnlyFullPage,
};

std::string_view PolicyName(ExpansionPolicy policy);
// Accepts "both"/"oracle_and_distractor" and "oracle-full" (also spelled
// "oracle-only-full-page" or "oracle_only_full_page").
ExpansionPolicy ParsePolicy(std::string_view text);

struct ExpansionConfig {
  double ratio_mean = 8.0;
  double ratio_std = 3.0;
  // A document never shrinks.
  double ratio_floor = 1.0;
  ExpansionPolicy policy = ExpansionPolicy::kOracleAndDistractor;
  std::uint64_t rng_seed = 0;
  // Minimum mean sentence similarity for a page window to count as the
  // document's location.
  double match_threshold = 0.5;

  // Throws UsageError unless mean >= 1, std >= 0, floor >= 1.
  void Validate() const;
};

// max(floor, mean + std * z) for a standard-normal draw z.
double ClampRatio(const ExpansionConfig& config, double standard_normal);

// One floor-clamped Normal(mean, std) draw. Exactly `mean` (clamped) when
// std == 0, without consuming randomness.
double SampleRatio(const ExpansionConfig& config, std::mt19937_64& rng);

// Window of `doc.sentences.size()` page sentences with the highest mean
// SentenceSimilarity to the document, earliest on ties. nullopt when the
// document is empty, longer than the page, or the best mean is below
// `threshold`.
std::optional<PageAnchor> Pinpoint(std::span<const std::string> page_sentences,
                                   const SentenceDoc& doc, double threshold,
                                   std::string_view page_id = {});

// Grows the anchor window to min(page, max(window, round(ratio * window)))
// sentences. Added sentences are split evenly before and after (odd one
// after); a side clipped by the page boundary hands its deficit to the other
// side. The returned document's origin is the new window.
SentenceDoc ExpandDocument(std::span<const std::string> page_sentences,
                           const PageAnchor& anchor, double ratio);

enum class LocateStatus {
  kExact,
  kQualifier,
  kFuzzy,
  kFetched,
  // No page found.
  kUnlocated,
  // Page found but the document could not be pinned inside it.
  kUnanchored,
  // Policy leaves this document alone (distractors under full-page policy).
  kSkipped,
};

std::string_view LocateStatusName(LocateStatus status);

struct DocExpansionLog {
  std::string example_id;
  std::size_t doc_index = 0;
  std::string title;
  bool oracle = false;
  LocateStatus status = LocateStatus::kUnlocated;
  std::string page_id;
  std::optional<double> sampled_ratio;
  std::size_t original_sentences = 0;
  std::size_t expanded_sentences = 0;
  std::size_t original_words = 0;
  std::size_t expanded_words = 0;
};

struct ExpandedExample {
  QAExample example;
  std::vector<DocExpansionLog> log;
};

// Expands one example. Ratios come from a stream seeded by
// DeriveSeed(rng_seed, example id) with one draw per document in order, so
// results do not depend on processing order. Documents that cannot be
// located pass through unchanged and are reported in the log.
ExpandedExample ExpandExample(const QAExample& example,
                              const WikiCorpus& corpus,
                              const ExpansionConfig& config,
                              PageFetcher* fetcher = nullptr);

struct ExpansionReport {
  std::size_t documents = 0;
  std::size_t located_exact = 0;
  std::size_t located_fuzzy = 0;
  std::size_t unlocated = 0;
  std::size_t skipped = 0;
  std::size_t words_before = 0;
  std::size_t words_after = 0;
  std::size_t histogram_bin_words = 250;
  // Bin start (words) -> document count.
  std::vector<std::pair<std::size_t, std::size_t>> histogram_before;
  std::vector<std::pair<std::size_t, std::size_t>> histogram_after;
  std::vector<DocExpansionLog> documents_log;
};

ExpansionReport SummarizeExpansion(std::span<const ExpandedExample> expanded,
                                   std::size_t histogram_bin_words = 250);

}  // namespace briefforge

#endif  // BRIEFFORGE_EXPANSION_HPP_
