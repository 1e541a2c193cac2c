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

// Target-summary curation: helpfulness-driven head/tail pruning of oracle
// documents, sentence-budget instruction pairs and dataset statistics.

#ifndef BRIEFFORGE_DISTILLATION_HPP_
#define BRIEFFORGE_DISTILLATION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "briefforge/corpus.hpp"
#include "briefforge/errors.hpp"
#include "briefforge/lm.hpp"

namespace briefforge {

// Scorer failure while judging one sentence.
class ScoringError : public Error {
 public:
  ScoringError(const std::string& what, std::size_t sentence_index)
      : Error(what + " (sentence " + std::to_string(sentence_index) + ")"),
        sentence_index_(sentence_index) {}
  std::size_t sentence_index() const { return sentence_index_; }

 private:
  std::size_t sentence_index_;
};

struct PruneConfig {
  // A sentence is unhelpful only when removing it raises the target
  // log-likelihood by strictly more than epsilon.
  double epsilon = 0.0;
  std::size_t min_sentences_per_doc = 1;
  LanguageModelPtr scorer;
  // Keep distractor documents in the scoring context.
  bool score_with_distractors = true;

  void Validate() const;
};

struct HelpfulnessVerdict {
  std::size_t sentence_index = 0;
  double delta_loglik = 0.0;
  bool unhelpful = false;
};

// Scoring context for a document set: the reader prompt over the documents,
// followed by a space so the target reads as the answer.
std::string ScoringContext(std::string_view question,
                           std::span<const SourceDoc> docs);

// delta = loglik(target | without) - loglik(target | with).
HelpfulnessVerdict Helpfulness(LanguageModel& scorer, std::string_view question,
                               std::span<const SourceDoc> docs_without_sentence,
                               std::span<const SourceDoc> docs_with_sentence,
                               std::string_view target, double epsilon,
                               std::size_t sentence_index);

// What stays fixed while one document is pruned.
struct PruneContext {
  std::string question;
  std::string target;
  // Full document set; the entry at `doc_index` is the one being pruned and
  // is replaced by its current sentences at every judgment.
  std::vector<SourceDoc> documents;
  std::size_t doc_index = 0;
};

struct PruneResult {
  // Inclusive kept interval of the input sentences.
  std::size_t first = 0;
  std::size_t last = 0;
  // In judgment order: head pass, then tail pass.
  std::vector<HelpfulnessVerdict> verdicts;
  // Head pass left fewer than min_sentences_per_doc sentences.
  bool fallback = false;

  std::size_t size() const { return last - first + 1; }
};

// Head pass: judge the first remaining sentence, drop it while unhelpful.
// Tail pass: same from the end, never going below min_sentences_per_doc.
// Each judgment sees the document after all earlier removals. If the head
// pass leaves fewer than min_sentences_per_doc sentences, the kept window
// starts at the sentence with the smallest delta (clamped to fit).
// Throws ScoringError when the scorer fails.
PruneResult PruneHeadTail(const SentenceDoc& doc, const PruneContext& context,
                          const PruneConfig& config);

// Kept sentences of `doc` as a new document.
SentenceDoc ApplyPrune(const SentenceDoc& doc, const PruneResult& result);

struct DocPruneAudit {
  std::size_t doc_index = 0;
  std::string title;
  std::size_t sentences = 0;
  std::size_t first = 0;
  std::size_t last = 0;
  bool fallback = false;
  std::optional<std::string> error;
  std::vector<HelpfulnessVerdict> verdicts;
};

struct CuratedSummary {
  std::string summary;
  std::vector<DocPruneAudit> spans;
  // Some oracle document kept whole because its scoring failed.
  bool unpruned_oracle = false;
};

// Prunes every oracle document in order against the original document set
// and joins the pruned texts with a blank line. Throws UsageError when the
// example has no oracle document or no gold answer.
CuratedSummary CurateSummary(const QAExample& example,
                             const PruneConfig& config);

struct TrainingPair {
  std::string id;
  std::string question;
  std::string long_context;
  std::optional<std::string> instruction;
  std::string target_summary;
  int k = 0;
};

// k = sentence count of `summary`; long_context = FormatDocuments(documents).
// Throws UsageError for an empty summary.
TrainingPair BuildTrainingPair(const QAExample& example,
                               const std::string& summary,
                               bool with_instruction);

// Compressor prompt for the pair (controllable when it has an instruction).
std::string TrainingPrompt(const TrainingPair& pair);

enum class PairMix { kBoth, kInstructionOnly, kAutoOnly };

PairMix ParsePairMix(std::string_view text);
std::string_view PairMixName(PairMix mix);

struct DatasetStats {
  std::size_t samples = 0;
  std::size_t with_instruction = 0;
  double context_words_mean = 0.0;
  double context_words_std = 0.0;
  double summary_words_mean = 0.0;
  double summary_words_std = 0.0;
  std::map<int, std::size_t> k_histogram;
};

// Population standard deviations.
DatasetStats ComputeDatasetStats(std::span<const TrainingPair> pairs);

}  // namespace briefforge

#endif  // BRIEFFORGE_DISTILLATION_HPP_
