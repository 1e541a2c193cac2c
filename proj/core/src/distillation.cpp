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

#include "briefforge/distillation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "briefforge/prompts.hpp"
#include "briefforge/text.hpp"

namespace briefforge {
namespace {

// Log-likelihoods of the target for sub-windows [lo, hi) of the document
// being pruned, memoized so each state is scored once.
class WindowScorer {
 public:
  WindowScorer(const SentenceDoc& doc, const PruneContext& context,
               const PruneConfig& config)
      : doc_(doc), context_(context), scorer_(*config.scorer) {
    for (std::size_t i = 0; i < context.documents.size(); ++i) {
      const SourceDoc& d = context.documents[i];
      if (i == context.doc_index) {
        local_index_ = docs_.size();
        docs_.push_back(d);
      } else if (config.score_with_distractors || d.oracle) {
        docs_.push_back(d);
      }
    }
  }

  double Loglik(std::size_t lo, std::size_t hi) {
    const auto key = std::make_pair(lo, hi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<SourceDoc> docs = docs_;
    if (lo == hi) {
      docs.erase(docs.begin() + static_cast<std::ptrdiff_t>(local_index_));
    } else {
      docs[local_index_].text = Join(
          std::span(doc_.sentences).subspan(lo, hi - lo), " ");
    }
    const double value = scorer_.ScoreLoglik(
        {ScoringContext(context_.question, docs), context_.target});
    memo_.emplace(key, value);
    return value;
  }

 private:
  const SentenceDoc& doc_;
  const PruneContext& context_;
  LanguageModel& scorer_;
  std::vector<SourceDoc> docs_;
  std::size_t local_index_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, double> memo_;
};

}  // namespace

void PruneConfig::Validate() const {
  if (!(epsilon >= 0.0)) throw UsageError("epsilon must be >= 0");
  if (min_sentences_per_doc < 1) {
    throw UsageError("min_sentences_per_doc must be >= 1");
  }
  if (!scorer) throw UsageError("prune config has no scorer");
}

std::string ScoringContext(std::string_view question,
                           std::span<const SourceDoc> docs) {
  return BuildReaderPrompt(question, FormatDocuments(docs)) + " ";
}

HelpfulnessVerdict Helpfulness(LanguageModel& scorer, std::string_view question,
                               std::span<const SourceDoc> docs_without_sentence,
                               std::span<const SourceDoc> docs_with_sentence,
                               std::string_view target, double epsilon,
                               std::size_t sentence_index) {
  HelpfulnessVerdict verdict;
  verdict.sentence_index = sentence_index;
  try {
    const std::string target_text(target);
    const double without = scorer.ScoreLoglik(
        {ScoringContext(question, docs_without_sentence), target_text});
    const double with = scorer.ScoreLoglik(
        {ScoringContext(question, docs_with_sentence), target_text});
    verdict.delta_loglik = without - with;
  } catch (const Error& e) {
    throw ScoringError(e.what(), sentence_index);
  }
  verdict.unhelpful = verdict.delta_loglik > epsilon;
  return verdict;
}

PruneResult PruneHeadTail(const SentenceDoc& doc, const PruneContext& context,
                          const PruneConfig& config) {
  config.Validate();
  const std::size_t n = doc.sentences.size();
  if (n == 0) throw UsageError("cannot prune an empty document");
  if (context.doc_index >= context.documents.size()) {
    throw UsageError("prune context doc_index out of range");
  }
  const std::size_t keep_min = std::min(config.min_sentences_per_doc, n);

  WindowScorer scorer(doc, context, config);
  PruneResult result;
  auto judge = [&](std::size_t index, std::size_t lo, std::size_t hi,
                   std::size_t wlo, std::size_t whi) {
    HelpfulnessVerdict v;
    v.sentence_index = index;
    try {
      v.delta_loglik = scorer.Loglik(wlo, whi) - scorer.Loglik(lo, hi);
    } catch (const Error& e) {
      throw ScoringError(e.what(), index);
    }
    v.unhelpful = v.delta_loglik > config.epsilon;
    result.verdicts.push_back(v);
    return v.unhelpful;
  };

  std::size_t lo = 0;
  std::size_t hi = n;
  while (lo < hi && judge(lo, lo, hi, lo + 1, hi)) ++lo;

  if (hi - lo < keep_min) {
    const auto smallest = std::min_element(
        result.verdicts.begin(), result.verdicts.end(),
        [](const HelpfulnessVerdict& a, const HelpfulnessVerdict& b) {
          return a.delta_loglik < b.delta_loglik;
        });
    result.first = std::min(smallest->sentence_index, n - keep_min);
    result.last = result.first + keep_min - 1;
    result.fallback = true;
    return result;
  }

  while (hi - lo > keep_min && judge(hi - 1, lo, hi, lo, hi - 1)) --hi;
  result.first = lo;
  result.last = hi - 1;
  return result;
}

SentenceDoc ApplyPrune(const SentenceDoc& doc, const PruneResult& result) {
  SentenceDoc out;
  out.title = doc.title;
  out.sentences.assign(
      doc.sentences.begin() + static_cast<std::ptrdiff_t>(result.first),
      doc.sentences.begin() + static_cast<std::ptrdiff_t>(result.last) + 1);
  if (doc.origin) {
    out.origin = PageAnchor{doc.origin->page_id, doc.origin->start + result.first,
                            doc.origin->start + result.last};
  }
  return out;
}

CuratedSummary CurateSummary(const QAExample& example,
                             const PruneConfig& config) {
  config.Validate();
  if (example.gold_answers.empty()) {
    throw UsageError("example '" + example.id + "' has no gold answer");
  }
  CuratedSummary out;
  std::vector<std::string> pieces;
  for (std::size_t i = 0; i < example.documents.size(); ++i) {
    const SourceDoc& source = example.documents[i];
    if (!source.oracle) continue;
    const SentenceDoc doc = SentenceDoc::FromText(source.title, source.text);
    DocPruneAudit audit;
    audit.doc_index = i;
    audit.title = source.title;
    audit.sentences = doc.sentences.size();
    audit.first = 0;
    audit.last = doc.sentences.empty() ? 0 : doc.sentences.size() - 1;

    std::string text(Trim(source.text));
    try {
      const PruneContext context{example.question, example.gold_answers.front(),
                                 example.documents, i};
      PruneResult pruned = PruneHeadTail(doc, context, config);
      audit.first = pruned.first;
      audit.last = pruned.last;
      audit.fallback = pruned.fallback;
      audit.verdicts = std::move(pruned.verdicts);
      if (pruned.size() != doc.sentences.size()) {
        text = ApplyPrune(doc, pruned).Text();
      }
    } catch (const ScoringError& e) {
      audit.error = e.what();
      out.unpruned_oracle = true;
    }
    pieces.push_back(std::move(text));
    out.spans.push_back(std::move(audit));
  }
  if (pieces.empty()) {
    throw UsageError("example '" + example.id + "' has no oracle document");
  }
  out.summary = Join(pieces, "\n\n");
  return out;
}

TrainingPair BuildTrainingPair(const QAExample& example,
                               const std::string& summary,
                               bool with_instruction) {
  const std::size_t k = SegmentSentences(summary).size();
  if (k == 0) {
    throw UsageError("example '" + example.id + "' has an empty summary");
  }
  TrainingPair pair;
  pair.id = example.id + (with_instruction ? "#k" : "#auto");
  pair.question = example.question;
  pair.long_context = FormatDocuments(example.documents);
  pair.target_summary = summary;
  pair.k = static_cast<int>(k);
  if (with_instruction) pair.instruction = MakeInstruction(pair.k);
  return pair;
}

std::string TrainingPrompt(const TrainingPair& pair) {
  const BudgetMode mode =
      pair.instruction ? BudgetMode::Sentences(pair.k) : BudgetMode::Auto();
  return BuildCompressorPrompt(pair.question, pair.long_context, mode);
}

PairMix ParsePairMix(std::string_view text) {
  if (text == "both") return PairMix::kBoth;
  if (text == "instruction") return PairMix::kInstructionOnly;
  if (text == "auto") return PairMix::kAutoOnly;
  throw UsageError("unknown pair mix '" + std::string(text) +
                   "' (expected both|instruction|auto)");
}

std::string_view PairMixName(PairMix mix) {
  switch (mix) {
    case PairMix::kBoth: return "both";
    case PairMix::kInstructionOnly: return "instruction";
    case PairMix::kAutoOnly: return "auto";
  }
  return "unknown";
}

DatasetStats ComputeDatasetStats(std::span<const TrainingPair> pairs) {
  DatasetStats stats;
  stats.samples = pairs.size();
  if (pairs.empty()) return stats;
  double ctx_sum = 0, ctx_sq = 0, sum_sum = 0, sum_sq = 0;
  for (const TrainingPair& pair : pairs) {
    const auto ctx = static_cast<double>(CountWords(pair.long_context));
    const auto summ = static_cast<double>(CountWords(pair.target_summary));
    ctx_sum += ctx;
    ctx_sq += ctx * ctx;
    sum_sum += summ;
    sum_sq += summ * summ;
    ++stats.k_histogram[pair.k];
    if (pair.instruction) ++stats.with_instruction;
  }
  const auto n = static_cast<double>(pairs.size());
  stats.context_words_mean = ctx_sum / n;
  stats.summary_words_mean = sum_sum / n;
  stats.context_words_std = std::sqrt(
      std::max(0.0, ctx_sq / n - stats.context_words_mean * stats.context_words_mean));
  stats.summary_words_std = std::sqrt(
      std::max(0.0, sum_sq / n - stats.summary_words_mean * stats.summary_words_mean));
  return stats;
}

}  // namespace briefforge
