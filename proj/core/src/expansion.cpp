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

#include "briefforge/expansion.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <map>

#include "briefforge/errors.hpp"
#include "briefforge/fingerprint.hpp"
#include "briefforge/text.hpp"

namespace briefforge {
namespace {

std::string JoinRange(std::span<const std::string> sentences, std::size_t begin,
                      std::size_t end) {
  if (begin >= end) return {};
  return Join(sentences.subspan(begin, end - begin), " ");
}

std::vector<std::pair<std::size_t, std::size_t>> Histogram(
    const std::vector<std::size_t>& values, std::size_t bin) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t v : values) ++counts[(v / bin) * bin];
  return {counts.begin(), counts.end()};
}

}  // namespace

std::string_view PolicyName(ExpansionPolicy policy) {
  switch (policy) {
    case ExpansionPolicy::kOracleAndDistractor:
      return "oracle_and_distractor";
    case ExpansionPolicy::kOracleOnlyFullPage:
      return "oracle_only_full_page";
  }
  return "unknown";
}

ExpansionPolicy ParsePolicy(std::string_view text) {
  if (text == "both" || text == "oracle_and_distractor") {
    return ExpansionPolicy::kOracleAndDistractor;
  }
  if (text == "oracle-full" || text == "oracle-only-full-page" ||
      text == "oracle_only_full_page") {
    return ExpansionPolicy::kOracleOnlyFullPage;
  }
  throw UsageError("unknown expansion policy '" + std::string(text) +
                   "' (expected both|oracle-full)");
}

void ExpansionConfig::Validate() const {
  if (!(ratio_mean >= 1.0)) throw UsageError("ratio_mean must be >= 1");
  if (!(ratio_std >= 0.0)) throw UsageError("ratio_std must be >= 0");
  if (!(ratio_floor >= 1.0)) throw UsageError("ratio_floor must be >= 1");
  if (!(match_threshold >= 0.0 && match_threshold <= 1.0)) {
    throw UsageError("match_threshold must lie in [0, 1]");
  }
}

double ClampRatio(const ExpansionConfig& config, double standard_normal) {
  return std::max(config.ratio_floor,
                  config.ratio_mean + config.ratio_std * standard_normal);
}

double SampleRatio(const ExpansionConfig& config, std::mt19937_64& rng) {
  if (config.ratio_std == 0.0) return ClampRatio(config, 0.0);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  return ClampRatio(config, normal(rng));
}

std::optional<PageAnchor> Pinpoint(std::span<const std::string> page_sentences,
                                   const SentenceDoc& doc, double threshold,
                                   std::string_view page_id) {
  const std::size_t m = doc.sentences.size();
  const std::size_t n = page_sentences.size();
  if (m == 0 || m > n) return std::nullopt;

  std::vector<std::vector<std::string>> doc_tokens, page_tokens;
  doc_tokens.reserve(m);
  page_tokens.reserve(n);
  for (const auto& s : doc.sentences) doc_tokens.push_back(WordTokens(s));
  for (const auto& s : page_sentences) page_tokens.push_back(WordTokens(s));

  double best = -1.0;
  std::size_t best_start = 0;
  for (std::size_t start = 0; start + m <= n; ++start) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      total += TokenSimilarity(doc_tokens[j], page_tokens[start + j]);
    }
    const double mean = total / static_cast<double>(m);
    if (mean > best) {
      best = mean;
      best_start = start;
      if (mean == 1.0) break;
    }
  }
  if (best < threshold) return std::nullopt;
  return PageAnchor{std::string(page_id), best_start, best_start + m - 1};
}

SentenceDoc ExpandDocument(std::span<const std::string> page_sentences,
                           const PageAnchor& anchor, double ratio) {
  const std::size_t n = page_sentences.size();
  if (anchor.start > anchor.end || anchor.end >= n) {
    throw UsageError("anchor outside page");
  }
  const std::size_t original = anchor.size();
  const auto scaled = static_cast<std::size_t>(
      std::llround(std::max(ratio, 1.0) * static_cast<double>(original)));
  const std::size_t target = std::min(n, std::max(original, scaled));
  const std::size_t added = target - original;

  std::size_t before = added / 2;
  std::size_t after = added - before;
  const std::size_t room_before = anchor.start;
  const std::size_t room_after = n - 1 - anchor.end;
  if (before > room_before) {
    after += before - room_before;
    before = room_before;
  }
  if (after > room_after) {
    before += after - room_after;
    after = room_after;
  }

  SentenceDoc out;
  const std::size_t first = anchor.start - before;
  const std::size_t last = anchor.end + after;
  out.sentences.assign(page_sentences.begin() + static_cast<std::ptrdiff_t>(first),
                       page_sentences.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  out.origin = PageAnchor{anchor.page_id, first, last};
  return out;
}

std::string_view LocateStatusName(LocateStatus status) {
  switch (status) {
    case LocateStatus::kExact: return "exact";
    case LocateStatus::kQualifier: return "qualifier";
    case LocateStatus::kFuzzy: return "fuzzy";
    case LocateStatus::kFetched: return "fetched";
    case LocateStatus::kUnlocated: return "unlocated";
    case LocateStatus::kUnanchored: return "unanchored";
    case LocateStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

ExpandedExample ExpandExample(const QAExample& example,
                              const WikiCorpus& corpus,
                              const ExpansionConfig& config,
                              PageFetcher* fetcher) {
  config.Validate();
  std::mt19937_64 rng(DeriveSeed(config.rng_seed, example.id));
  const bool full_page =
      config.policy == ExpansionPolicy::kOracleOnlyFullPage;

  ExpandedExample out;
  out.example = example;
  for (std::size_t i = 0; i < example.documents.size(); ++i) {
    const SourceDoc& doc = example.documents[i];
    SourceDoc& target = out.example.documents[i];
    const SentenceDoc seed = SentenceDoc::FromText(doc.title, doc.text);

    DocExpansionLog entry;
    entry.example_id = example.id;
    entry.doc_index = i;
    entry.title = doc.title;
    entry.oracle = doc.oracle;
    entry.original_sentences = seed.sentences.size();
    entry.original_words = CountWords(doc.text);
    entry.expanded_sentences = entry.original_sentences;
    entry.expanded_words = entry.original_words;

    // One draw per document regardless of outcome keeps streams aligned.
    std::optional<double> ratio;
    if (!full_page) ratio = SampleRatio(config, rng);

    if (full_page && !doc.oracle) {
      entry.status = LocateStatus::kSkipped;
      out.log.push_back(std::move(entry));
      continue;
    }

    std::optional<WikiPage> fetched;
    const WikiPage* page = nullptr;
    if (auto match = corpus.Lookup(doc.title)) {
      page = match->page;
      entry.status = match->kind == MatchKind::kExact     ? LocateStatus::kExact
                     : match->kind == MatchKind::kQualifier ? LocateStatus::kQualifier
                                                            : LocateStatus::kFuzzy;
    } else if (fetcher != nullptr && (fetched = fetcher->Fetch(doc.title))) {
      page = &*fetched;
      entry.status = LocateStatus::kFetched;
    } else {
      entry.status = LocateStatus::kUnlocated;
      out.log.push_back(std::move(entry));
      continue;
    }
    entry.page_id = page->id;

    const std::vector<std::string> page_sentences = SegmentSentences(page->text);
    const auto anchor =
        Pinpoint(page_sentences, seed, config.match_threshold, page->id);
    if (!anchor) {
      entry.status = LocateStatus::kUnanchored;
      out.log.push_back(std::move(entry));
      continue;
    }

    if (full_page) {
      target.text = page->text;
      entry.expanded_sentences = page_sentences.size();
    } else {
      entry.sampled_ratio = ratio;
      const SentenceDoc grown = ExpandDocument(page_sentences, *anchor, *ratio);
      const PageAnchor& window = *grown.origin;
      if (window != *anchor) {
        const std::string head =
            JoinRange(page_sentences, window.start, anchor->start);
        const std::string tail =
            JoinRange(page_sentences, anchor->end + 1, window.end + 1);
        std::string text = head;
        if (!text.empty()) text += ' ';
        text += Trim(doc.text);
        if (!tail.empty()) {
          text += ' ';
          text += tail;
        }
        target.text = std::move(text);
      }
      entry.expanded_sentences = grown.sentences.size();
    }
    entry.expanded_words = CountWords(target.text);
    out.log.push_back(std::move(entry));
  }
  return out;
}

ExpansionReport SummarizeExpansion(std::span<const ExpandedExample> expanded,
                                   std::size_t histogram_bin_words) {
  ExpansionReport report;
  report.histogram_bin_words = std::max<std::size_t>(histogram_bin_words, 1);
  std::vector<std::size_t> before, after;
  for (const ExpandedExample& ex : expanded) {
    for (const DocExpansionLog& entry : ex.log) {
      ++report.documents;
      switch (entry.status) {
        case LocateStatus::kExact:
        case LocateStatus::kQualifier:
        case LocateStatus::kFetched:
          ++report.located_exact;
          break;
        case LocateStatus::kFuzzy:
          ++report.located_fuzzy;
          break;
        case LocateStatus::kUnlocated:
        case LocateStatus::kUnanchored:
          ++report.unlocated;
          break;
        case LocateStatus::kSkipped:
          ++report.skipped;
          break;
      }
      report.words_before += entry.original_words;
      report.words_after += entry.expanded_words;
      before.push_back(entry.original_words);
      after.push_back(entry.expanded_words);
      report.documents_log.push_back(entry);
    }
  }
  report.histogram_before = Histogram(before, report.histogram_bin_words);
  report.histogram_after = Histogram(after, report.histogram_bin_words);
  return report;
}

}  // namespace briefforge
