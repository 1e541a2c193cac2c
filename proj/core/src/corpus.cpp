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

#include "briefforge/corpus.hpp"

#include <algorithm>

#include "briefforge/errors.hpp"
#include "briefforge/text.hpp"

namespace briefforge {

void QAExample::Validate() const {
  if (gold_answers.empty()) {
    throw FormatError("example '" + id + "': no gold answers");
  }
  if (std::none_of(documents.begin(), documents.end(),
                   [](const SourceDoc& d) { return d.oracle; })) {
    throw FormatError("example '" + id + "': no oracle document");
  }
  for (const SourceDoc& doc : documents) {
    if (Trim(doc.text).empty()) {
      throw FormatError("example '" + id + "': document '" + doc.title +
                        "' has empty text");
    }
  }
}

SentenceDoc SentenceDoc::FromText(std::string title, std::string_view text) {
  return SentenceDoc{std::move(title), SegmentSentences(text), std::nullopt};
}

std::string SentenceDoc::Text() const { return Join(sentences, " "); }

WikiCorpus::WikiCorpus(std::vector<WikiPage> pages, double fuzzy_threshold)
    : pages_(std::move(pages)), fuzzy_threshold_(fuzzy_threshold) {
  normalized_.reserve(pages_.size());
  normalized_stripped_.reserve(pages_.size());
  for (std::size_t i = 0; i < pages_.size(); ++i) {
    const WikiPage& page = pages_[i];
    if (!id_index_.emplace(page.id, i).second) {
      throw FormatError("duplicate page id '" + page.id + "'");
    }
    normalized_.push_back(NormalizeTitle(page.title));
    normalized_stripped_.push_back(NormalizeTitle(StripQualifier(page.title)));
    title_index_.emplace(normalized_.back(), i);
    stripped_index_.emplace(normalized_stripped_.back(), i);
  }
}

std::optional<PageMatch> WikiCorpus::Lookup(std::string_view title) const {
  const std::string query = NormalizeTitle(title);
  if (auto it = title_index_.find(query); it != title_index_.end()) {
    return PageMatch{&pages_[it->second], MatchKind::kExact, 1.0};
  }
  const std::string query_stripped = NormalizeTitle(StripQualifier(title));
  if (!query_stripped.empty()) {
    if (auto it = title_index_.find(query_stripped); it != title_index_.end()) {
      return PageMatch{&pages_[it->second], MatchKind::kQualifier, 1.0};
    }
    if (auto it = stripped_index_.find(query_stripped);
        it != stripped_index_.end()) {
      return PageMatch{&pages_[it->second], MatchKind::kQualifier, 1.0};
    }
  }

  std::optional<PageMatch> best;
  double best_score = fuzzy_threshold_;
  for (std::size_t i = 0; i < pages_.size(); ++i) {
    const double score =
        std::max(EditSimilarity(query, normalized_[i]),
                 EditSimilarity(query_stripped, normalized_stripped_[i]));
    if (score >= best_score && (!best || score > best->similarity)) {
      best = PageMatch{&pages_[i], MatchKind::kFuzzy, score};
      best_score = score;
    }
  }
  return best;
}

const WikiPage* WikiCorpus::FindById(std::string_view id) const {
  auto it = id_index_.find(std::string(id));
  return it == id_index_.end() ? nullptr : &pages_[it->second];
}

}  // namespace briefforge
