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

// Text data model: QA examples with their retrieved documents, sentence-
// segmented documents with page provenance, and the offline Wikipedia corpus.

#ifndef BRIEFFORGE_CORPUS_HPP_
#define BRIEFFORGE_CORPUS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace briefforge {

struct SourceDoc {
  std::string title;
  std::string text;
  bool oracle = false;
};

struct QAExample {
  std::string id;
  std::string question;
  std::vector<std::string> gold_answers;
  std::vector<SourceDoc> documents;

  // Throws FormatError unless there is at least one gold answer, at least one
  // oracle document and every document has non-blank text.
  void Validate() const;
};

// Inclusive sentence interval [start, end] inside a page.
struct PageAnchor {
  std::string page_id;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start + 1; }
  bool operator==(const PageAnchor&) const = default;
};

struct SentenceDoc {
  std::string title;
  std::vector<std::string> sentences;
  std::optional<PageAnchor> origin;

  static SentenceDoc FromText(std::string title, std::string_view text);
  // Sentences joined by single spaces.
  std::string Text() const;
};

struct WikiPage {
  std::string id;
  std::string title;
  std::string text;
};

enum class MatchKind { kExact, kQualifier, kFuzzy };

struct PageMatch {
  const WikiPage* page = nullptr;
  MatchKind kind = MatchKind::kExact;
  double similarity = 1.0;
};

inline constexpr double kDefaultFuzzyThreshold = 0.85;

// Read-only title-addressable page store. Built once, then safe to share.
class WikiCorpus {
 public:
  // Throws FormatError on duplicate page ids.
  explicit WikiCorpus(std::vector<WikiPage> pages,
                      double fuzzy_threshold = kDefaultFuzzyThreshold);

  // Resolution order: exact normalized title; query with its trailing
  // "(qualifier)" removed, matched exactly against titles and then against
  // qualifier-stripped titles; best edit-similarity candidate at or above
  // the fuzzy threshold (ties go to the earlier page).
  std::optional<PageMatch> Lookup(std::string_view title) const;

  const WikiPage* FindById(std::string_view id) const;

  std::span<const WikiPage> pages() const { return pages_; }
  std::size_t size() const { return pages_.size(); }
  double fuzzy_threshold() const { return fuzzy_threshold_; }

 private:
  std::vector<WikiPage> pages_;
  double fuzzy_threshold_;
  std::vector<std::string> normalized_;
  std::vector<std::string> normalized_stripped_;
  std::unordered_map<std::string, std::size_t> title_index_;
  std::unordered_map<std::string, std::size_t> stripped_index_;
  std::unordered_map<std::string, std::size_t> id_index_;
};

// Optional online fallback for documents the offline corpus cannot place.
class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  virtual std::optional<WikiPage> Fetch(std::string_view title) = 0;
};

// Default fetcher: never finds anything.
class NullPageFetcher final : public PageFetcher {
 public:
  std::optional<WikiPage> Fetch(std::string_view) override {
    return std::nullopt;
  }
};

}  // namespace briefforge

#endif  // BRIEFFORGE_CORPUS_HPP_
