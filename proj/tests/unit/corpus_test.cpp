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

#include <gtest/gtest.h>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <set>

#include "briefforge/errors.hpp"
#include "briefforge/text.hpp"
#include "test_support.hpp"

namespace briefforge {
namespace {

std::size_t NaiveDistance(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

double NaiveSimilarity(const std::string& a, const std::string& b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(NaiveDistance(a, b)) /
                   static_cast<double>(longest);
}

// Exhaustive scan: exact normalized title, then qualifier-stripped exact,
// then the best similarity at or above the threshold (earliest on ties).
const WikiPage* ScanLookup(const std::vector<WikiPage>& pages,
                           const std::string& title, double threshold) {
  const std::string q = NormalizeTitle(title);
  for (const auto& p : pages) {
    if (NormalizeTitle(p.title) == q) return &p;
  }
  const std::string qs = NormalizeTitle(StripQualifier(title));
  for (const auto& p : pages) {
    if (NormalizeTitle(p.title) == qs) return &p;
  }
  for (const auto& p : pages) {
    if (NormalizeTitle(StripQualifier(p.title)) == qs) return &p;
  }
  const WikiPage* best = nullptr;
  double best_score = -1.0;
  for (const auto& p : pages) {
    const double s = std::max(
        NaiveSimilarity(q, NormalizeTitle(p.title)),
        NaiveSimilarity(qs, NormalizeTitle(StripQualifier(p.title))));
    if (s > best_score) {
      best = &p;
      best_score = s;
    }
  }
  return best_score >= threshold ? best : nullptr;
}

std::vector<WikiPage> SmallCorpus() {
  return {{"1", "John Locke", "John Locke was a philosopher."},
          {"2", "John Franks (judge)", "Sir John Franks was a judge."},
          {"3", "It's Always Sunny in Philadelphia", "A sitcom."},
          {"4", "Robbie Tucker", "An actor."}};
}

TEST(QAExampleTest, Validate) {
  QAExample ex{"q1", "Who?", {"A"}, {{"T", "Some text.", true}}};
  EXPECT_NO_THROW(ex.Validate());
  ex.documents[0].oracle = false;
  EXPECT_THROW(ex.Validate(), FormatError);
  ex.documents[0].oracle = true;
  ex.gold_answers.clear();
  EXPECT_THROW(ex.Validate(), FormatError);
  ex.gold_answers = {"A"};
  ex.documents.push_back({"U", "  \n ", false});
  EXPECT_THROW(ex.Validate(), FormatError);
}

TEST(SentenceDocTest, FromTextAndStability) {
  const SentenceDoc doc = SentenceDoc::FromText(
      "Robbie Tucker",
      "Robbie Tucker (born April 5, 2001) is an American actor.\nHe has also "
      "appeared in the films Prom and Little Fockers.");
  ASSERT_EQ(doc.sentences.size(), 2u);
  EXPECT_FALSE(doc.origin.has_value());
  EXPECT_EQ(SegmentSentences(doc.Text()).size(), doc.sentences.size());
}

TEST(WikiCorpusTest, RejectsDuplicateIds) {
  EXPECT_THROW(WikiCorpus({{"1", "A", "x."}, {"1", "B", "y."}}), FormatError);
}

TEST(WikiCorpusTest, ExactCaseAndUnderscores) {
  const WikiCorpus corpus(SmallCorpus());
  auto hit = corpus.Lookup("Robbie Tucker");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->page->id, "4");
  EXPECT_EQ(hit->kind, MatchKind::kExact);
  hit = corpus.Lookup("robbie_TUCKER");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->page->id, "4");
  EXPECT_EQ(hit->kind, MatchKind::kExact);
}

TEST(WikiCorpusTest, QualifierFallback) {
  const WikiCorpus corpus(SmallCorpus());
  auto hit = corpus.Lookup("John Locke (philosopher)");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->page->title, "John Locke");
  EXPECT_EQ(hit->kind, MatchKind::kQualifier);
  hit = corpus.Lookup("John Franks");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->page->id, "2");
  EXPECT_EQ(hit->kind, MatchKind::kQualifier);
}

TEST(WikiCorpusTest, FuzzyAndMiss) {
  const WikiCorpus corpus(SmallCorpus());
  auto hit = corpus.Lookup("Its Always Sunny in Philadelpia");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->page->id, "3");
  EXPECT_EQ(hit->kind, MatchKind::kFuzzy);
  EXPECT_GE(hit->similarity, kDefaultFuzzyThreshold);
  EXPECT_FALSE(corpus.Lookup("Completely Different"));
  EXPECT_EQ(corpus.FindById("2")->title, "John Franks (judge)");
  EXPECT_EQ(corpus.FindById("9"), nullptr);
}

TEST(WikiCorpusTest, ExactWinsOverFuzzyCandidates) {
  // "Robbie Tucker" is exact even though "Robbie Tuckers" sits earlier.
  const WikiCorpus corpus({{"a", "Robbie Tuckers", "x."},
                           {"b", "Robbie Tucker", "y."}});
  EXPECT_EQ(corpus.Lookup("Robbie Tucker")->page->id, "b");
}

TEST(WikiCorpusTest, MatchesExhaustiveScanOnToyCorpus) {
  const auto pages = testing::ToyPages(100, 5);
  const WikiCorpus corpus(pages);
  boost::random::mt19937_64 rng(9);
  boost::random::uniform_int_distribution<std::size_t> pick(0, pages.size() - 1);
  boost::random::uniform_int_distribution<int> edits(0, 6);
  boost::random::uniform_int_distribution<int> letter('a', 'z');
  std::size_t hits = 0;
  std::size_t misses = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::string query = pages[pick(rng)].title;
    const int n = edits(rng);
    for (int e = 0; e < n; ++e) {
      boost::random::uniform_int_distribution<std::size_t> pos(0, query.size() - 1);
      query[pos(rng)] = static_cast<char>(letter(rng));
    }
    if (trial % 7 == 0) query += " (disambiguation)";
    const WikiPage* expected = ScanLookup(pages, query, kDefaultFuzzyThreshold);
    const auto got = corpus.Lookup(query);
    ASSERT_EQ(got.has_value(), expected != nullptr) << query;
    if (expected) {
      EXPECT_EQ(got->page->id, expected->id) << query;
      ++hits;
    } else {
      ++misses;
    }
  }
  // The scan has to see both outcomes to mean anything.
  EXPECT_GT(hits, 50u);
  EXPECT_GT(misses, 20u);
}

}  // namespace
}  // namespace briefforge
