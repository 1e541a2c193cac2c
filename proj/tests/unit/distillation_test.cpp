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

#include <gtest/gtest.h>

#include "briefforge/errors.hpp"
#include "briefforge/lm.hpp"
#include "briefforge/mock_lm.hpp"
#include "briefforge/prompts.hpp"
#include "briefforge/records.hpp"
#include "briefforge/text.hpp"
#include "test_support.hpp"

namespace briefforge {
namespace {

using testing::AdditiveScorer;

PruneConfig ConfigWith(LanguageModelPtr scorer, double epsilon = 0.0,
                       std::size_t keep_min = 1) {
  PruneConfig config;
  config.scorer = std::move(scorer);
  config.epsilon = epsilon;
  config.min_sentences_per_doc = keep_min;
  return config;
}

TEST(HelpfulnessTest, SignAndTieRule) {
  AdditiveScorer scorer({{"keep", 0.5}, {"drop", -0.5}, {"inert", 0.0}});
  const std::vector<SourceDoc> without = {{"T", "Base sentence.", true}};
  auto with = [](std::string s) {
    return std::vector<SourceDoc>{{"T", "Base sentence. " + s, true}};
  };
  // Removing the sentence lowers loglik by 0.5: helpful.
  auto v = Helpfulness(scorer, "q?", without, with("A keep here."), "a", 0.0, 3);
  EXPECT_DOUBLE_EQ(v.delta_loglik, -0.5);
  EXPECT_FALSE(v.unhelpful);
  EXPECT_EQ(v.sentence_index, 3u);
  // Removal raises loglik by 0.5: unhelpful, unless epsilon reaches it.
  v = Helpfulness(scorer, "q?", without, with("A drop here."), "a", 0.0, 0);
  EXPECT_DOUBLE_EQ(v.delta_loglik, 0.5);
  EXPECT_TRUE(v.unhelpful);
  EXPECT_FALSE(
      Helpfulness(scorer, "q?", without, with("A drop here."), "a", 0.5, 0).unhelpful);
  // Zero delta keeps the sentence.
  EXPECT_FALSE(
      Helpfulness(scorer, "q?", without, with("An inert here."), "a", 0.0, 0).unhelpful);
}

TEST(HelpfulnessTest, UnigramMockNoSharedWordIsATie) {
  auto mock = MakeMockLM({});
  const std::vector<SourceDoc> without = {{"T", "Paris is in France.", true}};
  const std::vector<SourceDoc> with = {
      {"T", "Paris is in France. Zebras graze quietly.", true}};
  const auto v = Helpfulness(*mock, "Where is Paris?", without, with, "France", 0.0, 1);
  EXPECT_DOUBLE_EQ(v.delta_loglik, 0.0);
  EXPECT_FALSE(v.unhelpful);
}

TEST(HelpfulnessTest, ScorerErrorsCarrySentenceIndex) {
  AdditiveScorer scorer({}, {"boom"});
  const std::vector<SourceDoc> docs = {{"T", "A boom here.", true}};
  try {
    Helpfulness(scorer, "q?", docs, docs, "a", 0.0, 4);
    FAIL() << "expected ScoringError";
  } catch (const ScoringError& e) {
    EXPECT_EQ(e.sentence_index(), 4u);
  }
}

TEST(PruneHeadTailTest, HandSteppedFiveSentenceExample) {
  // s1, s2 unhelpful then s3 helpful on the head pass; s5 unhelpful then s4
  // helpful on the tail pass.
  auto c = testing::MakeScriptedPruneCase(0b10011, 5, 11);
  const PruneResult r = PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer));
  EXPECT_EQ(r.first, 2u);
  EXPECT_EQ(r.last, 3u);
  EXPECT_FALSE(r.fallback);
  ASSERT_EQ(r.verdicts.size(), 5u);
  const std::size_t order[] = {0, 1, 2, 4, 3};
  const bool unhelpful[] = {true, true, false, true, false};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(r.verdicts[i].sentence_index, order[i]);
    EXPECT_EQ(r.verdicts[i].unhelpful, unhelpful[i]);
  }
  const SentenceDoc kept = ApplyPrune(c.doc, r);
  EXPECT_EQ(kept.sentences,
            (std::vector<std::string>{c.doc.sentences[2], c.doc.sentences[3]}));
}

TEST(PruneHeadTailTest, AllHelpfulIsNoOp) {
  auto c = testing::MakeScriptedPruneCase(0, 6, 12);
  const PruneResult r = PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer));
  EXPECT_EQ(r.first, 0u);
  EXPECT_EQ(r.last, 5u);
  EXPECT_EQ(r.verdicts.size(), 2u);
}

TEST(PruneHeadTailTest, AllUnhelpfulKeepsSmallestDelta) {
  auto c = testing::MakeScriptedPruneCase(0b1111, 4, 13);
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (c.removal_delta[i] < c.removal_delta[smallest]) smallest = i;
  }
  const PruneResult r = PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer));
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.first, smallest);
  EXPECT_EQ(r.last, smallest);
}

TEST(PruneHeadTailTest, MinSentencesFallbackWindow) {
  // Head eats 4 of 5 with keep_min 3: the window slides back to fit.
  auto c = testing::MakeScriptedPruneCase(0b01111, 5, 14);
  const PruneResult r = PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer, 0.0, 3));
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.size(), 3u);
  EXPECT_LE(r.last, 4u);
  // keep_min larger than the document keeps everything.
  const PruneResult whole =
      PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer, 0.0, 9));
  EXPECT_EQ(whole.first, 0u);
  EXPECT_EQ(whole.last, 4u);
}

TEST(PruneHeadTailTest, MatchesBruteForceOverAllPatterns) {
  std::size_t cases = 0;
  for (std::uint32_t pattern = 0; pattern < 256; ++pattern) {
    for (std::uint64_t d = 0; d < 6; ++d) {
      const std::size_t n = 1 + (pattern * 7 + d * 3) % 8;
      auto c = testing::MakeScriptedPruneCase(pattern, n, pattern * 100 + d);
      const double eps = d % 3 == 0 ? 0.0 : 0.25 * static_cast<double>(d % 3);
      const std::size_t keep_min = 1 + d % 2;
      const PruneResult r =
          PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer, eps, keep_min));
      const auto expected = testing::SimulateGreedyPrune(c.removal_delta, eps, keep_min);
      ASSERT_EQ(r.first, expected.first) << pattern << "/" << d;
      ASSERT_EQ(r.last, expected.last) << pattern << "/" << d;
      ASSERT_EQ(r.fallback, expected.fallback);
      ASSERT_LE(r.first, r.last);
      ASSERT_LT(r.last, n);
      ++cases;
    }
  }
  EXPECT_EQ(cases, 256u * 6);
}

TEST(PruneHeadTailTest, RaisingEpsilonNeverShrinksSpan) {
  for (std::uint32_t pattern = 0; pattern < 256; pattern += 3) {
    auto c = testing::MakeScriptedPruneCase(pattern, 8, pattern + 5000);
    std::size_t first = 0;
    std::size_t last = 0;
    bool have = false;
    for (double eps : {0.0, 0.25, 0.5, 1.0, 2.0, 5.0}) {
      const PruneResult r = PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer, eps));
      if (r.fallback) continue;
      if (have) {
        EXPECT_LE(r.first, first) << pattern << " eps " << eps;
        EXPECT_GE(r.last, last) << pattern << " eps " << eps;
      }
      first = r.first;
      last = r.last;
      have = true;
    }
  }
}

TEST(PruneHeadTailTest, RejectsBadInput) {
  auto c = testing::MakeScriptedPruneCase(0, 3, 1);
  EXPECT_THROW(PruneHeadTail(SentenceDoc{}, c.context, ConfigWith(c.scorer)),
               UsageError);
  EXPECT_THROW(PruneHeadTail(c.doc, c.context, ConfigWith(c.scorer, -0.1)),
               UsageError);
  EXPECT_THROW(PruneHeadTail(c.doc, c.context, ConfigWith(nullptr)), UsageError);
  auto bad = c.context;
  bad.doc_index = 7;
  EXPECT_THROW(PruneHeadTail(c.doc, bad, ConfigWith(c.scorer)), UsageError);
}

TEST(ApplyPruneTest, ShiftsOrigin) {
  SentenceDoc doc{"T", {"A.", "B.", "C.", "D."}, PageAnchor{"p", 10, 13}};
  PruneResult r;
  r.first = 1;
  r.last = 2;
  const SentenceDoc out = ApplyPrune(doc, r);
  EXPECT_EQ(out.sentences, (std::vector<std::string>{"B.", "C."}));
  EXPECT_EQ(*out.origin, (PageAnchor{"p", 11, 12}));
}

QAExample SunnyShape() {
  const std::string tucker =
      "Tucker trivia appears in a fan wiki. "
      "Robbie Tucker (born April 5, 2001) is an American actor. His best known "
      "role to date is that of Fenmore Baldwin on the CBS soap opera The Young "
      "and the Restless. He is also the brother of actress Jillian Rose Reed. "
      "Fan footnote lists his pets.";
  const std::string sunny =
      "Sunny gossip mentions a catering truck. "
      "It's Always Sunny in Philadelphia is an American sitcom created by Rob "
      "McElhenney and developed with Glenn Howerton for FX. The series follows "
      "the exploits of \"The Gang\", a group of narcissistic and sociopathic "
      "friends who run the Irish dive bar Paddy's Pub in South Philadelphia.";
  return QAExample{
      "sunny",
      "Robbie Tucker plays in what series that follows a group of friends who "
      "run an Irish bar?",
      {"It's Always Sunny in Philadelphia"},
      {{"John Franks (judge)", "Sir John Franks (1770–1852), was an Indian judge.",
        false},
       {"Robbie Tucker", tucker, true},
       {"It's Always Sunny in Philadelphia", sunny, true}}};
}

TEST(CurateSummaryTest, SunnyShape) {
  auto scorer = std::make_shared<AdditiveScorer>(std::map<std::string, double>{
      {"trivia", -1.0}, {"gossip", -1.0}, {"footnote", -1.0}, {"Fenmore", 0.5},
      {"Paddy's", 0.5}});
  const CuratedSummary out = CurateSummary(SunnyShape(), ConfigWith(scorer));
  EXPECT_FALSE(out.unpruned_oracle);
  ASSERT_EQ(out.spans.size(), 2u);
  EXPECT_EQ(out.spans[0].doc_index, 1u);
  EXPECT_EQ(out.spans[0].first, 1u);
  EXPECT_EQ(out.spans[0].last, 3u);
  EXPECT_EQ(out.spans[1].first, 1u);
  EXPECT_EQ(out.spans[1].last, 2u);
  EXPECT_NE(out.summary.find("Robbie Tucker (born April 5, 2001)"), std::string::npos);
  EXPECT_NE(out.summary.find("Paddy's Pub"), std::string::npos);
  EXPECT_EQ(out.summary.find("John Franks"), std::string::npos);
  EXPECT_EQ(out.summary.find("trivia"), std::string::npos);
  EXPECT_EQ(out.summary.find("gossip"), std::string::npos);
  EXPECT_EQ(out.summary.find("footnote"), std::string::npos);
  EXPECT_NE(out.summary.find("Reed.\n\nIt's Always"), std::string::npos);
  EXPECT_EQ(SegmentSentences(out.summary).size(), 5u);
}

TEST(CurateSummaryTest, SingleOracleUnprunedEqualsDocument) {
  auto scorer = std::make_shared<AdditiveScorer>(std::map<std::string, double>{});
  QAExample ex{"one", "q?", {"a"}, {{"T", "  First one. Second one.\n", true}}};
  const CuratedSummary out = CurateSummary(ex, ConfigWith(scorer));
  EXPECT_EQ(out.summary, "First one. Second one.");
}

// Fails only on contexts where the Tucker document lost its head sentence,
// so the other oracle document still gets pruned.
class HeadlessTuckerFails final : public LanguageModel {
 public:
  double ScoreLoglik(const ScoreRequest& request) override {
    if (testing::ContainsToken(request.context, "Fenmore") &&
        !testing::ContainsToken(request.context, "trivia")) {
      throw TransportError("scripted outage", "test");
    }
    return inner_.ScoreLoglik(request);
  }
  Generation Generate(const GenerateRequest& request) override {
    return inner_.Generate(request);
  }
  std::string Name() const override { return "test:headless"; }

 private:
  AdditiveScorer inner_{{{"trivia", -1.0}, {"gossip", -1.0}}};
};

TEST(CurateSummaryTest, ScoringFailureKeepsDocumentAndFlags) {
  const QAExample ex = SunnyShape();
  const CuratedSummary out =
      CurateSummary(ex, ConfigWith(std::make_shared<HeadlessTuckerFails>()));
  EXPECT_TRUE(out.unpruned_oracle);
  ASSERT_TRUE(out.spans[0].error.has_value());
  EXPECT_FALSE(out.spans[1].error.has_value());
  EXPECT_EQ(out.spans[0].first, 0u);
  EXPECT_EQ(out.spans[0].last, 4u);
  EXPECT_EQ(out.summary.substr(0, ex.documents[1].text.size()), ex.documents[1].text);
  EXPECT_EQ(out.spans[1].first, 1u);
}

TEST(CurateSummaryTest, SpansAddUpToK) {
  auto scorer = std::make_shared<AdditiveScorer>(
      std::map<std::string, double>{{"dropa", -1.0}, {"dropb", -1.0}});
  QAExample ex{"two",
               "q?",
               {"a"},
               {{"A", "Keep one. Keep two. Keep three. A dropa here.", true},
                {"B", "A dropb first. Keep four. Keep five.", true},
                {"C", "Ignored distractor.", false}}};
  const CuratedSummary out = CurateSummary(ex, ConfigWith(scorer));
  const TrainingPair pair = BuildTrainingPair(ex, out.summary, true);
  EXPECT_EQ(pair.k, 5);
  EXPECT_EQ(out.spans[0].last - out.spans[0].first + 1, 3u);
  EXPECT_EQ(out.spans[1].last - out.spans[1].first + 1, 2u);
}

TEST(TrainingPairTest, InstructionEmbedsSentenceCount) {
  QAExample ex{"ex", "Who?", {"a"},
               {{"T", "One. Two. Three. Four. Five. Six. Seven.", true}}};
  const std::string summary = "S one. S two. S three. S four. S five. S six. S seven.";
  const TrainingPair with = BuildTrainingPair(ex, summary, true);
  EXPECT_EQ(with.id, "ex#k");
  EXPECT_EQ(with.k, 7);
  ASSERT_TRUE(with.instruction);
  EXPECT_EQ(ParseInstructionK(*with.instruction), 7);
  EXPECT_EQ(with.long_context, FormatDocuments(ex.documents));
  EXPECT_NE(TrainingPrompt(with).find(*with.instruction), std::string::npos);

  const TrainingPair without = BuildTrainingPair(ex, summary, false);
  EXPECT_EQ(without.id, "ex#auto");
  EXPECT_FALSE(without.instruction);
  EXPECT_EQ(without.k, 7);
  EXPECT_EQ(ParseCompressorPrompt(TrainingPrompt(without))->k, std::nullopt);

  EXPECT_THROW(BuildTrainingPair(ex, "   ", true), UsageError);
}

TEST(TrainingPairTest, JsonRoundTrip) {
  QAExample ex{"rt", "What \"quoted\" thing?", {"a"},
               {{"Title\twith tab", "Line one.\nLine two é.", true}}};
  for (bool with : {true, false}) {
    const TrainingPair pair = BuildTrainingPair(ex, "Line one.", with);
    const TrainingPair back = TrainingPairFromJson(TrainingPairToJson(pair));
    EXPECT_EQ(back.id, pair.id);
    EXPECT_EQ(back.question, pair.question);
    EXPECT_EQ(back.long_context, pair.long_context);
    EXPECT_EQ(back.instruction, pair.instruction);
    EXPECT_EQ(back.target_summary, pair.target_summary);
    EXPECT_EQ(back.k, pair.k);
  }
}

TEST(PairMixTest, ParseAndName) {
  for (PairMix mix : {PairMix::kBoth, PairMix::kInstructionOnly, PairMix::kAutoOnly}) {
    EXPECT_EQ(ParsePairMix(PairMixName(mix)), mix);
  }
  EXPECT_THROW(ParsePairMix("half"), UsageError);
}

TEST(DatasetStatsTest, HandArithmetic) {
  auto words = [](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += "w ";
    return s;
  };
  std::vector<TrainingPair> pairs(3);
  for (int i = 0; i < 3; ++i) {
    pairs[i].long_context = words(100 * (i + 1));
    pairs[i].target_summary = words(10);
    pairs[i].k = i == 2 ? 4 : 2;
    if (i == 0) pairs[i].instruction = MakeInstruction(2);
  }
  const DatasetStats stats = ComputeDatasetStats(pairs);
  EXPECT_EQ(stats.samples, 3u);
  EXPECT_EQ(stats.with_instruction, 1u);
  EXPECT_DOUBLE_EQ(stats.context_words_mean, 200.0);
  EXPECT_NEAR(stats.context_words_std, 81.6497, 1e-4);
  EXPECT_DOUBLE_EQ(stats.summary_words_mean, 10.0);
  EXPECT_DOUBLE_EQ(stats.summary_words_std, 0.0);
  EXPECT_EQ(stats.k_histogram, (std::map<int, std::size_t>{{2, 2}, {4, 1}}));
}

TEST(DatasetStatsTest, Empty) {
  const DatasetStats stats = ComputeDatasetStats({});
  EXPECT_EQ(stats.samples, 0u);
  EXPECT_EQ(stats.context_words_mean, 0.0);
  EXPECT_TRUE(stats.k_histogram.empty());
}

}  // namespace
}  // namespace briefforge
