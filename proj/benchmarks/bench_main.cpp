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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "briefforge/corpus.hpp"
#include "briefforge/distillation.hpp"
#include "briefforge/evaluation.hpp"
#include "briefforge/expansion.hpp"
#include "briefforge/mock_lm.hpp"
#include "briefforge/prompts.hpp"
#include "briefforge/text.hpp"

namespace briefforge {
namespace {

const char* const kWords[] = {"harbour", "granite", "festival", "river",  "archive",
                              "copper",  "valley",  "tower",    "market", "lantern",
                              "railway", "meadow",  "chapel",   "timber", "bridge"};

std::string Sentence(std::mt19937_64& rng) {
  std::string s = "Traders";
  const std::size_t n = 6 + rng() % 7;
  for (std::size_t i = 0; i < n; ++i) {
    s += ' ';
    s += kWords[rng() % std::size(kWords)];
  }
  return s + " in " + std::to_string(1200 + rng() % 800) + ".";
}

std::string Paragraph(std::size_t sentences, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string text;
  for (std::size_t i = 0; i < sentences; ++i) {
    if (i) text += i % 7 == 0 ? "\n" : " ";
    text += Sentence(rng);
  }
  return text;
}

std::vector<WikiPage> Pages(std::size_t count) {
  std::vector<WikiPage> pages;
  for (std::size_t i = 0; i < count; ++i) {
    pages.push_back({"p" + std::to_string(i),
                     std::string(kWords[i % std::size(kWords)]) + " " +
                         kWords[(i / std::size(kWords)) % std::size(kWords)] + " " +
                         std::to_string(i),
                     Paragraph(30, i)});
  }
  return pages;
}

void BM_SegmentSentences(benchmark::State& state) {
  const std::string text = Paragraph(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(SegmentSentences(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_SegmentSentences)->Arg(50)->Arg(500);

void BM_CountWords(benchmark::State& state) {
  const std::string text = Paragraph(800, 2);  // roughly 10k words
  for (auto _ : state) benchmark::DoNotOptimize(CountWords(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_CountWords);

void BM_LookupExact(benchmark::State& state) {
  const WikiCorpus corpus(Pages(static_cast<std::size_t>(state.range(0))));
  const std::string title = corpus.pages()[corpus.size() / 2].title;
  for (auto _ : state) benchmark::DoNotOptimize(corpus.Lookup(title));
}
BENCHMARK(BM_LookupExact)->Arg(1000);

void BM_LookupFuzzy(benchmark::State& state) {
  const WikiCorpus corpus(Pages(static_cast<std::size_t>(state.range(0))));
  std::string title = corpus.pages()[corpus.size() / 2].title;
  title[1] = 'x';
  for (auto _ : state) benchmark::DoNotOptimize(corpus.Lookup(title));
}
BENCHMARK(BM_LookupFuzzy)->Arg(100)->Arg(1000);

void BM_Pinpoint(benchmark::State& state) {
  const auto page = SegmentSentences(Paragraph(60, 3));
  SentenceDoc doc{"t", {page.begin() + 40, page.begin() + 43}, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(Pinpoint(page, doc, 0.5, "p"));
}
BENCHMARK(BM_Pinpoint);

void BM_PruneHeadTail(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  SentenceDoc doc = SentenceDoc::FromText("T", Paragraph(n, 4));
  PruneContext context{"Which granite tower stood by the river?", "1450",
                       {{"T", doc.Text(), true}, {"D", Paragraph(5, 5), false}}, 0};
  PruneConfig config;
  config.scorer = MakeMockLM({});
  for (auto _ : state) benchmark::DoNotOptimize(PruneHeadTail(doc, context, config));
}
BENCHMARK(BM_PruneHeadTail)->Arg(8)->Arg(64);

void BM_F1Score(benchmark::State& state) {
  const std::vector<std::string> golds = {"The Adventures of Ozzie and Harriet",
                                          "Ozzie and Harriet"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(F1Score("the adventures of ozzie & harriet!", golds));
  }
}
BENCHMARK(BM_F1Score);

void BM_CompressorPrompt(benchmark::State& state) {
  std::vector<SourceDoc> docs;
  for (int i = 0; i < 10; ++i) docs.push_back({"Doc " + std::to_string(i), Paragraph(40, i), i < 2});
  const std::string documents = FormatDocuments(docs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildCompressorPrompt("Which tower?", documents, BudgetMode::High()));
  }
}
BENCHMARK(BM_CompressorPrompt);

}  // namespace
}  // namespace briefforge

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so the entry point is defined here.
BENCHMARK_MAIN();
