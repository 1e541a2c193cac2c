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

// Acceptance suite: one line per criterion with its wall time. Exit status is
// non-zero when any criterion fails, except those listed as unattainable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "briefforge/distillation.hpp"
#include "briefforge/evaluation.hpp"
#include "briefforge/expansion.hpp"
#include "briefforge/prompts.hpp"
#include "briefforge/records.hpp"
#include "briefforge/text.hpp"
#include "cli.hpp"
#include "reference_metrics.hpp"
#include "test_support.hpp"

namespace briefforge {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  // Known to fail as specified; reported but not counted against the exit code.
  const char* unattainable = nullptr;
  std::function<Outcome()> run;
};

// ---- AC1 -------------------------------------------------------------------

Outcome PromptGoldens() {
  const std::string question =
      "Robbie Tucker plays in what series that follows a group of friends who "
      "run an Irish bar?";
  const std::vector<SourceDoc> docs = {
      {"John Franks (judge)", "Sir John Franks (1770–1852), was an Indian judge.", false},
      {"Robbie Tucker", "Robbie Tucker (born April 5, 2001) is an American actor.", true}};
  auto golden = [](const char* name) {
    return testing::ReadFile(testing::FixturePath(name));
  };
  const std::string documents = FormatDocuments(docs);
  std::vector<std::string> bad;
  if (documents != golden("documents.golden")) bad.push_back("documents");
  if (BuildCompressorPrompt(question, documents, BudgetMode::Auto()) !=
      golden("compressor_auto.golden")) {
    bad.push_back("compressor_auto");
  }
  if (BuildCompressorPrompt(question, documents, BudgetMode::Medium()) !=
      golden("compressor_k10.golden")) {
    bad.push_back("compressor_k10");
  }
  if (BuildReaderPrompt(question, documents) != golden("reader.golden")) {
    bad.push_back("reader");
  }
  for (int k : {5, 10, 20}) {
    const std::string want =
        "Summarize the documents relevant to the question in K sentences, where K = [P] " +
        std::to_string(k) + " [\\P]";
    if (MakeInstruction(k) != want) bad.push_back("instruction k=" + std::to_string(k));
  }
  if (!bad.empty()) return {false, "mismatch: " + Join(bad, ", ")};
  return {true, "3 prompt goldens + documents block + instruction k in {5,10,20}"};
}

// ---- AC2 -------------------------------------------------------------------

Outcome RateFixtures() {
  struct Case {
    std::size_t pre, post;
    double exact;
    const char* display;
  };
  std::vector<std::string> notes;
  bool ok = true;
  for (const Case& c : {Case{10343, 282, 36.68, "36x"}, Case{11179, 140, 79.85, "80x"}}) {
    const CompressionRate r = ComputeCompressionRate(c.pre, c.post);
    const bool exact_ok = std::abs(r.exact - c.exact) <= 1e-2;
    const bool display_ok = r.ToString() == c.display;
    ok = ok && exact_ok && display_ok;
    std::ostringstream s;
    s << c.pre << "/" << c.post << "=" << r.exact << " -> " << r.ToString() << " (want "
      << c.display << ")";
    notes.push_back(s.str());
  }
  return {ok, Join(notes, "; ")};
}

// ---- AC3 -------------------------------------------------------------------

Outcome MetricFixtures() {
  const std::vector<std::string> sunny = {"It's Always Sunny in Philadelphia"};
  const std::vector<std::string> liberal = {"Father of Liberalism"};
  const int em_correct = ExactMatch("It's Always Sunny in Philadelphia", sunny);
  const int em_incorrect = ExactMatch("John Locke", liberal);
  if (em_correct != 1 || em_incorrect != 0) {
    return {false, "worked-example EM gave {" + std::to_string(em_correct) + ", " +
                       std::to_string(em_incorrect) + "}"};
  }
  std::size_t n = 0;
  for (const testing::MetricCase& c : testing::MetricCases()) {
    const std::vector<std::string> golds = {c.gold};
    const int ref_em = testing::RefNormalize(c.prediction) == testing::RefNormalize(c.gold);
    if (ExactMatch(c.prediction, golds) != ref_em || ref_em != c.em ||
        F1Score(c.prediction, golds) != testing::RefF1(c.gold, c.prediction) ||
        F1Score(c.prediction, golds) != c.f1) {
      return {false, std::string("case disagrees: ") + c.prediction + " | " + c.gold};
    }
    ++n;
  }
  return {n == 20, "EM {1, 0}; " + std::to_string(n) + "/20 cases equal the reference"};
}

// ---- AC4 -------------------------------------------------------------------

Outcome PruneEquivalence() {
  std::mt19937_64 rng(4);
  std::size_t cases = 0;
  for (std::uint32_t pattern = 0; pattern < 256; ++pattern) {
    for (int d = 0; d < 50; ++d) {
      const std::size_t n = 1 + rng() % 8;
      const double eps = 0.25 * static_cast<double>(rng() % 3);
      const std::size_t keep_min = 1 + rng() % 2;
      auto c = testing::MakeScriptedPruneCase(pattern, n, rng());
      PruneConfig config;
      config.scorer = c.scorer;
      config.epsilon = eps;
      config.min_sentences_per_doc = keep_min;
      const PruneResult r = PruneHeadTail(c.doc, c.context, config);
      const auto want = testing::SimulateGreedyPrune(c.removal_delta, eps, keep_min);
      if (r.first != want.first || r.last != want.last || r.fallback != want.fallback) {
        return {false, "pattern " + std::to_string(pattern) + " doc " + std::to_string(d) +
                           " differs from brute force"};
      }
      const SentenceDoc kept = ApplyPrune(c.doc, r);
      const std::vector<std::string> slice(c.doc.sentences.begin() + r.first,
                                           c.doc.sentences.begin() + r.last + 1);
      if (kept.sentences != slice || kept.sentences.empty()) {
        return {false, "kept span is not contiguous"};
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " pattern/doc cases match; spans contiguous"};
}

// ---- AC5 / AC7 helpers -----------------------------------------------------

int RunCli(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "briefforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

struct Workspace {
  testing::TempDir dir;
  std::string P(std::string_view name) const { return (dir / name).string(); }
};

void WriteToyInputs(const Workspace& ws, std::size_t pages, std::size_t examples,
                    std::uint64_t seed) {
  const auto wiki = testing::ToyPages(pages, seed);
  testing::WritePagesJsonl(ws.dir / "wiki.jsonl", wiki);
  testing::WriteExamplesJsonl(ws.dir / "seed.jsonl",
                              testing::ToyExamples(wiki, examples, seed + 1));
  testing::WriteFile(ws.dir / "mock.json", R"({"mode":"unigram_overlap"})");
}

int Synthesize(const Workspace& ws, const std::string& out, const std::string& parallel) {
  return RunCli({"synthesize", "--seed-data", ws.P("seed.jsonl"), "--wiki-corpus",
                 ws.P("wiki.jsonl"), "--mock", ws.P("mock.json"), "--seed", "2026",
                 "--parallel", parallel, "--out", ws.P(out), "--audit",
                 ws.P(out + ".audit.jsonl")});
}

// ---- AC5 -------------------------------------------------------------------

Outcome InstructionConsistency() {
  Workspace ws;
  WriteToyInputs(ws, 120, 100, 55);
  if (int code = Synthesize(ws, "syn", "4"); code != cli::kExitOk) {
    return {false, "synthesize exited " + std::to_string(code)};
  }
  const auto pairs = LoadTrainingPairs(ws.dir / "syn" / "train.jsonl");
  std::size_t with = 0, agree = 0;
  for (const TrainingPair& p : pairs) {
    if (!p.instruction) continue;
    ++with;
    const auto k = ParseInstructionK(*p.instruction);
    if (k && static_cast<std::size_t>(*k) == SegmentSentences(p.target_summary).size()) {
      ++agree;
    }
  }
  const bool ok = pairs.size() == 200 && with == 100 && agree == with;
  return {ok, std::to_string(agree) + "/" + std::to_string(with) +
                  " instruction pairs agree (" + std::to_string(pairs.size()) + " pairs)"};
}

// ---- AC6 -------------------------------------------------------------------

double ClampedNormalMean(double mean, double stddev, double floor) {
  const int steps = 20000;
  const double lo = -12.0, hi = 12.0, h = (hi - lo) / steps;
  auto f = [&](double z) {
    return std::max(floor, mean + stddev * z) * std::exp(-0.5 * z * z) /
           std::sqrt(2 * std::numbers::pi);
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < steps; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4 : 2);
  return sum * h / 3;
}

Outcome ExpansionStatistics() {
  ExpansionConfig config;  // mean 8, std 3, floor 1
  std::mt19937_64 rng(6);
  double total = 0;
  for (int i = 0; i < 10000; ++i) total += SampleRatio(config, rng);
  const double empirical = total / 10000;
  const double expected = ClampedNormalMean(8, 3, 1);
  const double rel = std::abs(empirical - expected) / expected;

  const auto pages = testing::ToyPages(120, 66);
  const WikiCorpus corpus(pages);
  const auto examples = testing::ToyExamples(pages, 200, 67);
  config.rng_seed = 66;
  std::size_t docs = 0, contained = 0;
  for (const QAExample& ex : examples) {
    const ExpandedExample out = ExpandExample(ex, corpus, config);
    for (std::size_t i = 0; i < ex.documents.size(); ++i) {
      const auto before = SegmentSentences(ex.documents[i].text);
      const auto after = SegmentSentences(out.example.documents[i].text);
      ++docs;
      bool found = false;
      for (std::size_t s = 0; !found && s + before.size() <= after.size(); ++s) {
        found = std::equal(before.begin(), before.end(), after.begin() + s);
      }
      contained += found;
    }
  }
  std::ostringstream s;
  s << "mean " << empirical << " vs integrated " << expected << " (" << 100 * rel
    << "%); " << contained << "/" << docs << " documents contain their original";
  return {rel <= 0.02 && contained == docs, s.str()};
}

// ---- AC7 -------------------------------------------------------------------

Outcome Determinism() {
  Workspace ws;
  WriteToyInputs(ws, 80, 60, 77);
  std::vector<std::string> diffs;
  for (const char* run : {"s1", "s1b", "s8"}) {
    if (Synthesize(ws, run, run == std::string("s8") ? "8" : "1") != cli::kExitOk) {
      return {false, std::string("synthesize failed for ") + run};
    }
  }
  for (const char* other : {"s1b", "s8"}) {
    for (const char* file : {"train.jsonl", "stats.json", "expansion.json"}) {
      if (testing::ReadFile(ws.dir / "s1" / file) != testing::ReadFile(ws.dir / other / file)) {
        diffs.push_back(std::string(other) + "/" + file);
      }
    }
    if (testing::ReadFile(ws.dir / "s1.audit.jsonl") !=
        testing::ReadFile(ws.dir / (std::string(other) + ".audit.jsonl"))) {
      diffs.push_back(std::string(other) + " audit");
    }
  }
  for (const char* mode : {"auto", "high", "k=7"}) {
    std::vector<std::string> outputs;
    for (const char* parallel : {"1", "1", "8"}) {
      const std::string out = ws.P(std::string("run-") + mode + "-" + parallel + "-" +
                                   std::to_string(outputs.size()) + ".jsonl");
      if (RunCli({"run", "--data", ws.P("seed.jsonl"), "--mock", ws.P("mock.json"),
                  "--mode", mode, "--seed", "2026", "--parallel", parallel, "--out",
                  out}) != cli::kExitOk) {
        return {false, std::string("run failed for mode ") + mode};
      }
      outputs.push_back(testing::ReadFile(out));
    }
    if (outputs[0] != outputs[1] || outputs[0] != outputs[2]) {
      diffs.push_back(std::string("run ") + mode);
    }
  }
  if (!diffs.empty()) return {false, "differs: " + Join(diffs, ", ")};
  return {true, "synthesize x3 and run x9 byte-identical (parallel 1 and 8)"};
}

// ---- AC8 -------------------------------------------------------------------

Outcome CostDirection() {
  CostModel model;
  model.compressor_params = 3e9;
  model.reader_params = 70e9;
  model.flops_per_token_coeff = 2.0;
  const double context = 10000;
  const double summary = context / 32;
  const double answer = 5;
  const double full = EstimateTflops(model, context, answer, CostRole::kReader);
  const double pipeline = EstimateTflops(model, context, summary, CostRole::kCompressor) +
                          EstimateTflops(model, summary, answer, CostRole::kReader);
  const double share = pipeline / full;
  std::ostringstream s;
  s << "pipeline " << pipeline << " TFLOPs vs full " << full << " TFLOPs = "
    << 100 * share << "% (< 15%)";
  return {share < 0.15, s.str()};
}

// ---- AC9 -------------------------------------------------------------------

Outcome AdherenceFixture() {
  struct Case {
    std::vector<std::size_t> counts;
    int expected;
    double mean, mad;
  };
  const Case cases[] = {{{5, 6, 7, 6, 7}, 5, 6.2, 1.2},
                        {{10, 11, 10, 10, 11}, 10, 10.4, 0.4},
                        {{18, 18, 17, 19, 18}, 20, 18.0, 2.0}};
  for (const Case& c : cases) {
    const AdherenceStats s = ComputeAdherence(c.counts, c.expected);
    if (s.mean != c.mean || std::abs(s.mean_abs_deviation - c.mad) > 1e-12 ||
        s.n != c.counts.size()) {
      return {false, "k=" + std::to_string(c.expected) + " mean " + std::to_string(s.mean)};
    }
  }
  return {true,
          "means 6.2 / 10.4 / 18.0 reproduced from count fixtures; trained-model "
          "figures are references only"};
}

}  // namespace
}  // namespace briefforge

int main() {
  using briefforge::Criterion;
  const std::vector<Criterion> criteria = {
      {"AC1", "prompt bit-exactness", 1, nullptr, briefforge::PromptGoldens},
      {"AC2", "compression-rate fixtures", 1,
       "round-to-nearest maps 36.68 to 37x, not 36x; no single rule gives both 36x and 80x",
       briefforge::RateFixtures},
      {"AC3", "metric fixtures", 1, nullptr, briefforge::MetricFixtures},
      {"AC4", "pruning oracle equivalence", 30, nullptr, briefforge::PruneEquivalence},
      {"AC5", "instruction/k consistency", 30, nullptr, briefforge::InstructionConsistency},
      {"AC6", "expansion statistics", 30, nullptr, briefforge::ExpansionStatistics},
      {"AC7", "determinism", 60, nullptr, briefforge::Determinism},
      {"AC8", "cost model direction", 1, nullptr, briefforge::CostDirection},
      {"AC9", "adherence statistics", 1, nullptr, briefforge::AdherenceFixture},
  };
  int unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    briefforge::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_s) {
      outcome.pass = false;
      outcome.detail += " [over " + std::to_string(static_cast<int>(c.budget_s)) + "s budget]";
    }
    std::printf("%s %s %8.3fs  %s: %s\n", c.id, outcome.pass ? "PASS" : "FAIL", seconds,
                c.title, outcome.detail.c_str());
    if (!outcome.pass) {
      if (c.unattainable) {
        std::printf("    known unattainable: %s\n", c.unattainable);
      } else {
        ++unexpected;
      }
    }
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
