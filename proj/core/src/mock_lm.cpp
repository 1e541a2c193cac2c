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

#include "briefforge/mock_lm.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

#include "briefforge/errors.hpp"
#include "briefforge/prompts.hpp"
#include "briefforge/text.hpp"
#include "json.hpp"

namespace briefforge {
namespace {

using nlohmann::json;

constexpr std::string_view kStopwords[] = {
    "a",     "an",    "the",  "of",    "in",    "on",    "at",   "to",
    "for",   "by",    "with", "from",  "and",   "or",    "but",  "is",
    "are",   "was",   "were", "be",    "been",  "being", "as",   "that",
    "this",  "these", "those", "it",   "its",   "his",   "her",  "their",
    "he",    "she",   "they", "what",  "which", "who",   "whom", "whose",
    "when",  "where", "why",  "how",   "do",    "does",  "did",  "has",
    "have",  "had",   "not",  "no",    "so",    "than",  "then", "into",
    "also",  "such",  "i",    "you",   "we",    "there", "s"};

bool IsStopword(std::string_view token) {
  return std::find(std::begin(kStopwords), std::end(kStopwords), token) !=
         std::end(kStopwords);
}

bool IsPassageHeader(std::string_view line) {
  line = Trim(line);
  if (!line.starts_with("Passage ") || !line.ends_with(':')) return false;
  std::string_view digits = line.substr(8, line.size() - 9);
  return !digits.empty() &&
         std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t SharedTypes(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<std::string> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(shared));
  return shared.size();
}

class MockBase : public LanguageModel {
 public:
  explicit MockBase(MockLMSpec spec) : spec_(std::move(spec)) {}

 protected:
  double SimulatedLatency(std::string_view prompt,
                          std::string_view output) const {
    return spec_.latency_base_ms +
           spec_.latency_per_word_ms *
               static_cast<double>(CountWords(prompt) + CountWords(output));
  }

  Generation Finish(const GenerateRequest& request, std::string text) const {
    Generation out;
    out.latency_ms = SimulatedLatency(request.prompt, text);
    out.text = std::move(text);
    return out;
  }

  MockLMSpec spec_;
};

class UnigramMock final : public MockBase {
 public:
  using MockBase::MockBase;

  double ScoreLoglik(const ScoreRequest& request) override {
    ValidateScoreRequest(request);
    const auto context = ContentTypes(request.context);
    const auto target = ContentTypes(request.target);
    return spec_.overlap_weight *
               static_cast<double>(SharedTypes(context, target)) -
           static_cast<double>(CountWords(request.target));
  }

  Generation Generate(const GenerateRequest& request) override {
    ValidateGenerateRequest(request);
    if (auto parsed = ParseCompressorPrompt(request.prompt)) {
      const auto sentences = PassageSentences(parsed->documents);
      const std::size_t k =
          parsed->k ? static_cast<std::size_t>(*parsed->k) : spec_.auto_sentences;
      std::vector<std::string> picked;
      for (std::size_t i : TopOverlapSentences(sentences, parsed->question, k)) {
        picked.push_back(sentences[i]);
      }
      return Finish(request, Join(picked, " "));
    }
    if (auto parsed = ParseReaderPrompt(request.prompt)) {
      const auto sentences = PassageSentences(parsed->passages);
      const auto top = TopOverlapSentences(sentences, parsed->question, 1);
      return Finish(request, top.empty() ? std::string() : sentences[top[0]]);
    }
    const auto sentences = SegmentSentences(request.prompt);
    return Finish(request, sentences.empty() ? std::string() : sentences[0]);
  }

  std::string Name() const override {
    std::ostringstream name;
    name << "mock:unigram:" << spec_.overlap_weight << ':'
         << spec_.auto_sentences;
    return name.str();
  }
};

class ScriptedMock final : public MockBase {
 public:
  using MockBase::MockBase;

  double ScoreLoglik(const ScoreRequest& request) override {
    ValidateScoreRequest(request);
    const std::string fp = ScoreFingerprint(request);
    auto it = spec_.scores.find(fp);
    if (it == spec_.scores.end()) {
      throw ScriptMissError("scripted mock has no score entry", RequestId(fp));
    }
    return it->second;
  }

  Generation Generate(const GenerateRequest& request) override {
    ValidateGenerateRequest(request);
    const std::string fp = GenerateFingerprint(request);
    auto it = spec_.generations.find(fp);
    if (it == spec_.generations.end()) {
      throw ScriptMissError("scripted mock has no generation entry",
                            RequestId(fp));
    }
    return Finish(request, it->second);
  }

  std::string Name() const override { return "mock:scripted"; }
};

class EchoMock final : public MockBase {
 public:
  using MockBase::MockBase;

  double ScoreLoglik(const ScoreRequest& request) override {
    throw CapabilityError("echo mock cannot score log-likelihoods",
                          RequestId(ScoreFingerprint(request)));
  }

  Generation Generate(const GenerateRequest& request) override {
    ValidateGenerateRequest(request);
    if (auto parsed = ParseCompressorPrompt(request.prompt)) {
      return Finish(request, parsed->documents);
    }
    if (auto parsed = ParseReaderPrompt(request.prompt)) {
      return Finish(request, parsed->passages);
    }
    return Finish(request, request.prompt);
  }

  std::string Name() const override { return "mock:echo"; }
};

}  // namespace

void MockLMSpec::AddGeneration(std::string_view prompt, std::string response) {
  generations[GenerateFingerprint({std::string(prompt), 1})] =
      std::move(response);
}

void MockLMSpec::AddScore(std::string_view context, std::string_view target,
                          double loglik) {
  scores[ScoreFingerprint({std::string(context), std::string(target)})] =
      loglik;
}

MockLMSpec ParseMockSpec(std::string_view json_text) {
  MockLMSpec spec;
  try {
    const json doc = json::parse(json_text);
    const std::string mode = doc.value("mode", std::string("unigram_overlap"));
    if (mode == "unigram_overlap") {
      spec.mode = MockMode::kUnigramOverlap;
    } else if (mode == "scripted") {
      spec.mode = MockMode::kScripted;
    } else if (mode == "echo") {
      spec.mode = MockMode::kEcho;
    } else {
      throw FormatError("unknown mock mode '" + mode + "'");
    }
    spec.overlap_weight = doc.value("overlap_weight", spec.overlap_weight);
    spec.auto_sentences = doc.value("auto_sentences", spec.auto_sentences);
    spec.latency_base_ms = doc.value("latency_base_ms", spec.latency_base_ms);
    spec.latency_per_word_ms =
        doc.value("latency_per_word_ms", spec.latency_per_word_ms);
    if (auto it = doc.find("script"); it != doc.end()) {
      for (const auto& [fp, value] : it->items()) {
        if (value.is_number()) {
          spec.scores[fp] = value.get<double>();
        } else {
          spec.generations[fp] = value.get<std::string>();
        }
      }
    }
    if (auto it = doc.find("generations"); it != doc.end()) {
      for (const auto& entry : *it) {
        spec.AddGeneration(entry.at("prompt").get<std::string>(),
                           entry.at("response").get<std::string>());
      }
    }
    if (auto it = doc.find("scores"); it != doc.end()) {
      for (const auto& entry : *it) {
        spec.AddScore(entry.at("context").get<std::string>(),
                      entry.at("target").get<std::string>(),
                      entry.at("loglik").get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid mock spec: ") + e.what());
  }
  return spec;
}

LanguageModelPtr MakeMockLM(MockLMSpec spec) {
  switch (spec.mode) {
    case MockMode::kUnigramOverlap:
      return std::make_shared<UnigramMock>(std::move(spec));
    case MockMode::kScripted:
      return std::make_shared<ScriptedMock>(std::move(spec));
    case MockMode::kEcho:
      return std::make_shared<EchoMock>(std::move(spec));
  }
  throw UsageError("unhandled mock mode");
}

std::vector<std::string> ContentTypes(std::string_view text) {
  std::vector<std::string> tokens = WordTokens(text);
  std::erase_if(tokens, [](const std::string& t) { return IsStopword(t); });
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

std::vector<std::string> PassageSentences(std::string_view block) {
  std::vector<std::string> sentences;
  std::string body;
  auto flush = [&] {
    for (auto& s : SegmentSentences(body)) sentences.push_back(std::move(s));
    body.clear();
  };
  bool expect_title = false;
  std::size_t pos = 0;
  while (pos <= block.size()) {
    std::size_t nl = block.find('\n', pos);
    if (nl == std::string_view::npos) nl = block.size();
    std::string_view line = block.substr(pos, nl - pos);
    if (IsPassageHeader(line)) {
      flush();
      expect_title = true;
    } else if (expect_title) {
      expect_title = false;
    } else {
      body.append(line);
      body.push_back('\n');
    }
    pos = nl + 1;
  }
  flush();
  return sentences;
}

std::vector<std::size_t> TopOverlapSentences(
    const std::vector<std::string>& sentences, std::string_view query,
    std::size_t k) {
  const auto query_types = ContentTypes(query);
  std::vector<std::size_t> overlap(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    overlap[i] = SharedTypes(ContentTypes(sentences[i]), query_types);
  }
  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return overlap[a] > overlap[b];
  });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace briefforge
