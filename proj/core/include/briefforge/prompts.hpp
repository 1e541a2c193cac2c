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

// Byte-exact prompt templates for the compressor and the reader, the
// sentence-budget instruction, and the budget modes that select between them.

#ifndef BRIEFFORGE_PROMPTS_HPP_
#define BRIEFFORGE_PROMPTS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "briefforge/corpus.hpp"

namespace briefforge {

inline constexpr int kHighSentences = 5;
inline constexpr int kMediumSentences = 10;
inline constexpr int kLowSentences = 20;

// Auto lets the compressor pick the summary length; Sentences(k) appends the
// user-controllable instruction.
class BudgetMode {
 public:
  static BudgetMode Auto() { return BudgetMode(std::nullopt); }
  // Throws UsageError for k < 1.
  static BudgetMode Sentences(int k);
  static BudgetMode High() { return Sentences(kHighSentences); }
  static BudgetMode Medium() { return Sentences(kMediumSentences); }
  static BudgetMode Low() { return Sentences(kLowSentences); }

  // Accepts "auto", "high", "medium", "low" and "k=N" (case-insensitive).
  static BudgetMode Parse(std::string_view text);

  bool is_auto() const { return !sentences_.has_value(); }
  std::optional<int> sentences() const { return sentences_; }
  // "auto" or "k=N".
  std::string ToString() const;

  bool operator==(const BudgetMode&) const = default;

 private:
  explicit BudgetMode(std::optional<int> k) : sentences_(k) {}
  std::optional<int> sentences_;
};

// "Summarize the documents relevant to the question in K sentences, where
// K = [P] k [\P]". Throws UsageError for k < 1.
std::string MakeInstruction(int k);

// The integer between "[P]" and "[\P]", if the text carries one.
std::optional<int> ParseInstructionK(std::string_view text);

// "Passage 1:\n<title>\n<text>" blocks in dataset order, separated by a
// blank line.
std::string FormatDocuments(std::span<const SourceDoc> docs);

std::string BuildCompressorPrompt(std::string_view question,
                                  std::string_view documents_text,
                                  const BudgetMode& mode);

std::string BuildReaderPrompt(std::string_view question,
                              std::string_view passages_text);

struct ParsedCompressorPrompt {
  std::string question;
  std::string documents;
  std::optional<int> k;
};

struct ParsedReaderPrompt {
  std::string question;
  std::string passages;
};

// Inverse of the builders above; nullopt when the text is not such a prompt.
std::optional<ParsedCompressorPrompt> ParseCompressorPrompt(
    std::string_view prompt);
std::optional<ParsedReaderPrompt> ParseReaderPrompt(std::string_view prompt);

}  // namespace briefforge

#endif  // BRIEFFORGE_PROMPTS_HPP_
