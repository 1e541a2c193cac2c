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

#include "briefforge/prompts.hpp"

#include <cctype>
#include <charconv>

#include "briefforge/errors.hpp"
#include "briefforge/text.hpp"

namespace briefforge {
namespace {

constexpr std::string_view kCompressorHead =
    "Write a high-quality summary of the provided documents with respect to "
    "the question.\n\n### This is the question: ";
constexpr std::string_view kCompressorDocs =
    "\n\n### These are the documents:\n\n";
constexpr std::string_view kCompressorTail = "\n\n### This is the summary:\n";

constexpr std::string_view kReaderInstruction =
    "Answer the question based on the given passages. Only give me the answer "
    "and do not output any other words.";
constexpr std::string_view kReaderPassages =
    "\n\nThe following are given passages.\n\n";
constexpr std::string_view kReaderQuestion = "\n\nQuestion: ";
constexpr std::string_view kReaderAnswer = "\n\nAnswer:";

constexpr std::string_view kInstructionHead =
    "Summarize the documents relevant to the question in K sentences, where "
    "K = [P] ";
constexpr std::string_view kInstructionTail = " [\\P]";

}  // namespace

BudgetMode BudgetMode::Sentences(int k) {
  if (k < 1) throw UsageError("sentence budget must be >= 1");
  return BudgetMode(k);
}

BudgetMode BudgetMode::Parse(std::string_view text) {
  const std::string lowered = ToLower(Trim(text));
  if (lowered == "auto") return Auto();
  if (lowered == "high") return High();
  if (lowered == "medium") return Medium();
  if (lowered == "low") return Low();
  if (lowered.starts_with("k=")) {
    int k = 0;
    const char* first = lowered.data() + 2;
    const char* last = lowered.data() + lowered.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && first != last) return Sentences(k);
  }
  throw UsageError("unknown budget mode '" + std::string(text) +
                   "' (expected auto|high|medium|low|k=N)");
}

std::string BudgetMode::ToString() const {
  return sentences_ ? "k=" + std::to_string(*sentences_) : "auto";
}

std::string MakeInstruction(int k) {
  if (k < 1) throw UsageError("instruction sentence count must be >= 1");
  std::string out(kInstructionHead);
  out += std::to_string(k);
  out += kInstructionTail;
  return out;
}

std::optional<int> ParseInstructionK(std::string_view text) {
  const std::size_t open = text.find("[P]");
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t close = text.find("[\\P]", open + 3);
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view inner = Trim(text.substr(open + 3, close - open - 3));
  int k = 0;
  auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), k);
  if (ec != std::errc() || ptr != inner.data() + inner.size() || inner.empty()) {
    return std::nullopt;
  }
  return k;
}

std::string FormatDocuments(std::span<const SourceDoc> docs) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += "Passage " + std::to_string(i + 1) + ":\n";
    out += docs[i].title;
    out += '\n';
    out += docs[i].text;
  }
  return out;
}

std::string BuildCompressorPrompt(std::string_view question,
                                  std::string_view documents_text,
                                  const BudgetMode& mode) {
  std::string out(kCompressorHead);
  out += question;
  out += kCompressorDocs;
  out += documents_text;
  out += kCompressorTail;
  if (auto k = mode.sentences()) {
    out += '\n';
    out += MakeInstruction(*k);
  }
  return out;
}

std::string BuildReaderPrompt(std::string_view question,
                              std::string_view passages_text) {
  std::string out(kReaderInstruction);
  out += kReaderPassages;
  out += passages_text;
  out += "\n\n";
  out += kReaderInstruction;
  out += kReaderQuestion;
  out += question;
  out += kReaderAnswer;
  return out;
}

std::optional<ParsedCompressorPrompt> ParseCompressorPrompt(
    std::string_view prompt) {
  if (!prompt.starts_with(kCompressorHead)) return std::nullopt;
  prompt.remove_prefix(kCompressorHead.size());
  const std::size_t docs = prompt.find(kCompressorDocs);
  const std::size_t tail = prompt.rfind(kCompressorTail);
  if (docs == std::string_view::npos || tail == std::string_view::npos ||
      tail < docs + kCompressorDocs.size()) {
    return std::nullopt;
  }
  ParsedCompressorPrompt parsed;
  parsed.question = std::string(prompt.substr(0, docs));
  const std::size_t docs_begin = docs + kCompressorDocs.size();
  parsed.documents = std::string(prompt.substr(docs_begin, tail - docs_begin));
  parsed.k = ParseInstructionK(prompt.substr(tail + kCompressorTail.size()));
  return parsed;
}

std::optional<ParsedReaderPrompt> ParseReaderPrompt(std::string_view prompt) {
  std::string head(kReaderInstruction);
  head += kReaderPassages;
  if (!prompt.starts_with(head) || !prompt.ends_with(kReaderAnswer)) {
    return std::nullopt;
  }
  prompt.remove_prefix(head.size());
  prompt.remove_suffix(kReaderAnswer.size());
  std::string middle("\n\n");
  middle += kReaderInstruction;
  middle += kReaderQuestion;
  const std::size_t split = prompt.rfind(middle);
  if (split == std::string_view::npos) return std::nullopt;
  return ParsedReaderPrompt{std::string(prompt.substr(split + middle.size())),
                            std::string(prompt.substr(0, split))};
}

}  // namespace briefforge
