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

// Text primitives shared by every stage of the pipeline: sentence
// segmentation, whitespace word counting, title normalization and edit
// distance. The same segmenter is used for expansion, pruning, instruction
// creation and evaluation, so boundaries only need to be consistent.

#ifndef BRIEFFORGE_TEXT_HPP_
#define BRIEFFORGE_TEXT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace briefforge {

// Splits `text` into sentences. A boundary is a run of terminal punctuation
// (. ! ?), optionally followed by closing quotes or brackets, then
// whitespace, then an uppercase letter, digit, opening quote or bracket.
// Periods ending a known abbreviation, a single-letter initial or a dotted
// acronym ("B.A.") do not end a sentence. Newlines are ordinary whitespace.
// Each sentence is the trimmed input substring; empty input yields [].
std::vector<std::string> SegmentSentences(std::string_view text);

// Number of maximal runs of non-whitespace characters.
std::size_t CountWords(std::string_view text);

// Joins with `sep` between consecutive elements.
std::string Join(std::span<const std::string> parts, std::string_view sep);

// Strips leading and trailing ASCII whitespace.
std::string_view Trim(std::string_view text);

// Collapses every whitespace run to a single space and trims.
std::string CollapseWhitespace(std::string_view text);

// ASCII lowercase.
std::string ToLower(std::string_view text);

// Lowercases, replaces underscores with spaces, drops ASCII punctuation and
// collapses whitespace: "John_Locke (Philosopher)" -> "john locke philosopher".
std::string NormalizeTitle(std::string_view title);

// Removes one trailing parenthesized qualifier: "X (film)" -> "X".
// Returns the input unchanged when there is none.
std::string_view StripQualifier(std::string_view title);

// Byte-level Levenshtein distance.
std::size_t EditDistance(std::string_view a, std::string_view b);

// 1 - distance / max(len); 1.0 for two empty strings.
double EditSimilarity(std::string_view a, std::string_view b);

// Lowercased alphanumeric tokens (punctuation acts as a separator).
std::vector<std::string> WordTokens(std::string_view text);

// 1 - token edit distance / max(token count); 1.0 when both are empty.
double TokenSimilarity(std::span<const std::string> a,
                       std::span<const std::string> b);

// Token-level edit similarity between two sentences, in [0, 1]. Robust to
// light paraphrase and punctuation drift.
double SentenceSimilarity(std::string_view a, std::string_view b);

}  // namespace briefforge

#endif  // BRIEFFORGE_TEXT_HPP_
