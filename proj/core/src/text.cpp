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

#include "briefforge/text.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>
#include <numeric>

namespace briefforge {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Lowercased tokens that are followed by a period without ending a sentence.
constexpr std::string_view kAbbreviations[] = {
    "mr",   "mrs",  "ms",    "dr",   "prof", "sr",   "jr",   "st",
    "mt",   "ft",   "gen",   "col",  "lt",   "sgt",  "capt", "cmdr",
    "adm",  "gov",  "sen",   "rep",  "rev",  "hon",  "pres", "vs",
    "no",   "vol",  "vols",  "fig",  "figs", "pp",   "ed",   "eds",
    "dept", "univ", "approx", "jan", "feb",  "mar",  "apr",  "jun",
    "jul",  "aug",  "sep",   "sept", "oct",  "nov",  "dec"};

// Length in bytes of a closing quote/bracket at `pos`, 0 if none.
std::size_t ClosingAt(std::string_view text, std::size_t pos) {
  const char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  // U+201D and U+2019 (right double/single quotation marks).
  if (text.substr(pos, 3) == "\xE2\x80\x9D" ||
      text.substr(pos, 3) == "\xE2\x80\x99") {
    return 3;
  }
  return 0;
}

bool StartsSentence(std::string_view text, std::size_t pos) {
  const auto c = static_cast<unsigned char>(text[pos]);
  if (std::isupper(c) || std::isdigit(c)) return true;
  if (c == '"' || c == '\'' || c == '(' || c == '[') return true;
  // U+201C / U+2018 opening quotes.
  if (text.substr(pos, 3) == "\xE2\x80\x9C" ||
      text.substr(pos, 3) == "\xE2\x80\x98") {
    return true;
  }
  // Latin-1 supplement capitals U+00C0..U+00DE encode as C3 80..C3 9E.
  if (c == 0xC3 && pos + 1 < text.size()) {
    const auto next = static_cast<unsigned char>(text[pos + 1]);
    return next >= 0x80 && next <= 0x9E && next != 0x97;
  }
  return false;
}

// True when the period at `dot` closes an abbreviation, an initial or a
// dotted acronym rather than a sentence.
bool IsAbbreviationPeriod(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !IsSpace(text[begin - 1])) --begin;
  std::string_view token = text.substr(begin, dot - begin);
  while (!token.empty() && (token.front() == '(' || token.front() == '"' ||
                            token.front() == '\'' || token.front() == '[')) {
    token.remove_prefix(1);
  }
  if (token.empty()) return false;
  if (token.size() == 1 &&
      std::isupper(static_cast<unsigned char>(token.front()))) {
    return true;
  }
  if (token.find('.') != std::string_view::npos) return true;
  const std::string lowered = ToLower(token);
  return std::find(std::begin(kAbbreviations), std::end(kAbbreviations),
                   lowered) != std::end(kAbbreviations);
}

}  // namespace

std::vector<std::string> SegmentSentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto emit = [&](std::size_t end) {
    std::string_view piece = Trim(text.substr(start, end - start));
    if (!piece.empty()) sentences.emplace_back(piece);
  };
  while (i < n) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && IsTerminal(text[j])) ++j;
    const bool lone_period = (j - i == 1 && text[i] == '.');
    while (j < n) {
      const std::size_t len = ClosingAt(text, j);
      if (len == 0) break;
      j += len;
    }
    std::size_t k = j;
    while (k < n && IsSpace(text[k])) ++k;
    if (k == j || k == n || !StartsSentence(text, k) ||
        (lone_period && IsAbbreviationPeriod(text, i))) {
      i = j;
      continue;
    }
    emit(j);
    start = k;
    i = k;
  }
  emit(n);
  return sentences;
}

std::size_t CountWords(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    if (IsSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

std::string Join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string_view Trim(std::string_view text) {
  while (!text.empty() && IsSpace(text.front())) text.remove_prefix(1);
  while (!text.empty() && IsSpace(text.back())) text.remove_suffix(1);
  return text;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : Trim(text)) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string NormalizeTitle(std::string_view title) {
  std::string cleaned;
  cleaned.reserve(title.size());
  for (char c : title) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '_') {
      cleaned.push_back(' ');
    } else if (u < 0x80 && std::ispunct(u)) {
      // Punctuation is dropped, not turned into a separator.
    } else {
      cleaned.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  return CollapseWhitespace(cleaned);
}

std::string_view StripQualifier(std::string_view title) {
  std::string_view trimmed = Trim(title);
  if (trimmed.empty() || trimmed.back() != ')') return title;
  const std::size_t open = trimmed.rfind('(');
  if (open == std::string_view::npos || open == 0) return title;
  std::string_view head = Trim(trimmed.substr(0, open));
  return head.empty() ? title : head;
}

std::size_t EditDistance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double EditSimilarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(EditDistance(a, b)) /
                   static_cast<double>(longest);
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double TokenSimilarity(std::span<const std::string> ta,
                       std::span<const std::string> tb) {
  const std::size_t longest = std::max(ta.size(), tb.size());
  if (longest == 0) return 1.0;
  std::vector<std::size_t> prev(tb.size() + 1), cur(tb.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= ta.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= tb.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (ta[i - 1] == tb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return 1.0 - static_cast<double>(prev[tb.size()]) /
                   static_cast<double>(longest);
}

double SentenceSimilarity(std::string_view a, std::string_view b) {
  return TokenSimilarity(WordTokens(a), WordTokens(b));
}

}  // namespace briefforge
