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

#include "briefforge/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "briefforge/text.hpp"

namespace briefforge {
namespace {

bool IsWordByte(unsigned char c) {
  return c >= 0x80 || std::isalnum(c) || c == '_';
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double TokenF1(const std::vector<std::string>& pred,
               const std::vector<std::string>& gold) {
  if (pred.empty() || gold.empty()) return pred == gold ? 1.0 : 0.0;
  std::unordered_map<std::string, int> counts;
  for (const auto& t : gold) ++counts[t];
  int same = 0;
  for (const auto& t : pred) {
    if (auto it = counts.find(t); it != counts.end() && it->second > 0) {
      --it->second;
      ++same;
    }
  }
  if (same == 0) return 0.0;
  const double precision = static_cast<double>(same) / static_cast<double>(pred.size());
  const double recall = static_cast<double>(same) / static_cast<double>(gold.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::string Fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

}  // namespace

std::string ModeName(const std::optional<BudgetMode>& mode) {
  return mode ? mode->ToString() : "none";
}

std::optional<BudgetMode> ParseModeName(std::string_view text) {
  if (text == "none") return std::nullopt;
  return BudgetMode::Parse(text);
}

std::string NormalizeAnswer(std::string_view text) {
  std::string stripped;
  stripped.reserve(text.size());
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) continue;
    stripped.push_back(static_cast<char>(std::tolower(u)));
  }
  std::string no_articles;
  no_articles.reserve(stripped.size());
  std::size_t i = 0;
  while (i < stripped.size()) {
    const auto u = static_cast<unsigned char>(stripped[i]);
    if (!IsWordByte(u)) {
      no_articles.push_back(stripped[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < stripped.size() &&
           IsWordByte(static_cast<unsigned char>(stripped[j]))) {
      ++j;
    }
    const std::string_view word(stripped.data() + i, j - i);
    if (word == "a" || word == "an" || word == "the") {
      no_articles.push_back(' ');
    } else {
      no_articles.append(word);
    }
    i = j;
  }
  return Join(SplitWhitespace(no_articles), " ");
}

int ExactMatch(std::string_view prediction, std::span<const std::string> golds) {
  if (golds.empty()) throw UsageError("exact match needs at least one gold");
  const std::string pred = NormalizeAnswer(prediction);
  return std::any_of(golds.begin(), golds.end(),
                     [&](const std::string& g) {
                       return NormalizeAnswer(g) == pred;
                     })
             ? 1
             : 0;
}

double F1Score(std::string_view prediction, std::span<const std::string> golds) {
  if (golds.empty()) throw UsageError("F1 needs at least one gold");
  const auto pred = SplitWhitespace(NormalizeAnswer(prediction));
  double best = 0.0;
  for (const auto& gold : golds) {
    best = std::max(best, TokenF1(pred, SplitWhitespace(NormalizeAnswer(gold))));
  }
  return best;
}

std::string CompressionRate::ToString() const {
  return std::to_string(display) + "x";
}

CompressionRate ComputeCompressionRate(std::size_t pre_words,
                                       std::size_t post_words) {
  if (post_words == 0) {
    throw UndefinedRateError("compression rate undefined for an empty summary");
  }
  CompressionRate rate;
  rate.exact = static_cast<double>(pre_words) / static_cast<double>(post_words);
  rate.display = std::lround(rate.exact);
  return rate;
}

AdherenceStats ComputeAdherence(std::span<const std::size_t> sentence_counts,
                                int expected_k) {
  AdherenceStats stats;
  stats.expected_k = expected_k;
  stats.n = sentence_counts.size();
  if (sentence_counts.empty()) return stats;
  double total = 0.0, abs_dev = 0.0;
  for (std::size_t count : sentence_counts) {
    total += static_cast<double>(count);
    abs_dev += std::abs(static_cast<double>(count) - expected_k);
    ++stats.histogram[count];
  }
  const auto n = static_cast<double>(sentence_counts.size());
  stats.mean = total / n;
  stats.mean_abs_deviation = abs_dev / n;
  stats.deviation_of_mean = std::abs(stats.mean - expected_k);
  return stats;
}

AdherenceStats ComputeAdherence(std::span<const EvalRecord> records,
                                int expected_k) {
  std::vector<std::size_t> counts;
  counts.reserve(records.size());
  for (const EvalRecord& r : records) {
    if (!r.error) counts.push_back(r.sentence_count);
  }
  return ComputeAdherence(counts, expected_k);
}

void CostModel::Validate() const {
  if (!(compressor_params > 0 && reader_params > 0 &&
        flops_per_token_coeff > 0 && words_to_tokens > 0)) {
    throw UsageError("cost model fields must all be positive");
  }
}

double EstimateTflops(const CostModel& model, double prompt_words,
                      double generated_words, CostRole role) {
  const double params = role == CostRole::kCompressor ? model.compressor_params
                                                      : model.reader_params;
  const double tokens = model.words_to_tokens * (prompt_words + generated_words);
  return model.flops_per_token_coeff * params * tokens / 1e12;
}

RunReport BuildReport(std::span<const EvalRecord> records,
                      const CostModel& cost_model) {
  cost_model.Validate();
  RunReport report;
  report.n = records.size();
  if (records.empty()) return report;

  double em = 0, f1 = 0, rate_sum = 0;
  std::size_t rated = 0, pre_total = 0, post_total = 0;
  for (const EvalRecord& r : records) {
    if (r.error) ++report.failed;
    if (!r.gold_answers.empty()) {
      em += ExactMatch(r.prediction, r.gold_answers);
      f1 += F1Score(r.prediction, r.gold_answers);
    }
    if (r.post_words > 0) {
      rate_sum += ComputeCompressionRate(r.pre_words, r.post_words).exact;
      ++rated;
      pre_total += r.pre_words;
      post_total += r.post_words;
    }
    const double answer_words = static_cast<double>(CountWords(r.prediction));
    if (r.mode) {
      report.tflops_compressor +=
          EstimateTflops(cost_model, static_cast<double>(r.pre_words),
                         static_cast<double>(r.post_words), CostRole::kCompressor);
    }
    report.tflops_reader += EstimateTflops(
        cost_model, static_cast<double>(r.post_words), answer_words,
        CostRole::kReader);
    report.tflops_full_context += EstimateTflops(
        cost_model, static_cast<double>(r.pre_words), answer_words,
        CostRole::kReader);
    report.compressor_ms += r.compressor_ms;
    report.reader_ms += r.reader_ms;
  }
  const auto n = static_cast<double>(records.size());
  report.em = 100.0 * em / n;
  report.f1 = 100.0 * f1 / n;
  if (rated > 0) {
    report.rate_mean_exact = rate_sum / static_cast<double>(rated);
    report.rate_display = std::to_string(std::lround(report.rate_mean_exact)) + "x";
    report.rate_ratio_of_totals =
        static_cast<double>(pre_total) / static_cast<double>(post_total);
  }
  report.tflops_total = report.tflops_compressor + report.tflops_reader;
  report.total_ms = report.compressor_ms + report.reader_ms;

  const auto& first_mode = records.front().mode;
  if (first_mode && first_mode->sentences() &&
      std::all_of(records.begin(), records.end(),
                  [&](const EvalRecord& r) { return r.mode == first_mode; })) {
    report.adherence = ComputeAdherence(records, *first_mode->sentences());
  }
  return report;
}

std::string FormatReportTable(const RunReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(22) << "examples" << report.n;
  if (report.failed > 0) out << " (" << report.failed << " failed)";
  out << '\n';
  out << std::setw(22) << "EM" << Fixed(report.em, 2) << '\n';
  out << std::setw(22) << "F1" << Fixed(report.f1, 2) << '\n';
  out << std::setw(22) << "Rate" << report.rate_display << " (mean "
      << Fixed(report.rate_mean_exact, 2) << ", totals "
      << Fixed(report.rate_ratio_of_totals, 2) << ")\n";
  if (report.adherence) {
    out << std::setw(22) << "Sentences" << Fixed(report.adherence->mean, 2)
        << " (expected " << report.adherence->expected_k << ")\n";
  }
  out << std::setw(22) << "TFLOPs" << Fixed(report.tflops_total, 3)
      << " (compressor " << Fixed(report.tflops_compressor, 3) << ", reader "
      << Fixed(report.tflops_reader, 3) << ", full context "
      << Fixed(report.tflops_full_context, 3) << ")\n";
  out << std::setw(22) << "Latency ms" << Fixed(report.total_ms, 1)
      << " (compressor " << Fixed(report.compressor_ms, 1) << ", reader "
      << Fixed(report.reader_ms, 1) << ")\n";
  return out.str();
}

}  // namespace briefforge
