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

#include "briefforge/records.hpp"

#include <fstream>
#include <set>

#include "briefforge/errors.hpp"
#include "briefforge/fingerprint.hpp"
#include "briefforge/prompts.hpp"
#include "briefforge/text.hpp"
#include "json.hpp"

namespace briefforge {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kVersion = "0.1.0";

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

// Calls `fn(row, line_no)` for every non-blank, non-header line.
template <typename Fn>
void ForEachRow(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty() || IsHeaderLine(line)) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      fn(row, line_no);
    } catch (const json::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

ordered_json HistogramJson(
    const std::vector<std::pair<std::size_t, std::size_t>>& bins) {
  ordered_json out = ordered_json::object();
  for (const auto& [start, count] : bins) out[std::to_string(start)] = count;
  return out;
}

ordered_json AdherenceJson(const AdherenceStats& a) {
  ordered_json hist = ordered_json::object();
  for (const auto& [k, count] : a.histogram) hist[std::to_string(k)] = count;
  return {{"expected", a.expected_k},
          {"n", a.n},
          {"mean", a.mean},
          {"deviation_of_mean", a.deviation_of_mean},
          {"mean_abs_deviation", a.mean_abs_deviation},
          {"hist", hist}};
}

}  // namespace

std::vector<QAExample> ParseExamples(std::istream& in) {
  std::vector<QAExample> examples;
  std::set<std::string> seen;
  ForEachRow(in, [&](const json& row, std::size_t line_no) {
    QAExample ex;
    ex.id = row.at("id").get<std::string>();
    ex.question = row.at("question").get<std::string>();
    ex.gold_answers = row.at("answers").get<std::vector<std::string>>();
    for (const json& doc : row.at("docs")) {
      ex.documents.push_back({doc.at("title").get<std::string>(),
                              doc.at("text").get<std::string>(),
                              doc.value("oracle", false)});
    }
    try {
      ex.Validate();
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(ex.id).second) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": duplicate example id '" + ex.id + "'");
    }
    examples.push_back(std::move(ex));
  });
  return examples;
}

std::vector<QAExample> LoadExamples(const std::filesystem::path& path) {
  auto in = OpenOrThrow(path);
  return ParseExamples(in);
}

std::string ExampleToJson(const QAExample& example) {
  ordered_json docs = ordered_json::array();
  for (const SourceDoc& d : example.documents) {
    docs.push_back({{"title", d.title}, {"text", d.text}, {"oracle", d.oracle}});
  }
  ordered_json row = {{"id", example.id},
                      {"question", example.question},
                      {"answers", example.gold_answers},
                      {"docs", docs}};
  return row.dump();
}

std::vector<WikiPage> ParseWikiPages(std::istream& in) {
  std::vector<WikiPage> pages;
  ForEachRow(in, [&](const json& row, std::size_t) {
    pages.push_back({row.at("id").get<std::string>(),
                     row.at("title").get<std::string>(),
                     row.at("text").get<std::string>()});
  });
  return pages;
}

WikiCorpus LoadWikiCorpus(const std::filesystem::path& path,
                          double fuzzy_threshold) {
  auto in = OpenOrThrow(path);
  return WikiCorpus(ParseWikiPages(in), fuzzy_threshold);
}

std::string TrainingPairToJson(const TrainingPair& pair) {
  ordered_json messages = ordered_json::array(
      {{{"role", "user"}, {"content", TrainingPrompt(pair)}},
       {{"role", "assistant"}, {"content", pair.target_summary}}});
  ordered_json row = {
      {"id", pair.id},
      {"question", pair.question},
      {"context", pair.long_context},
      {"instruction", pair.instruction ? ordered_json(*pair.instruction)
                                       : ordered_json(nullptr)},
      {"summary", pair.target_summary},
      {"k", pair.k},
      {"messages", messages}};
  return row.dump();
}

TrainingPair TrainingPairFromJson(std::string_view line) {
  try {
    const json row = json::parse(line);
    TrainingPair pair;
    pair.id = row.at("id").get<std::string>();
    pair.question = row.at("question").get<std::string>();
    pair.long_context = row.at("context").get<std::string>();
    if (const json& instr = row.at("instruction"); !instr.is_null()) {
      pair.instruction = instr.get<std::string>();
    }
    pair.target_summary = row.at("summary").get<std::string>();
    pair.k = row.at("k").get<int>();
    return pair;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid training pair: ") + e.what());
  }
}

std::vector<TrainingPair> LoadTrainingPairs(const std::filesystem::path& path) {
  auto in = OpenOrThrow(path);
  std::vector<TrainingPair> pairs;
  ForEachRow(in, [&](const json& row, std::size_t) {
    pairs.push_back(TrainingPairFromJson(row.dump()));
  });
  return pairs;
}

std::string EvalRecordToJson(const EvalRecord& record) {
  ordered_json row = {{"id", record.id},
                      {"prediction", record.prediction},
                      {"pre_words", record.pre_words},
                      {"post_words", record.post_words},
                      {"sentence_count", record.sentence_count},
                      {"compressor_ms", record.compressor_ms},
                      {"reader_ms", record.reader_ms},
                      {"mode", ModeName(record.mode)}};
  if (record.truncated) row["truncated"] = true;
  if (record.error) row["error"] = *record.error;
  return row.dump();
}

EvalRecord EvalRecordFromJson(std::string_view line) {
  try {
    const json row = json::parse(line);
    EvalRecord record;
    record.id = row.at("id").get<std::string>();
    record.prediction = row.at("prediction").get<std::string>();
    record.pre_words = row.at("pre_words").get<std::size_t>();
    record.post_words = row.at("post_words").get<std::size_t>();
    record.sentence_count = row.at("sentence_count").get<std::size_t>();
    record.compressor_ms = row.at("compressor_ms").get<double>();
    record.reader_ms = row.at("reader_ms").get<double>();
    record.mode = ParseModeName(row.at("mode").get<std::string>());
    record.truncated = row.value("truncated", false);
    if (auto it = row.find("error"); it != row.end()) {
      record.error = it->get<std::string>();
    }
    return record;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid prediction record: ") + e.what());
  }
}

std::vector<EvalRecord> LoadEvalRecords(const std::filesystem::path& path) {
  auto in = OpenOrThrow(path);
  std::vector<EvalRecord> records;
  ForEachRow(in, [&](const json& row, std::size_t) {
    records.push_back(EvalRecordFromJson(row.dump()));
  });
  return records;
}

std::string ReportToJson(const RunReport& report) {
  ordered_json row = {
      {"n", report.n},
      {"failed", report.failed},
      {"em", report.em},
      {"f1", report.f1},
      {"rate_mean_exact", report.rate_mean_exact},
      {"rate_display", report.rate_display},
      {"rate_ratio_of_totals", report.rate_ratio_of_totals},
      {"adherence", report.adherence ? AdherenceJson(*report.adherence)
                                     : ordered_json(nullptr)},
      {"cost",
       {{"tflops_total", report.tflops_total},
        {"tflops_breakdown",
         {{"compressor", report.tflops_compressor},
          {"reader", report.tflops_reader}}},
        {"tflops_full_context", report.tflops_full_context}}},
      {"latency",
       {{"compressor_ms", report.compressor_ms},
        {"reader_ms", report.reader_ms},
        {"total_ms", report.total_ms}}}};
  return row.dump(2);
}

std::string DatasetStatsToJson(const DatasetStats& stats) {
  ordered_json hist = ordered_json::object();
  for (const auto& [k, count] : stats.k_histogram) {
    hist[std::to_string(k)] = count;
  }
  ordered_json row = {{"samples", stats.samples},
                      {"with_instruction", stats.with_instruction},
                      {"context_words", {{"mean", stats.context_words_mean},
                                         {"std", stats.context_words_std}}},
                      {"summary_words", {{"mean", stats.summary_words_mean},
                                         {"std", stats.summary_words_std}}},
                      {"k_histogram", hist}};
  return row.dump(2);
}

std::string ExpansionReportToJson(const ExpansionReport& report) {
  ordered_json docs = ordered_json::array();
  for (const DocExpansionLog& d : report.documents_log) {
    docs.push_back(
        {{"example_id", d.example_id},
         {"doc_index", d.doc_index},
         {"title", d.title},
         {"oracle", d.oracle},
         {"status", LocateStatusName(d.status)},
         {"page_id", d.page_id},
         {"ratio", d.sampled_ratio ? ordered_json(*d.sampled_ratio)
                                   : ordered_json(nullptr)},
         {"sentences_before", d.original_sentences},
         {"sentences_after", d.expanded_sentences},
         {"words_before", d.original_words},
         {"words_after", d.expanded_words}});
  }
  ordered_json row = {
      {"documents", report.documents},
      {"located", report.located_exact},
      {"fuzzy_located", report.located_fuzzy},
      {"unlocated", report.unlocated},
      {"skipped", report.skipped},
      {"words_before", report.words_before},
      {"words_after", report.words_after},
      {"histogram_bin_words", report.histogram_bin_words},
      {"histogram_before", HistogramJson(report.histogram_before)},
      {"histogram_after", HistogramJson(report.histogram_after)},
      {"per_document", docs}};
  return row.dump(2);
}

std::string AuditToJson(std::string_view example_id,
                        const CuratedSummary& curated) {
  ordered_json docs = ordered_json::array();
  for (const DocPruneAudit& a : curated.spans) {
    ordered_json verdicts = ordered_json::array();
    for (const HelpfulnessVerdict& v : a.verdicts) {
      verdicts.push_back({{"sentence", v.sentence_index},
                          {"delta", v.delta_loglik},
                          {"unhelpful", v.unhelpful}});
    }
    docs.push_back({{"doc_index", a.doc_index},
                    {"title", a.title},
                    {"sentences", a.sentences},
                    {"kept", {a.first, a.last}},
                    {"fallback", a.fallback},
                    {"error", a.error ? ordered_json(*a.error)
                                      : ordered_json(nullptr)},
                    {"verdicts", verdicts}});
  }
  ordered_json row = {{"id", example_id},
                      {"unpruned_oracle", curated.unpruned_oracle},
                      {"documents", docs}};
  return row.dump();
}

std::string HeaderLine(std::string_view config_json, std::uint64_t seed) {
  json config;
  try {
    config = json::parse(config_json);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string canonical = config.dump();
  ordered_json header = {{"tool", "briefforge"},
                         {"version", kVersion},
                         {"config_hash", Sha256Hex(canonical)},
                         {"seed", seed},
                         {"config", config}};
  return ordered_json{{"_header", header}}.dump();
}

bool IsHeaderLine(std::string_view line) {
  return Trim(line).starts_with("{\"_header\"");
}

std::string WithHeader(std::string_view config_json, std::uint64_t seed,
                       std::string_view body_json) {
  const ordered_json body = ordered_json::parse(body_json);
  if (!body.is_object() || body.empty()) {
    throw UsageError("report body must be a non-empty JSON object");
  }
  std::string header = HeaderLine(config_json, seed);
  header.pop_back();  // reopen the outer object
  // dump(2) starts with "{\n"; the header line takes the brace's place.
  return header + ",\n" + body.dump(2).substr(2) + "\n";
}

}  // namespace briefforge
