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

// File formats: dataset and corpus JSONL readers, training / prediction
// JSONL rows, report and statistics JSON, and artifact header lines.
//
// Every artifact this toolkit writes may start with a header line
// {"_header": {...}}; readers skip such lines.

#ifndef BRIEFFORGE_RECORDS_HPP_
#define BRIEFFORGE_RECORDS_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "briefforge/corpus.hpp"
#include "briefforge/distillation.hpp"
#include "briefforge/evaluation.hpp"
#include "briefforge/expansion.hpp"

namespace briefforge {

// {"id", "question", "answers": [..], "docs": [{"title", "text", "oracle"}]}.
// Validates every example and rejects duplicate ids (FormatError with the
// line number).
std::vector<QAExample> ParseExamples(std::istream& in);
std::vector<QAExample> LoadExamples(const std::filesystem::path& path);
std::string ExampleToJson(const QAExample& example);

// {"id", "title", "text"} per line.
std::vector<WikiPage> ParseWikiPages(std::istream& in);
WikiCorpus LoadWikiCorpus(const std::filesystem::path& path,
                          double fuzzy_threshold = kDefaultFuzzyThreshold);

// {"id", "question", "context", "instruction", "summary", "k", "messages"}.
// "messages" is the chat rendering: the compressor prompt as the user turn
// and the summary as the assistant turn.
std::string TrainingPairToJson(const TrainingPair& pair);
TrainingPair TrainingPairFromJson(std::string_view line);
std::vector<TrainingPair> LoadTrainingPairs(const std::filesystem::path& path);

// {"id", "prediction", "pre_words", "post_words", "sentence_count",
//  "compressor_ms", "reader_ms", "mode"} plus "truncated"/"error" when set.
std::string EvalRecordToJson(const EvalRecord& record);
EvalRecord EvalRecordFromJson(std::string_view line);
std::vector<EvalRecord> LoadEvalRecords(const std::filesystem::path& path);

std::string ReportToJson(const RunReport& report);
std::string DatasetStatsToJson(const DatasetStats& stats);
std::string ExpansionReportToJson(const ExpansionReport& report);
std::string AuditToJson(std::string_view example_id,
                        const CuratedSummary& curated);

// {"_header": {"tool", "version", "config_hash", "seed", "config"}} where
// config_hash is the SHA-256 of the canonical config JSON.
std::string HeaderLine(std::string_view config_json, std::uint64_t seed);
bool IsHeaderLine(std::string_view line);

// A JSON object document whose first line carries the header:
// {"_header": {...},
//   "key": ...}
// `body_json` must be a non-empty JSON object.
std::string WithHeader(std::string_view config_json, std::uint64_t seed,
                       std::string_view body_json);

}  // namespace briefforge

#endif  // BRIEFFORGE_RECORDS_HPP_
