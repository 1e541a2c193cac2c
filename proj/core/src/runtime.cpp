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

#include "briefforge/runtime.hpp"

#include "briefforge/parallel.hpp"
#include "briefforge/text.hpp"

namespace briefforge {

CompressResult Compress(LanguageModel& backend, std::string_view question,
                        std::string_view documents_text,
                        const BudgetMode& mode, int max_new_tokens) {
  const std::string prompt =
      BuildCompressorPrompt(question, documents_text, mode);
  Generation generation = backend.Generate({prompt, max_new_tokens});
  if (Trim(generation.text).empty()) throw EmptySummaryError();

  CompressResult result;
  result.pre_words = CountWords(documents_text);
  result.post_words = CountWords(generation.text);
  result.sentence_count = SegmentSentences(generation.text).size();
  result.compressor_latency_ms = generation.latency_ms;
  result.truncated = generation.truncated;
  result.summary = std::move(generation.text);
  return result;
}

Generation Answer(LanguageModel& reader, std::string_view question,
                  std::string_view summary, int max_new_tokens) {
  if (Trim(question).empty()) throw UsageError("question must be non-empty");
  if (Trim(summary).empty()) throw UsageError("summary must be non-empty");
  return reader.Generate({BuildReaderPrompt(question, summary), max_new_tokens});
}

std::vector<EvalRecord> RunPipeline(std::span<const QAExample> examples,
                                    LanguageModel* compressor,
                                    LanguageModel& reader,
                                    const std::optional<BudgetMode>& mode,
                                    const PipelineOptions& options) {
  if (mode && compressor == nullptr) {
    throw UsageError("a compression mode needs a compressor backend");
  }
  return OrderedParallelMap(
      examples.size(), options.parallelism, [&](std::size_t i) {
        const QAExample& example = examples[i];
        EvalRecord record;
        record.id = example.id;
        record.gold_answers = example.gold_answers;
        record.mode = mode;
        try {
          const std::string documents = FormatDocuments(example.documents);
          std::string passages;
          if (mode) {
            CompressResult compressed =
                Compress(*compressor, example.question, documents, *mode,
                         options.compressor_max_tokens);
            record.pre_words = compressed.pre_words;
            record.post_words = compressed.post_words;
            record.sentence_count = compressed.sentence_count;
            record.compressor_ms = compressed.compressor_latency_ms;
            record.truncated = compressed.truncated;
            passages = std::move(compressed.summary);
          } else {
            record.pre_words = CountWords(documents);
            record.post_words = record.pre_words;
            record.sentence_count = SegmentSentences(documents).size();
            passages = documents;
          }
          Generation answer = Answer(reader, example.question, passages,
                                     options.reader_max_tokens);
          record.reader_ms = answer.latency_ms;
          record.prediction = std::move(answer.text);
        } catch (const Error& e) {
          record.error = e.what();
        }
        return record;
      });
}

}  // namespace briefforge
