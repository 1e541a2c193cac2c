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

// Subcommands of the briefforge command-line tool. Kept in a library so the
// acceptance suite and tests can drive them in-process.

#ifndef BRIEFFORGE_TOOLS_CLI_HPP_
#define BRIEFFORGE_TOOLS_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "briefforge/distillation.hpp"
#include "briefforge/evaluation.hpp"
#include "briefforge/expansion.hpp"
#include "briefforge/runtime.hpp"

namespace briefforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitFatal = 2;

// API keys are read from these variables; they are never flags.
inline constexpr char kCompressorKeyEnv[] = "BRIEFFORGE_COMPRESSOR_API_KEY";
inline constexpr char kReaderKeyEnv[] = "BRIEFFORGE_READER_API_KEY";
inline constexpr char kScorerKeyEnv[] = "BRIEFFORGE_SCORER_API_KEY";

struct BackendFlags {
  std::string url;
  std::string model;
};

struct RunConfig {
  std::string subcommand;

  // synthesize
  std::filesystem::path seed_data;
  std::filesystem::path wiki_corpus;
  double fuzzy_threshold = kDefaultFuzzyThreshold;
  ExpansionConfig expansion;
  double epsilon = 0.0;
  std::size_t min_sentences = 1;
  PairMix pair_mix = PairMix::kBoth;

  // run
  std::filesystem::path data;
  std::string mode = "auto";
  bool no_compress = false;
  int compressor_max_tokens = kDefaultCompressorMaxTokens;
  int reader_max_tokens = kDefaultReaderMaxTokens;

  // eval / stats
  std::filesystem::path predictions;
  std::filesystem::path gold;
  std::filesystem::path pairs;
  std::optional<int> expected_k;
  CostModel cost;

  BackendFlags compressor;
  BackendFlags reader;
  BackendFlags scorer;
  std::optional<std::filesystem::path> mock;

  std::uint64_t seed = 0;

  // Not part of the config hash: they change where and how fast, not what.
  std::size_t parallel = 1;
  std::optional<std::filesystem::path> cache;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> audit;

  // Canonical JSON of everything that determines the outputs.
  std::string ConfigJson() const;
};

// Writes <out>/train.jsonl, <out>/stats.json and <out>/expansion.json, plus
// the audit JSONL when requested.
int CmdSynthesize(const RunConfig& config, std::ostream& err);
// Writes the prediction JSONL to --out.
int CmdRun(const RunConfig& config, std::ostream& err);
// Prints the report table; writes the report JSON to --out when given.
int CmdEval(const RunConfig& config, std::ostream& out, std::ostream& err);
// Dataset statistics of a training JSONL, or adherence of a prediction file.
int CmdStats(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Fatal errors are reported on `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace briefforge::cli

#endif  // BRIEFFORGE_TOOLS_CLI_HPP_
