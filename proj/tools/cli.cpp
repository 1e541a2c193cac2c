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

#include "cli.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "CLI11.hpp"
#include "briefforge/errors.hpp"
#include "briefforge/fingerprint.hpp"
#include "briefforge/mock_lm.hpp"
#include "briefforge/openai_client.hpp"
#include "briefforge/parallel.hpp"
#include "briefforge/prompts.hpp"
#include "briefforge/records.hpp"
#include "briefforge/response_cache.hpp"
#include "json.hpp"

namespace briefforge::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream OpenForWrite(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

const fs::path& RequirePath(const fs::path& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  return path;
}

ordered_json BackendJson(const BackendFlags& flags) {
  return {{"url", flags.url}, {"model", flags.model}};
}

// Mock spec file: either one spec for every role, or an object keyed by
// "scorer" / "compressor" / "reader".
class MockSpecs {
 public:
  explicit MockSpecs(const fs::path& path) {
    try {
      root_ = nlohmann::json::parse(ReadFile(path));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("mock spec " + path.string() + ": " + e.what());
    }
    if (!root_.is_object()) throw FormatError("mock spec must be an object");
    per_role_ = root_.contains("scorer") || root_.contains("compressor") ||
                root_.contains("reader");
  }

  LanguageModelPtr Make(const std::string& role) const {
    if (!per_role_) return MakeMockLM(ParseMockSpec(root_.dump()));
    auto it = root_.find(role);
    if (it == root_.end()) return nullptr;
    return MakeMockLM(ParseMockSpec(it->dump()));
  }

 private:
  nlohmann::json root_;
  bool per_role_ = false;
};

// Mock role if the spec has one, else the HTTP backend if a URL is set,
// else nullptr. Wrapped in a response cache under --cache.
LanguageModelPtr MakeBackend(const RunConfig& config, const std::string& role,
                             const BackendFlags& flags, const char* key_env) {
  LanguageModelPtr lm;
  if (config.mock) lm = MockSpecs(*config.mock).Make(role);
  if (!lm && !flags.url.empty()) {
    LMBackendConfig backend;
    backend.endpoint_url = flags.url;
    backend.model_name = flags.model;
    backend.api_key_env = key_env;
    backend.max_parallel_requests = std::max<std::size_t>(config.parallel, 1);
    lm = std::make_shared<OpenAIClient>(backend);
  }
  if (lm && config.cache) {
    fs::create_directories(*config.cache);
    lm = std::make_shared<CachingLM>(lm, *config.cache / (role + ".jsonl"));
  }
  return lm;
}

LanguageModelPtr RequireBackend(const RunConfig& config,
                                const std::string& role,
                                const BackendFlags& flags,
                                const char* key_env) {
  LanguageModelPtr lm = MakeBackend(config, role, flags, key_env);
  if (!lm) {
    throw UsageError("no " + role + " backend: pass --mock with a '" + role +
                     "' spec or --" + role + "-url");
  }
  return lm;
}

struct SynthesisOutcome {
  std::vector<DocExpansionLog> log;
  std::optional<CuratedSummary> curated;
  std::vector<TrainingPair> pairs;
  std::optional<std::string> error;
};

SynthesisOutcome SynthesizeOne(const QAExample& example,
                               const WikiCorpus& corpus,
                               const RunConfig& config,
                               const PruneConfig& prune) {
  SynthesisOutcome outcome;
  try {
    ExpandedExample expanded =
        ExpandExample(example, corpus, config.expansion);
    outcome.log = std::move(expanded.log);
    outcome.curated = CurateSummary(expanded.example, prune);
    const std::string& summary = outcome.curated->summary;
    if (config.pair_mix != PairMix::kAutoOnly) {
      outcome.pairs.push_back(
          BuildTrainingPair(expanded.example, summary, true));
    }
    if (config.pair_mix != PairMix::kInstructionOnly) {
      outcome.pairs.push_back(
          BuildTrainingPair(expanded.example, summary, false));
    }
  } catch (const Error& e) {
    outcome.pairs.clear();
    outcome.error = e.what();
  }
  return outcome;
}

void ReportFailures(std::ostream& err, const char* what,
                    const std::vector<std::pair<std::string, std::string>>&
                        failures) {
  if (failures.empty()) return;
  err << failures.size() << " " << what << " failed:\n";
  for (const auto& [id, message] : failures) {
    err << "  " << id << ": " << message << "\n";
  }
}

}  // namespace

std::string RunConfig::ConfigJson() const {
  ordered_json j = {{"subcommand", subcommand}, {"seed", seed}};
  if (subcommand == "synthesize") {
    j["seed_data"] = seed_data.string();
    j["wiki_corpus"] = wiki_corpus.string();
    j["fuzzy_threshold"] = fuzzy_threshold;
    j["expansion"] = {{"policy", PolicyName(expansion.policy)},
                      {"ratio_mean", expansion.ratio_mean},
                      {"ratio_std", expansion.ratio_std},
                      {"ratio_floor", expansion.ratio_floor},
                      {"match_threshold", expansion.match_threshold}};
    j["prune"] = {{"epsilon", epsilon}, {"min_sentences", min_sentences}};
    j["pair_mix"] = PairMixName(pair_mix);
    j["scorer"] = BackendJson(scorer);
  } else if (subcommand == "run") {
    j["data"] = data.string();
    j["mode"] = no_compress ? "none" : mode;
    j["compressor_max_tokens"] = compressor_max_tokens;
    j["reader_max_tokens"] = reader_max_tokens;
    j["compressor"] = BackendJson(compressor);
    j["reader"] = BackendJson(reader);
  } else {
    j["predictions"] = predictions.string();
    j["gold"] = gold.string();
    j["pairs"] = pairs.string();
    if (expected_k) j["expected_k"] = *expected_k;
    j["cost"] = {{"compressor_params", cost.compressor_params},
                 {"reader_params", cost.reader_params},
                 {"flops_per_token_coeff", cost.flops_per_token_coeff},
                 {"words_to_tokens", cost.words_to_tokens}};
  }
  if (mock) {
    j["mock"] = {{"path", mock->string()},
                 {"sha256", Sha256Hex(ReadFile(*mock))}};
  }
  return j.dump();
}

int CmdSynthesize(const RunConfig& config, std::ostream& err) {
  const std::vector<QAExample> examples =
      LoadExamples(RequirePath(config.seed_data, "--seed-data"));
  const WikiCorpus corpus = LoadWikiCorpus(
      RequirePath(config.wiki_corpus, "--wiki-corpus"), config.fuzzy_threshold);
  if (!config.out) throw UsageError("--out is required");
  ExpansionConfig expansion = config.expansion;
  expansion.rng_seed = config.seed;
  expansion.Validate();
  RunConfig effective = config;
  effective.expansion = expansion;

  PruneConfig prune;
  prune.epsilon = config.epsilon;
  prune.min_sentences_per_doc = config.min_sentences;
  prune.scorer = RequireBackend(config, "scorer", config.scorer, kScorerKeyEnv);
  prune.Validate();

  const std::vector<SynthesisOutcome> outcomes = OrderedParallelMap(
      examples.size(), config.parallel, [&](std::size_t i) {
        return SynthesizeOne(examples[i], corpus, effective, prune);
      });

  const std::string config_json = config.ConfigJson();
  const std::string header = HeaderLine(config_json, config.seed);
  std::vector<TrainingPair> pairs;
  std::vector<std::pair<std::string, std::string>> failures;
  ExpansionReport expansion_report;
  std::vector<ExpandedExample> logs;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SynthesisOutcome& o = outcomes[i];
    if (o.error) failures.emplace_back(examples[i].id, *o.error);
    pairs.insert(pairs.end(), o.pairs.begin(), o.pairs.end());
    logs.push_back({examples[i], o.log});
  }

  fs::create_directories(*config.out);
  {
    std::ofstream train = OpenForWrite(*config.out / "train.jsonl");
    train << header << "\n";
    for (const TrainingPair& pair : pairs) {
      train << TrainingPairToJson(pair) << "\n";
    }
  }
  OpenForWrite(*config.out / "stats.json")
      << WithHeader(config_json, config.seed,
                    DatasetStatsToJson(ComputeDatasetStats(pairs)));
  OpenForWrite(*config.out / "expansion.json")
      << WithHeader(config_json, config.seed,
                    ExpansionReportToJson(SummarizeExpansion(logs)));
  if (config.audit) {
    std::ofstream audit = OpenForWrite(*config.audit);
    audit << header << "\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i].curated) {
        audit << AuditToJson(examples[i].id, *outcomes[i].curated) << "\n";
      }
    }
  }

  err << "synthesized " << pairs.size() << " pairs from "
      << examples.size() - failures.size() << "/" << examples.size()
      << " examples\n";
  ReportFailures(err, "examples", failures);
  return failures.empty() ? kExitOk : kExitPartial;
}

int CmdRun(const RunConfig& config, std::ostream& err) {
  const std::vector<QAExample> examples =
      LoadExamples(RequirePath(config.data, "--data"));
  if (!config.out) throw UsageError("--out is required");
  std::optional<BudgetMode> mode;
  if (!config.no_compress) mode = BudgetMode::Parse(config.mode);

  LanguageModelPtr reader =
      RequireBackend(config, "reader", config.reader, kReaderKeyEnv);
  LanguageModelPtr compressor;
  if (mode) {
    compressor = RequireBackend(config, "compressor", config.compressor,
                                kCompressorKeyEnv);
  }
  PipelineOptions options;
  options.parallelism = config.parallel;
  options.compressor_max_tokens = config.compressor_max_tokens;
  options.reader_max_tokens = config.reader_max_tokens;
  const std::vector<EvalRecord> records =
      RunPipeline(examples, compressor.get(), *reader, mode, options);

  std::ofstream out = OpenForWrite(*config.out);
  out << HeaderLine(config.ConfigJson(), config.seed) << "\n";
  std::vector<std::pair<std::string, std::string>> failures;
  for (const EvalRecord& record : records) {
    out << EvalRecordToJson(record) << "\n";
    if (record.error) failures.emplace_back(record.id, *record.error);
  }
  err << "ran " << records.size() << " examples, mode " << ModeName(mode)
      << "\n";
  ReportFailures(err, "examples", failures);
  return failures.empty() ? kExitOk : kExitPartial;
}

int CmdEval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.cost.Validate();
  std::vector<EvalRecord> predictions =
      LoadEvalRecords(RequirePath(config.predictions, "--predictions"));
  const std::vector<QAExample> gold =
      LoadExamples(RequirePath(config.gold, "--gold"));

  std::map<std::string, const QAExample*> gold_by_id;
  for (const QAExample& ex : gold) gold_by_id.emplace(ex.id, &ex);
  std::vector<EvalRecord> matched;
  std::vector<std::string> unmatched_predictions;
  std::set<std::string> seen;
  for (EvalRecord& record : predictions) {
    if (!seen.insert(record.id).second) {
      throw FormatError("duplicate prediction id '" + record.id + "'");
    }
    auto it = gold_by_id.find(record.id);
    if (it == gold_by_id.end()) {
      unmatched_predictions.push_back(record.id);
      continue;
    }
    record.gold_answers = it->second->gold_answers;
    matched.push_back(std::move(record));
  }
  std::vector<std::string> unmatched_gold;
  for (const QAExample& ex : gold) {
    if (!seen.contains(ex.id)) unmatched_gold.push_back(ex.id);
  }
  auto list_ids = [&](const char* what, const std::vector<std::string>& ids) {
    if (ids.empty()) return;
    err << ids.size() << " " << what << ":";
    for (const std::string& id : ids) err << " " << id;
    err << "\n";
  };
  list_ids("prediction ids without gold", unmatched_predictions);
  list_ids("gold ids without prediction", unmatched_gold);
  if (matched.empty()) {
    err << "error: no prediction id matches the gold file\n";
    return kExitFatal;
  }

  const RunReport report = BuildReport(matched, config.cost);
  out << FormatReportTable(report);
  if (config.out) {
    OpenForWrite(*config.out)
        << WithHeader(config.ConfigJson(), config.seed, ReportToJson(report));
  }
  const bool complete =
      unmatched_predictions.empty() && unmatched_gold.empty();
  return complete ? kExitOk : kExitPartial;
}

int CmdStats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string body;
  if (!config.pairs.empty()) {
    const std::vector<TrainingPair> pairs = LoadTrainingPairs(config.pairs);
    body = DatasetStatsToJson(ComputeDatasetStats(pairs));
  } else if (!config.predictions.empty()) {
    if (!config.expected_k) {
      throw UsageError("--expected-k is required with --predictions");
    }
    const std::vector<EvalRecord> records =
        LoadEvalRecords(config.predictions);
    RunReport report;
    report.adherence = ComputeAdherence(records, *config.expected_k);
    body = ordered_json::parse(ReportToJson(report))["adherence"].dump(2);
  } else {
    throw UsageError("stats needs --pairs or --predictions");
  }
  const std::string document =
      WithHeader(config.ConfigJson(), config.seed, body);
  if (config.out) {
    OpenForWrite(*config.out) << document;
  } else {
    out << document;
  }
  (void)err;
  return kExitOk;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  RunConfig config;
  CLI::App app{"Context compression toolkit for retrieval-augmented QA",
               "briefforge"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Run seed");
    sub->add_option("--parallel", config.parallel, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--mock", config.mock,
                    "Mock backend spec JSON (roles: scorer, compressor, "
                    "reader)")
        ->check(CLI::ExistingFile);
    sub->add_option("--cache", config.cache, "Response cache directory");
    sub->add_option("--out", config.out, "Output path");
  };
  auto add_backend = [&](CLI::App* sub, const std::string& role,
                         BackendFlags& flags) {
    sub->add_option("--" + role + "-url", flags.url,
                    "OpenAI-compatible base URL of the " + role);
    sub->add_option("--" + role + "-model", flags.model,
                    "Model name of the " + role);
  };

  std::string policy = "both";
  std::string pair_mix = "both";
  CLI::App* synth = app.add_subcommand(
      "synthesize", "Expand seed data and curate training pairs");
  add_common(synth);
  synth->add_option("--seed-data", config.seed_data, "Seed QA JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--wiki-corpus", config.wiki_corpus, "Wiki page JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--policy", policy, "both | oracle-full");
  synth->add_option("--ratio-mean", config.expansion.ratio_mean);
  synth->add_option("--ratio-std", config.expansion.ratio_std);
  synth->add_option("--ratio-floor", config.expansion.ratio_floor);
  synth->add_option("--match-threshold", config.expansion.match_threshold,
                    "Minimum sentence similarity to anchor a document");
  synth->add_option("--fuzzy-threshold", config.fuzzy_threshold,
                    "Minimum title similarity for a fuzzy page match");
  synth->add_option("--epsilon", config.epsilon,
                    "Helpfulness tolerance for pruning");
  synth->add_option("--min-sentences", config.min_sentences,
                    "Sentences always kept per oracle document");
  synth->add_option("--pair-mix", pair_mix,
                    "both | instruction | auto");
  synth->add_option("--audit", config.audit, "Per-sentence pruning log");
  add_backend(synth, "scorer", config.scorer);

  CLI::App* run = app.add_subcommand("run", "Compress then read");
  add_common(run);
  run->add_option("--data", config.data, "QA JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--mode", config.mode, "auto | high | medium | low | k=N");
  run->add_flag("--no-compress", config.no_compress,
                "Hand the full documents to the reader");
  run->add_option("--compressor-max-tokens", config.compressor_max_tokens);
  run->add_option("--reader-max-tokens", config.reader_max_tokens);
  add_backend(run, "compressor", config.compressor);
  add_backend(run, "reader", config.reader);

  auto add_cost = [&](CLI::App* sub) {
    sub->add_option("--compressor-params", config.cost.compressor_params);
    sub->add_option("--reader-params", config.cost.reader_params);
    sub->add_option("--flops-coeff", config.cost.flops_per_token_coeff);
    sub->add_option("--words-to-tokens", config.cost.words_to_tokens);
  };
  CLI::App* eval = app.add_subcommand("eval", "Score predictions");
  add_common(eval);
  eval->add_option("--predictions", config.predictions, "Prediction JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--gold", config.gold, "QA JSONL with gold answers")
      ->required()
      ->check(CLI::ExistingFile);
  add_cost(eval);

  CLI::App* stats = app.add_subcommand("stats", "Dataset or adherence stats");
  add_common(stats);
  stats->add_option("--pairs", config.pairs, "Training JSONL")
      ->check(CLI::ExistingFile);
  stats->add_option("--predictions", config.predictions, "Prediction JSONL")
      ->check(CLI::ExistingFile);
  stats->add_option("--expected-k", config.expected_k);
  add_cost(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (synth->parsed()) {
      config.subcommand = "synthesize";
      config.expansion.policy = ParsePolicy(policy);
      config.pair_mix = ParsePairMix(pair_mix);
      return CmdSynthesize(config, err);
    }
    if (run->parsed()) {
      config.subcommand = "run";
      return CmdRun(config, err);
    }
    if (eval->parsed()) {
      config.subcommand = "eval";
      return CmdEval(config, out, err);
    }
    config.subcommand = "stats";
    return CmdStats(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFatal;
  }
}

}  // namespace briefforge::cli
