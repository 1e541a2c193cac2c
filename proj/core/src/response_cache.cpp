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

#include "briefforge/response_cache.hpp"

#include <functional>

#include "briefforge/errors.hpp"
#include "briefforge/fingerprint.hpp"
#include "json.hpp"

namespace briefforge {
namespace {

using nlohmann::json;

}  // namespace

CachingLM::CachingLM(LanguageModelPtr inner,
                     std::optional<std::filesystem::path> path)
    : inner_(std::move(inner)), path_(std::move(path)) {
  if (!inner_) throw UsageError("CachingLM needs a backend");
  if (!path_) return;
  bool needs_newline = false;
  if (std::ifstream in(*path_, std::ios::binary); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Entry entry;
      std::string fingerprint;
      try {
        const json row = json::parse(line);
        fingerprint = row.at("fingerprint").get<std::string>();
        if (row.at("kind").get<std::string>() == "score") {
          entry.loglik = row.at("loglik").get<double>();
        } else {
          entry.generation.text = row.at("text").get<std::string>();
          entry.generation.truncated = row.value("truncated", false);
          entry.generation.latency_ms = row.value("latency_ms", 0.0);
        }
      } catch (const json::exception&) {
        // A torn line from an interrupted run is dropped.
        continue;
      }
      std::promise<Entry> ready;
      ready.set_value(entry);
      entries_[fingerprint] = ready.get_future().share();
    }
    // Start appends on a fresh line if the last write was cut short.
    in.clear();
    in.seekg(0, std::ios::end);
    if (in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      needs_newline = in.get() != '\n';
    }
  }
  log_.open(*path_, std::ios::app);
  if (!log_) throw Error("cannot open cache file " + path_->string());
  if (needs_newline) log_ << '\n';
}

std::size_t CachingLM::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

CachingLM::Entry CachingLM::Lookup(const std::string& key,
                                   const std::string& kind,
                                   const std::function<Entry()>& compute) {
  std::promise<Entry> promise;
  std::shared_future<Entry> future;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      entries_.emplace(key, future);
      owner = true;
    }
  }
  if (!owner) return future.get();

  try {
    ++backend_calls_;
    Entry entry = compute();
    Append(key, kind, entry);
    promise.set_value(entry);
    return entry;
  } catch (...) {
    // Failures are not cached; a later call may retry.
    {
      std::lock_guard lock(mu_);
      entries_.erase(key);
    }
    promise.set_exception(std::current_exception());
    throw;
  }
}

void CachingLM::Append(const std::string& key, const std::string& kind,
                       const Entry& entry) {
  if (!path_) return;
  json row = {{"fingerprint", key}, {"kind", kind}};
  if (kind == "score") {
    row["loglik"] = entry.loglik;
  } else {
    row["text"] = entry.generation.text;
    row["truncated"] = entry.generation.truncated;
    row["latency_ms"] = entry.generation.latency_ms;
  }
  std::lock_guard lock(mu_);
  log_ << row.dump() << '\n';
  log_.flush();
}

double CachingLM::ScoreLoglik(const ScoreRequest& request) {
  const std::string key =
      RequestFingerprint({inner_->Name(), ScoreFingerprint(request)});
  return Lookup(key, "score", [&] {
           Entry e;
           e.loglik = inner_->ScoreLoglik(request);
           return e;
         }).loglik;
}

Generation CachingLM::Generate(const GenerateRequest& request) {
  const std::string key = RequestFingerprint(
      {inner_->Name(), GenerateFingerprint(request),
       std::to_string(request.max_new_tokens)});
  return Lookup(key, "generate", [&] {
           Entry e;
           e.generation = inner_->Generate(request);
           return e;
         }).generation;
}

}  // namespace briefforge
