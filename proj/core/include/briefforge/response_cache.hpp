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

#ifndef BRIEFFORGE_RESPONSE_CACHE_HPP_
#define BRIEFFORGE_RESPONSE_CACHE_HPP_

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "briefforge/lm.hpp"

namespace briefforge {

// Memoizing decorator around a backend. Concurrent identical requests share
// one backend call. When a path is given, existing entries are loaded at
// construction and new ones appended as JSONL
// {"fingerprint", "kind", "text"|"loglik", "truncated", "latency_ms"}, so an
// interrupted run resumes without repeating calls.
class CachingLM final : public LanguageModel {
 public:
  explicit CachingLM(LanguageModelPtr inner,
                     std::optional<std::filesystem::path> path = std::nullopt);

  double ScoreLoglik(const ScoreRequest& request) override;
  Generation Generate(const GenerateRequest& request) override;
  std::string Name() const override { return inner_->Name(); }

  // Calls forwarded to the wrapped backend since construction.
  std::size_t backend_calls() const { return backend_calls_.load(); }
  std::size_t size() const;

 private:
  struct Entry {
    double loglik = 0.0;
    Generation generation;
  };

  Entry Lookup(const std::string& key, const std::string& kind,
               const std::function<Entry()>& compute);
  void Append(const std::string& key, const std::string& kind,
              const Entry& entry);

  LanguageModelPtr inner_;
  std::optional<std::filesystem::path> path_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<Entry>> entries_;
  std::ofstream log_;
  std::atomic<std::size_t> backend_calls_{0};
};

}  // namespace briefforge

#endif  // BRIEFFORGE_RESPONSE_CACHE_HPP_
