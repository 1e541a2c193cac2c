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

#ifndef BRIEFFORGE_FINGERPRINT_HPP_
#define BRIEFFORGE_FINGERPRINT_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace briefforge {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// Stable request key: SHA-256 over the whitespace-collapsed parts, each
// length-prefixed so that part boundaries cannot alias.
std::string RequestFingerprint(std::initializer_list<std::string_view> parts);

// Per-stream seed derived from a run seed and a stable key (e.g. example id).
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key);

}  // namespace briefforge

#endif  // BRIEFFORGE_FINGERPRINT_HPP_
