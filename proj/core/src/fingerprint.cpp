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

#include "briefforge/fingerprint.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "briefforge/errors.hpp"
#include "briefforge/text.hpp"

namespace briefforge {
namespace {

std::array<unsigned char, 32> Sha256(std::string_view data) {
  std::array<unsigned char, 32> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  return digest;
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  const auto digest = Sha256(data);
  std::string out;
  out.reserve(64);
  for (unsigned char b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

std::string RequestFingerprint(std::initializer_list<std::string_view> parts) {
  std::string buffer;
  for (std::string_view part : parts) {
    const std::string collapsed = CollapseWhitespace(part);
    buffer += std::to_string(collapsed.size());
    buffer += ':';
    buffer += collapsed;
  }
  return Sha256Hex(buffer);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key) {
  std::string buffer = std::to_string(seed);
  buffer += '\x1f';
  buffer.append(key);
  const auto digest = Sha256(buffer);
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = (out << 8) | digest[i];
  return out;
}

}  // namespace briefforge
