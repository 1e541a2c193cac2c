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

#ifndef BRIEFFORGE_ERRORS_HPP_
#define BRIEFFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace briefforge {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (empty question, missing corpus, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or record.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace briefforge

#endif  // BRIEFFORGE_ERRORS_HPP_
