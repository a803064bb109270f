// Copyright 2026 The topopool Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace topopool {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition or structural invariant was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Dataset files are missing or unreadable.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Dataset files exist but their contents are malformed.
class ParseError : public LoadError {
 public:
  using LoadError::LoadError;
};

// Rejected configuration (unknown keys, out-of-range values, empty model).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A train/test split cannot be stratified (e.g. a single class in training).
class StratificationError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace detail
}  // namespace topopool
