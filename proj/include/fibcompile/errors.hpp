// Copyright 2026 The fibcompile Authors
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

namespace fibcompile {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible size (matrices, bases, braid words).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value that violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested winding class / endpoint combination admits no weave.
class InfeasibleTarget : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed, or its contents are malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A Solovay-Kitaev step received an input too far from the identity.
class NetTooCoarse : public Error {
 public:
  NetTooCoarse(const std::string& what, int level)
      : Error(what + " (level " + std::to_string(level) + ")"),
        detail_(what),
        level_(level) {}
  int level() const noexcept { return level_; }
  /// Message without the level suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  int level_;
};

}  // namespace fibcompile
