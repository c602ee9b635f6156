// Copyright 2026 The twinsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWINSYM_ERROR_HPP_
#define TWINSYM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twinsym {

/// Base class of every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed IR, harness, constraint or session text. `line` is 1-based, 0
/// when the input has no line structure.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Operand widths that violate an expression node's typing rule.
class WidthError : public Error {
 public:
  using Error::Error;
};

/// A harness or program that parses but fails validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A session document that is malformed, inconsistent or of an unsupported
/// schema version.
class SessionError : public Error {
 public:
  using Error::Error;
};

}  // namespace twinsym

#endif  // TWINSYM_ERROR_HPP_
