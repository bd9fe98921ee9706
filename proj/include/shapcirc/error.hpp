// Copyright 2026 The shapcirc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapcirc {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (DDC files, rationals, CSV, queries, ...).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

// A circuit violates a structural requirement (decomposability,
// determinism, smoothness) of the algorithm it was handed to.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that is outside the domain of an operation.
class InputError : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration refused because the universe is too large.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace shapcirc
