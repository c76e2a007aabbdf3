// Copyright 2026 The Ontic Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontic {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together, or a result exceeds the dimension cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (not normalized, not atomic, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Circuit document cannot be read. Carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", col " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A JSON value does not follow the expected encoding.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Circuit is structurally invalid (cycle, mismatched wire, dangling port).
class CircuitError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ontic
