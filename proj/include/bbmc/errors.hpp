// Copyright 2026 The bbmc Authors.
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

#ifndef BBMC_ERRORS_HPP
#define BBMC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bbmc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(format(line, column, what)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& what) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Well-formed text describing an invalid model.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
  ValidationError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A reference component with two delta lines for one (state, input).
class DeterminismError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownState : public Error {
 public:
  explicit UnknownState(const std::string& name)
      : Error("unknown state '" + name + "'") {}
};

/// A symbol outside the alphabet it was used with.
class AlphabetViolation : public Error {
 public:
  using Error::Error;
};

/// Two artifacts (system, component, tableau) disagree on their alphabets.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Replaying a known prefix produced different outputs.
class DeterminismViolation : public Error {
 public:
  using Error::Error;
};

/// An external component timed out, died, or replied outside the protocol.
class AdapterFailure : public Error {
 public:
  using Error::Error;
};

/// An experiment longer than the configured test-length bound.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

/// A file that could not be read or written.
class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace bbmc

#endif  // BBMC_ERRORS_HPP
