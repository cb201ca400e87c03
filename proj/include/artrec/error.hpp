// Copyright 2026-present the artrec project
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
#include <utility>

namespace artrec {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string record_message(std::size_t line, const std::string& field,
                                  const std::string& detail) {
  std::string msg;
  if (line != 0) msg += "line " + std::to_string(line) + ": ";
  if (!field.empty()) msg += "field '" + field + "': ";
  return msg + detail;
}

}  // namespace detail

/// A corpus record could not be decoded. `field()` names the offending field,
/// or is empty when the record itself is not well-formed.
class ParseError : public Error {
 public:
  ParseError(std::string field, std::string detail, std::size_t line = 0)
      : Error(detail::record_message(line, field, detail)),
        field_(std::move(field)),
        detail_(std::move(detail)),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::string detail_;
  std::size_t line_;
};

/// A decoded record violates a data-model invariant (missing id, empty title).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string detail, std::size_t line = 0)
      : Error(detail::record_message(line, field, detail)),
        field_(std::move(field)),
        detail_(std::move(detail)),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::string detail_;
  std::size_t line_;
};

/// Two articles share an id. Positions are zero-based record indices.
class DuplicateIdError : public Error {
 public:
  DuplicateIdError(std::string id, std::size_t first, std::size_t second)
      : Error("duplicate article id '" + id + "' at records " +
              std::to_string(first) + " and " + std::to_string(second)),
        id_(std::move(id)),
        first_(first),
        second_(second) {}

  const std::string& id() const noexcept { return id_; }
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::string id_;
  std::size_t first_;
  std::size_t second_;
};

/// Weight coefficients outside the simplex.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Analyzer configuration files (rule table, stop-word list) are malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A persisted file has the wrong format, version, or is corrupt.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Lookup of an unknown document.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// The query analyzed to no terms at all.
class EmptyQueryError : public Error {
 public:
  using Error::Error;
};

/// Evaluation input is inconsistent (conflicting labels, bad counts).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace artrec
