// Copyright 2026 The Restrictplan Authors.
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

#ifndef RESTRICTPLAN_ERRORS_H_
#define RESTRICTPLAN_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace restrictplan {

// Error classes surfaced to API clients. The string forms are part of the
// HTTP contract.
enum class ErrorCode { kValidation, kNotFound, kConflict, kIo, kParse };

std::string_view ErrorCodeName(ErrorCode code);
int HttpStatusFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Specific reasons a geometry or value failed validation.
enum class ValidationIssue {
  kCoordinateOutOfRange,
  kTooFewVertices,
  kClosedRing,
  kRepeatedVertex,
  kCollinearVertices,
  kSelfIntersection,
  kZeroArea,
  kInvalidWidth,
  kInvalidDate,
  kInvalidExtent,
  kInvalidBox,
  kMissingField,
};

std::string_view ValidationIssueName(ValidationIssue issue);

class ValidationError : public Error {
 public:
  ValidationError(ValidationIssue issue, const std::string &message)
      : Error(ErrorCode::kValidation, message), issue_(issue) {}

  ValidationIssue issue() const { return issue_; }

 private:
  ValidationIssue issue_;
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string &message)
      : Error(ErrorCode::kNotFound, message) {}
};

class ConflictError : public Error {
 public:
  explicit ConflictError(const std::string &message)
      : Error(ErrorCode::kConflict, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &message)
      : Error(ErrorCode::kIo, message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string &message)
      : Error(ErrorCode::kParse, message) {}
};

// Raised when a journal cannot be replayed. `line` is 1-based.
class LoadError : public Error {
 public:
  LoadError(std::string path, int line, const std::string &reason);

  const std::string &path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// Caller broke a precondition (programming error, not bad input).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace restrictplan

#endif  // RESTRICTPLAN_ERRORS_H_
