// Copyright 2026 The sluaug Authors.
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

#ifndef SLUAUG_ERRORS_H_
#define SLUAUG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sluaug {

// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind { kConfig, kData, kBackend };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &message)
      : Error(ErrorKind::kConfig, message) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string &message)
      : Error(ErrorKind::kData, message) {}
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string &message)
      : Error(ErrorKind::kBackend, message) {}
};

// A domain type constructor was handed values violating its invariants.
class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

class MalformedMr : public DataError {
 public:
  MalformedMr(std::size_t position, const std::string &reason)
      : DataError("malformed MR at offset " + std::to_string(position) +
                  ": " + reason),
        position_(position),
        reason_(reason) {}

  std::size_t position() const { return position_; }
  const std::string &reason() const { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

class FormatError : public DataError {
 public:
  FormatError(std::size_t line_no, const std::string &reason)
      : DataError("line " + std::to_string(line_no) + ": " + reason),
        line_no_(line_no),
        reason_(reason) {}
  // Message becomes "file:line: reason".
  FormatError(const std::string &file, std::size_t line_no,
              const std::string &reason)
      : DataError(file + ":" + std::to_string(line_no) + ": " + reason),
        line_no_(line_no),
        reason_(reason) {}

  std::size_t line_no() const { return line_no_; }
  const std::string &reason() const { return reason_; }

 private:
  std::size_t line_no_;
  std::string reason_;
};

class InsufficientData : public DataError {
 public:
  using DataError::DataError;
};

class AlignmentFailed : public DataError {
 public:
  using DataError::DataError;
};

class NoValidPerturbation : public DataError {
 public:
  using DataError::DataError;
};

class NoTemplateForIntent : public DataError {
 public:
  using DataError::DataError;
};

class NoEvidence : public DataError {
 public:
  using DataError::DataError;
};

class UnknownIntent : public DataError {
 public:
  using DataError::DataError;
};

class ArityMismatch : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateInput : public DataError {
 public:
  using DataError::DataError;
};

class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
};

class BackendUnavailable : public BackendError {
 public:
  using BackendError::BackendError;
};

class PartialResponse : public BackendError {
 public:
  PartialResponse(std::size_t input_index, std::size_t expected,
                  std::size_t received)
      : BackendError("input " + std::to_string(input_index) + ": expected " +
                     std::to_string(expected) + " outputs, received " +
                     std::to_string(received)),
        input_index_(input_index),
        expected_(expected),
        received_(received) {}

  std::size_t input_index() const { return input_index_; }
  std::size_t expected() const { return expected_; }
  std::size_t received() const { return received_; }

 private:
  std::size_t input_index_;
  std::size_t expected_;
  std::size_t received_;
};

}  // namespace sluaug

#endif  // SLUAUG_ERRORS_H_
