// Copyright 2026 The kgplot Authors.
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

#ifndef KGPLOT_ERROR_H_
#define KGPLOT_ERROR_H_

#include <stdexcept>
#include <string>

namespace kgplot {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or input-shape violation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based, 0 when unknown.
class LoadError : public Error {
 public:
  LoadError(const std::string &path, int line, const std::string &what)
      : Error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        path_(path),
        line_(line) {}

  const std::string &path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// A provider (fixture or remote) failed to answer a request.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// Transport-level failure talking to the model service.
class TransportError : public ProviderError {
 public:
  enum class Kind { kTimeout, kConnection, kStatus, kSchema };

  TransportError(Kind kind, const std::string &what, int status = 0)
      : ProviderError(what), kind_(kind), status_(status) {}

  Kind kind() const { return kind_; }
  int status() const { return status_; }

 private:
  Kind kind_;
  int status_;
};

class ExpansionError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Failure inside the planning loop, tagged with the stage that raised it.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string &what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace kgplot

#endif  // KGPLOT_ERROR_H_
