// Copyright 2026 The QEDL Authors.
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

#ifndef QEDL_ERRORS_H_
#define QEDL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qedl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record. The message names the file and line.
class ParseError : public Error {
 public:
  ParseError(const std::string &source, int line, const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Violated precondition on an argument (empty corpus, bad span, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Model file that cannot be used (bad version, label order, layout).
class ModelError : public Error {
 public:
  using Error::Error;
};

// Bad or incomplete configuration; the message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qedl

#endif  // QEDL_ERRORS_H_
