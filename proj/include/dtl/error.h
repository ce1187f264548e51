// Copyright 2026 The dtl Authors.
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

#ifndef DTL_ERROR_H_
#define DTL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input parsed but violates a domain invariant (duplicate id, bad label, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad parameters or configuration (a >= b, missing plugin, missing glossary
// entry, unsupported component ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerically or statistically undefined computation (single-class training
// data, constant correlation input, empty dataset ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtl

#endif  // DTL_ERROR_H_
