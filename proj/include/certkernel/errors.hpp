// Copyright 2026 The certkernel Authors
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

namespace certkernel {

/// Base of all frontend errors; carries a 1-based source position.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, std::size_t col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col),
        message_(msg) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string message_;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Well-formed input that uses a feature outside the supported fragment.
class UnsupportedError : public InputError {
 public:
  UnsupportedError(std::size_t line, std::size_t col, const std::string& feature)
      : InputError(line, col, "unsupported: " + feature), feature_(feature) {}

  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

/// A premise or name that refers to something not yet defined.
class ReferenceError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace certkernel
