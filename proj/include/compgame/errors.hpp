// Copyright 2026 The Compgame Authors.
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

#ifndef COMPGAME_ERRORS_HPP_
#define COMPGAME_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compgame {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value is outside the operation's contract.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A strategy or game is missing data the operation needs (e.g. a type
// with no action distribution).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The operation exists but not for this representation, e.g. an exact
// computation requested on a sampler-only type distribution.
class UnsupportedModeError : public Error {
 public:
  using Error::Error;
};

// A strategy machine ran out of steps.
class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(std::size_t instruction_index, const std::string& what)
      : Error(what), instruction_index_(instruction_index) {}

  std::size_t instruction_index() const noexcept { return instruction_index_; }

 private:
  std::size_t instruction_index_;
};

}  // namespace compgame

#endif  // COMPGAME_ERRORS_HPP_
