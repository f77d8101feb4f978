// Copyright 2026 The exsafe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXSAFE_ERROR_H_
#define EXSAFE_ERROR_H_

#include <stdexcept>
#include <string>

namespace exsafe {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes disagree (vector lengths, matrix widths, odd d for XOR).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Operation undefined on the given input (e.g. average of an empty matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric parameter (n > N, eps_hat <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Inputs violate a documented precondition that pairs two components
// (wrong side-info variant for an attacker, non-neighboring datasets, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration cannot be resolved into a runnable game.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace exsafe

#endif  // EXSAFE_ERROR_H_
