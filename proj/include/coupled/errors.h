// Copyright 2026 The Authors.
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

#ifndef COUPLED_ERRORS_H_
#define COUPLED_ERRORS_H_

#include <stdexcept>
#include <string>

namespace coupled {

// Bad arguments to a query: out-of-range index, duplicate element, element
// already present in the set being extended.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would exceed its configured budget.
class SizeError : public std::length_error {
 public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

// Malformed problem instance (inconsistent ids, non-PD prior, ...).
class InstanceError : public std::invalid_argument {
 public:
  explicit InstanceError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Factorization or inversion failed.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Output could not be written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coupled

#endif  // COUPLED_ERRORS_H_
