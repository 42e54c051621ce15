// Copyright 2026 The Thermalizer Authors
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

#include <stdexcept>
#include <string>

namespace thermalizer {

/// Input violates a documented precondition of the callee (bad index, bad
/// probability, non-Hermitian operator where one is required, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside what this library supports
/// (non-abelian groups, dissipators on more than two sites, ...).
class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form expression hits a pole for the requested parameters.
class SingularParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The object is valid but not in the state an operation requires, e.g.
/// asking for a sector permutation of a channel that is not strongly
/// symmetric.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace thermalizer
