/*
 * Copyright 2026 The dartr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace dartr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument value or dimension mismatch.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A kernel or model evaluated to a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// The problem carries no information (zero measure, empty spectrum, ...).
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an object that lacks required state.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

class InsufficientRankError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or command line; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dartr
