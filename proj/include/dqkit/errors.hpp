// Copyright 2026 The dqkit Authors.
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

#ifndef DQKIT_ERRORS_HPP_
#define DQKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dqkit {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the mathematical domain of an operation
// (non-unit pose, non-pure exponent, zero direction, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Vector or matrix sizes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A controller was used before its objective was set.
class NotSetError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class MaxIterationsError : public Error {
 public:
  using Error::Error;
};

// Robot model or scene file could not be parsed or validated.
class ModelFileError : public Error {
 public:
  using Error::Error;
};

class IOError : public Error {
 public:
  using Error::Error;
};

}  // namespace dqkit

#endif  // DQKIT_ERRORS_HPP_
