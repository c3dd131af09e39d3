// Copyright 2026 The InterferLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INTERFERLAB_ERROR_HPP
#define INTERFERLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace interferlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live on incompatible systems, or a composite descriptor is malformed.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An object violates one of its defining constraints (normalization,
// positivity, unit-effect preservation, disjointness, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Requested states cannot be perfectly distinguished.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Operation is not defined for this backend or input class.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A protocol that must be deterministic produced a non-deterministic outcome.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace interferlab

#endif  // INTERFERLAB_ERROR_HPP
