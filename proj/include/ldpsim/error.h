// Copyright 2026 The ldpsim Authors
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

#ifndef LDPSIM_ERROR_H_
#define LDPSIM_ERROR_H_

#include <stdexcept>
#include <string>

namespace ldpsim {

// Base of every error thrown by the library. The CLI maps ConfigError to exit
// code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (non-positive epsilon, shape
// mismatch, unknown enum name, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Domain with fewer than two values handed to a randomized protocol.
class DegenerateDomain : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Value index outside [0, k).
class OutOfDomain : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Report variant does not match the protocol it is interpreted with.
class VariantMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// p == q: the frequency estimator cannot separate signal from noise.
class NonIdentifiable : public Error {
 public:
  using Error::Error;
};

// Sampling without replacement ran out of unused attributes.
class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

// Derived probability left [0, 1] for the supplied parameters.
class ParameterInconsistency : public Error {
 public:
  using Error::Error;
};

// Malformed input file (ragged CSV, empty column, unreadable path).
class DataError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration could not be parsed or is inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ldpsim

#endif  // LDPSIM_ERROR_H_
