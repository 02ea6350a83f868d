// Copyright 2026 The azfid Authors
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

#ifndef AZFID_ERRORS_HPP
#define AZFID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace azfid {

/// Input failed a structural check (shape, Hermiticity, normalization, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix expected to be positive semi-definite has an eigenvalue below
/// the clamp threshold.
class NotPsdError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A scalar parameter (alpha, z, t, ...) is outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// supp(rho) is not contained in supp(sigma) where the quantity requires it.
class SupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No closed form is known for the requested (alpha, z) and target.
class UnsupportedRegion : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested target value lies outside an attainable interval.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An operation precondition on its inputs (rank, channel class) failed.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed verification configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace azfid

#endif  // AZFID_ERRORS_HPP
