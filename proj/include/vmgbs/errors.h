// Copyright 2026 The vmgbs Authors
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

#ifndef VMGBS_ERRORS_H
#define VMGBS_ERRORS_H

#include <stdexcept>
#include <string>

namespace vmgbs {

/// Bad argument to a public operation (out-of-range vertex, size mismatch, ...).
class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A search hit its configured budget before it could decide.
/// Raised instead of returning an answer that might be wrong.
class ResourceExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Encoding constant or squeezing outside the range that yields a valid state.
class InvalidEncoding : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Covariance matrix that is not a physical Gaussian state, or a missing model.
class InvalidState : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Zero matrix passed where a positive largest singular value is needed.
class DegenerateInput : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

class InvalidKernel : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

class InvalidDataset : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace vmgbs

#endif  // VMGBS_ERRORS_H
