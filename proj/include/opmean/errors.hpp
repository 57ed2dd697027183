// Copyright 2026 The opmean authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace opmean {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible matrix/operator dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// A documented precondition does not hold (e.g. non-commuting input to a
// commutative-only routine). Carries the measured violation when available.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what, double violation = 0.0)
        : Error(what), violation_norm(violation) {}
    double violation_norm;
};

// Configured size cap exceeded (tensor powers, copy counts).
struct ResourceError : Error {
    using Error::Error;
};

// Iterative procedure failed to certify convergence. Carries the residual
// between the last two iterates.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what, double residual_in = 0.0)
        : Error(what), residual(residual_in) {}
    double residual;
};

// Eigenvalue pairing in a two-projection normal form could not be resolved
// at the working tolerance.
struct NumericalDegeneracyError : Error {
    using Error::Error;
};

// Malformed external input (JSON schema violations etc.). `field` points at
// the offending entry.
struct InputError : Error {
    explicit InputError(const std::string& what, std::string field_in = "")
        : Error(what), field(std::move(field_in)) {}
    std::string field;
};

}  // namespace opmean
