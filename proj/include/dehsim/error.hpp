// Copyright 2026 The dehsim Authors
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

namespace dehsim {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    NonHermitian,
    DegenerateState,
    Truncation,
    Convergence,
    InvariantViolation,
    Parse,
    Validation,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so that the C API and
/// the CLI can map it onto a status code without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a state carries too much weight near the top of the retained
/// Fock ladder. `leakage()` is the measured population.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double leakage)
        : Error(ErrorKind::Truncation, what), leakage_(leakage) {}

    double leakage() const noexcept { return leakage_; }

private:
    double leakage_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace dehsim
