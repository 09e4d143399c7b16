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

#include "dehsim/error.hpp"

namespace dehsim {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NonHermitian: return "non-Hermitian input";
    case ErrorKind::DegenerateState: return "degenerate state";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Convergence: return "convergence failure";
    case ErrorKind::InvariantViolation: return "invariant violation";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Io: return "I/O error";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace dehsim
