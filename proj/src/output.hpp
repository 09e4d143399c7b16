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

// Locale-independent number formatting and atomic file output.

#include <filesystem>
#include <string>
#include <string_view>

namespace dehsim::detail {

/// 17 significant digits, shortest of fixed/scientific ("%.17g" semantics).
std::string format_number(double value);

/// Writes to `path.tmp` in the same directory, then renames over `path`.
/// Raises Io on any failure.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace dehsim::detail
