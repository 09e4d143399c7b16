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

// Declarative scenario runner: one JSON document describes the Hamiltonian,
// the source, the time grid and the outputs of one command.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dehsim {

enum class Command { Fidelity, Entropy, Wigner, Verify, Robustness, Semiclassical };

const char* to_string(Command command) noexcept;
/// Raises Validation on an unknown name.
Command command_from_string(const std::string& name);

class Scenario {
public:
    /// Raises Parse on malformed JSON or a document that is not an object.
    static Scenario parse(std::string_view text);
    /// Raises Io when the file cannot be read, Parse as above.
    static Scenario load(const std::filesystem::path& path);

    /// JSON merge patch (null deletes a key).
    void apply_patch(std::string_view patch);
    void merge_patch(const nlohmann::json& patch);

    const nlohmann::json& document() const { return doc_; }
    std::string to_json() const;

    /// Resolves every field and builds every state without propagating.
    /// Raises Parse on schema errors (unknown keys, wrong types) and
    /// Validation on out-of-range values.
    void validate() const;

    /// Validates, runs, and writes each declared output below `out_dir`
    /// (relative paths) atomically. Returns the files written.
    std::vector<std::filesystem::path> run(const std::filesystem::path& out_dir) const;

private:
    explicit Scenario(nlohmann::json doc) : doc_(std::move(doc)) {}

    nlohmann::json doc_;
};

}  // namespace dehsim
