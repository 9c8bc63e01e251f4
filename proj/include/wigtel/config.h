// Copyright 2026 The wigtel Authors
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

#ifndef WIGTEL_CONFIG_H
#define WIGTEL_CONFIG_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace wigtel {

/// Everything a `teleport` or `sweep` run depends on. Serialized next to the outputs so
/// a run can be repeated with `--config`.
struct RunConfig {
    std::uint32_t dim = 5;
    std::uint64_t seed = 0;
    std::string out_dir = "wigtel-out";
    /// State descriptor, see build_state.
    std::string input = "random:0";
    /// ideal | uniform | gaussian:<sigma> | file:<path>
    std::string epr_kernel = "ideal";
    std::string filter_kernel = "ideal";
    /// Optional two-party resource grid file; replaces epr_kernel when set.
    std::string resource;
    /// exhaustive | sampled
    std::string outcomes = "exhaustive";
    std::size_t samples = 0;
    bool write_traces = false;
    /// Sweep only: EPR kernel widths (non-decreasing; +inf means uniform).
    std::vector<double> widths;
    /// Sweep only: number of random pure inputs.
    std::size_t sweep_inputs = 4;

    bool operator==(const RunConfig &other) const = default;
};

nlohmann::json config_to_json(const RunConfig &config);
/// Missing keys keep their defaults. Throws ConfigError on type errors.
RunConfig config_from_json(const nlohmann::json &j);

RunConfig read_config_file(const std::filesystem::path &path);
void write_config_file(const std::filesystem::path &path, const RunConfig &config);

/// Checks the dimension against the supported cap, the outcome mode, referenced kernel
/// files and the width list. Throws ConfigError.
void validate_config(const RunConfig &config, bool sweep);

/// Parses "0,0.5,1,inf".
std::vector<double> parse_width_list(const std::string &text);

}  // namespace wigtel

#endif
