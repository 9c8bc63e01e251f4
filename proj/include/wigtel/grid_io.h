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

#ifndef WIGTEL_GRID_IO_H
#define WIGTEL_GRID_IO_H

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wigtel/teleport.h"
#include "wigtel/wigner.h"

namespace wigtel {

constexpr int GRID_FORMAT_VERSION = 1;

/// A grid plus the names of its variables, slowest party first (q then p per party).
struct GridFile {
    WignerGrid grid;
    std::vector<std::string> variables;
};

/// q1,p1,q2,p2,...
std::vector<std::string> default_variables(std::size_t parties);

/// Text form: a `wigtel-grid` line, key=value header lines, a `values` line, then one
/// value per line (%.17g) in grid storage order.
std::string format_grid_text(const GridFile &file);
/// Throws ConfigError on malformed input, including a header sum that differs from the
/// recomputed sum by more than 1e-9.
GridFile parse_grid_text(std::string_view text);

nlohmann::json grid_to_json(const GridFile &file);
GridFile grid_from_json(const nlohmann::json &j);

/// Writes the text file at `path` and the JSON sibling at `path` with extension ".json".
void write_grid_files(const std::filesystem::path &path, const GridFile &file);
/// Reads either format, chosen by extension.
GridFile read_grid_file(const std::filesystem::path &path);

/// A kernel stored as a single-party grid file of matching dimension.
Kernel read_kernel_file(const std::filesystem::path &path, const PrimeDimension &dim);

struct FidelitySummary {
    std::size_t count = 0;
    double mean = 0;
    double min = 0;
    double max = 0;
};

FidelitySummary summarize(const std::vector<TeleportTrace> &traces);

/// Columns: index, x2, p1, probability, fidelity.
std::string format_outcome_table(const std::vector<TeleportTrace> &traces);
std::string format_fidelity_summary(const FidelitySummary &summary);

/// %.17g
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

}  // namespace wigtel

#endif
