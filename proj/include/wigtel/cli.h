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

#ifndef WIGTEL_CLI_H
#define WIGTEL_CLI_H

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wigtel/config.h"
#include "wigtel/hilbert.h"
#include "wigtel/teleport.h"
#include "wigtel/wigner.h"

namespace wigtel {

/// State descriptors:
///   position:<k>          |k>
///   momentum:<l>          |p_l>
///   random:<seed>         Gaussian-sampled pure state
///   gaussian:<sigma>[:<k0>]  periodized discrete Gaussian centred on k0 (default 0)
///   mixed                 identity / N
///   epr                   two-party (1/sqrt N) sum |k>|k>
///   bell:<p>:<x>          two-party Bell state
/// Throws UnknownSpec for anything else.
DensityMatrix build_density_matrix(const std::string &spec, const PrimeDimension &dim);
WignerGrid build_state(const std::string &spec, const PrimeDimension &dim);

/// Amplitudes proportional to sum_{j=-1..1} exp(-(k - k0 + jN)^2 / (4 sigma^2)).
StateVector discrete_gaussian_state(double sigma, Residue center, const PrimeDimension &dim);

/// ideal | uniform | gaussian:<sigma> | file:<path>
Kernel parse_kernel_spec(const std::string &spec, const PrimeDimension &dim);

struct SweepRow {
    double width;
    double entropy;
    double mean_fidelity;
    double min_fidelity;
};

/// Mean fidelity over all selected outcomes of `config.sweep_inputs` random pure inputs,
/// one row per width.
std::vector<SweepRow> compute_sweep(const RunConfig &config);
std::string format_sweep_table(const std::vector<SweepRow> &rows);

/// Writes run.json, outcomes.tsv, fidelity.txt (and traces/ when requested) under out_dir.
int cmd_teleport(const RunConfig &config, std::ostream &log);
/// Writes run.json and sweep.tsv under out_dir.
int cmd_sweep(const RunConfig &config, std::ostream &log);
/// Writes wigner.grid (+ .json) for `spec`, or re-serializes `from` when given, and
/// shifted.grid when `shift` is set.
int cmd_wigner(
    const std::string &spec,
    std::uint32_t dim,
    const std::filesystem::path &out_dir,
    std::optional<std::pair<std::int64_t, std::int64_t>> shift,
    const std::optional<std::filesystem::path> &from,
    std::ostream &log);

/// Full command line (without the program name). Returns the process exit status:
/// 0 success, 2 configuration error, 3 numerical validation failure.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wigtel

#endif
