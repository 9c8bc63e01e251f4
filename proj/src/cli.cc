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

#include "wigtel/cli.h"

#include <cmath>
#include <random>
#include <string_view>

#include "CLI11.hpp"
#include "wigtel/errors.h"
#include "wigtel/grid_io.h"

namespace wigtel {

namespace {

std::vector<std::string> split_spec(const std::string &spec) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = spec.find(':', start);
        parts.push_back(spec.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::int64_t spec_integer(const std::string &text, const std::string &spec) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception &) {
        throw UnknownSpec("bad integer in state spec '" + spec + "'");
    }
    if (used != text.size()) {
        throw UnknownSpec("bad integer in state spec '" + spec + "'");
    }
    return v;
}

std::uint64_t spec_unsigned(const std::string &text, const std::string &spec) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw UnknownSpec("bad seed in state spec '" + spec + "'");
    }
    try {
        return std::stoull(text);
    } catch (const std::exception &) {
        throw UnknownSpec("bad seed in state spec '" + spec + "'");
    }
}

double spec_real(const std::string &text, const std::string &spec) {
    char *end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw UnknownSpec("bad number in spec '" + spec + "'");
    }
    return v;
}

OutcomeSelection selection_for(const RunConfig &c, std::uint64_t seed) {
    if (c.outcomes == "sampled") {
        return OutcomeSelection::sampled(seed, c.samples);
    }
    return OutcomeSelection::exhaustive();
}

std::string trace_name(std::size_t index, const BellOutcome &o, const char *what) {
    return "trace_" + std::to_string(index) + "_x2_" + std::to_string(o.x2) + "_p1_" + std::to_string(o.p1) + "_" +
           what + ".grid";
}

}  // namespace

StateVector discrete_gaussian_state(double sigma, Residue center, const PrimeDimension &dim) {
    if (std::isnan(sigma) || sigma < 0) {
        throw UnknownSpec("discrete Gaussian width must be non-negative");
    }
    if (sigma == 0) {
        return position_eigenstate(center, dim);
    }
    const std::uint32_t n = dim.value();
    Vector amps = Vector::Zero(n);
    for (std::uint32_t k = 0; k < n; k++) {
        Residue offset = dim.sub(k, center);
        double centred = offset <= n / 2 ? static_cast<double>(offset) : static_cast<double>(offset) - n;
        double acc = 0;
        for (int j = -1; j <= 1; j++) {
            double x = centred + static_cast<double>(j) * n;
            acc += std::exp(-x * x / (4 * sigma * sigma));
        }
        amps[k] = acc;
    }
    return StateVector::normalized(dim, 1, std::move(amps));
}

DensityMatrix build_density_matrix(const std::string &spec, const PrimeDimension &dim) {
    std::vector<std::string> parts = split_spec(spec);
    const std::string &kind = parts[0];
    if (kind == "position" && parts.size() == 2) {
        return DensityMatrix::pure(position_eigenstate(dim.reduce(spec_integer(parts[1], spec)), dim));
    }
    if (kind == "momentum" && parts.size() == 2) {
        return DensityMatrix::pure(momentum_eigenstate(dim.reduce(spec_integer(parts[1], spec)), dim));
    }
    if (kind == "random" && parts.size() == 2) {
        std::mt19937_64 rng(spec_unsigned(parts[1], spec));
        return DensityMatrix::pure(random_pure_state(dim, 1, rng));
    }
    if (kind == "gaussian" && (parts.size() == 2 || parts.size() == 3)) {
        Residue center = parts.size() == 3 ? dim.reduce(spec_integer(parts[2], spec)) : 0;
        return DensityMatrix::pure(discrete_gaussian_state(spec_real(parts[1], spec), center, dim));
    }
    if (kind == "mixed" && parts.size() == 1) {
        return DensityMatrix::maximally_mixed(dim, 1);
    }
    if (kind == "epr" && parts.size() == 1) {
        return DensityMatrix::pure(epr_state(dim));
    }
    if (kind == "bell" && parts.size() == 3) {
        return DensityMatrix::pure(bell_state(
            dim.reduce(spec_integer(parts[1], spec)), dim.reduce(spec_integer(parts[2], spec)), dim));
    }
    throw UnknownSpec("unknown state spec '" + spec + "'");
}

WignerGrid build_state(const std::string &spec, const PrimeDimension &dim) {
    return to_wigner(build_density_matrix(spec, dim));
}

Kernel parse_kernel_spec(const std::string &spec, const PrimeDimension &dim) {
    if (spec == "ideal") {
        return Kernel::point_mass(dim);
    }
    if (spec == "uniform") {
        return Kernel::uniform(dim);
    }
    if (spec.rfind("gaussian:", 0) == 0) {
        return Kernel::periodized_gaussian(dim, spec_real(spec.substr(9), spec));
    }
    if (spec.rfind("file:", 0) == 0) {
        return read_kernel_file(spec.substr(5), dim);
    }
    throw UnknownSpec("unknown kernel spec '" + spec + "'");
}

std::vector<SweepRow> compute_sweep(const RunConfig &config) {
    validate_config(config, true);
    PrimeDimension dim(config.dim);
    Kernel filter = parse_kernel_spec(config.filter_kernel, dim);
    std::mt19937_64 rng(config.seed);
    std::vector<WignerGrid> inputs;
    for (std::size_t i = 0; i < config.sweep_inputs; i++) {
        inputs.push_back(to_wigner(DensityMatrix::pure(random_pure_state(dim, 1, rng))));
    }
    std::vector<SweepRow> rows;
    for (double width : config.widths) {
        NoiseModel noise{Kernel::periodized_gaussian(dim, width), filter};
        double total = 0;
        double lowest = 1;
        std::size_t count = 0;
        for (std::size_t i = 0; i < inputs.size(); i++) {
            for (const TeleportTrace &t : run_teleport(inputs[i], noise, selection_for(config, config.seed + i))) {
                total += t.fidelity;
                lowest = std::min(lowest, t.fidelity);
                count++;
            }
        }
        rows.push_back(SweepRow{width, noise.epr_kernel.entropy(), total / static_cast<double>(count), lowest});
    }
    return rows;
}

std::string format_sweep_table(const std::vector<SweepRow> &rows) {
    std::string out = "width\tkernel_entropy\tmean_fidelity\tmin_fidelity\n";
    for (const SweepRow &r : rows) {
        out += format_double(r.width) + "\t" + format_double(r.entropy) + "\t" + format_double(r.mean_fidelity) +
               "\t" + format_double(r.min_fidelity) + "\n";
    }
    return out;
}

int cmd_teleport(const RunConfig &config, std::ostream &log) {
    validate_config(config, false);
    PrimeDimension dim(config.dim);
    WignerGrid input = build_state(config.input, dim);
    if (input.parties() != 1) {
        throw ConfigError("teleport input must be a single-party state");
    }
    NoiseModel noise{parse_kernel_spec(config.epr_kernel, dim), parse_kernel_spec(config.filter_kernel, dim)};
    std::vector<TeleportTrace> traces;
    if (config.resource.empty()) {
        traces = run_teleport(input, noise, selection_for(config, config.seed));
    } else {
        GridFile resource = read_grid_file(config.resource);
        if (resource.grid.parties() != 2 || !(resource.grid.dim() == dim)) {
            throw ConfigError("resource file must hold a two-party grid of the run dimension");
        }
        traces = run_teleport(input, resource.grid, noise.measurement_filter, selection_for(config, config.seed));
    }

    std::filesystem::path out = config.out_dir;
    write_config_file(out / "run.json", config);
    write_text_file(out / "outcomes.tsv", format_outcome_table(traces));
    FidelitySummary summary = summarize(traces);
    write_text_file(out / "fidelity.txt", format_fidelity_summary(summary));
    if (config.write_traces) {
        std::filesystem::path dir = out / "traces";
        write_grid_files(dir / "input.grid", GridFile{input, default_variables(1)});
        std::vector<std::string> receiver = {"q3", "p3"};
        for (std::size_t i = 0; i < traces.size(); i++) {
            const TeleportTrace &t = traces[i];
            write_grid_files(dir / trace_name(i, t.outcome, "conditional"), GridFile{t.conditional_grid, receiver});
            write_grid_files(dir / trace_name(i, t.outcome, "output"), GridFile{t.output_grid, receiver});
        }
    }
    log << "teleported " << config.input << " at N=" << dim.value() << " over " << summary.count
        << " outcomes: fidelity mean=" << format_double(summary.mean) << " min=" << format_double(summary.min)
        << " max=" << format_double(summary.max) << "\n";
    return 0;
}

int cmd_sweep(const RunConfig &config, std::ostream &log) {
    std::vector<SweepRow> rows = compute_sweep(config);
    std::filesystem::path out = config.out_dir;
    write_config_file(out / "run.json", config);
    std::string table = format_sweep_table(rows);
    write_text_file(out / "sweep.tsv", table);
    log << table;
    return 0;
}

int cmd_wigner(
    const std::string &spec,
    std::uint32_t dim_value,
    const std::filesystem::path &out_dir,
    std::optional<std::pair<std::int64_t, std::int64_t>> shift,
    const std::optional<std::filesystem::path> &from,
    std::ostream &log) {
    std::optional<GridFile> file;
    if (from) {
        file = read_grid_file(*from);
    } else {
        PrimeDimension dim(dim_value);
        WignerGrid grid = build_state(spec, dim);
        std::size_t parties = grid.parties();
        file = GridFile{std::move(grid), default_variables(parties)};
    }
    write_grid_files(out_dir / "wigner.grid", *file);
    const WignerGrid &grid = file->grid;
    log << "wrote " << (out_dir / "wigner.grid").string() << " (N=" << grid.dim().value()
        << ", parties=" << grid.parties() << ", sum=" << format_double(grid.sum()) << ")\n";
    if (shift) {
        if (grid.parties() != 1) {
            throw ConfigError("--shift needs a single-party state");
        }
        const PrimeDimension &dim = grid.dim();
        WignerGrid shifted = shift_grid(grid, dim.reduce(shift->first), dim.reduce(shift->second));
        write_grid_files(out_dir / "shifted.grid", GridFile{std::move(shifted), file->variables});
        log << "wrote " << (out_dir / "shifted.grid").string() << "\n";
    }
    return 0;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Qudit teleportation in the discrete Wigner representation", "wigtel"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig defaults;
    std::uint32_t dim = defaults.dim;
    std::uint64_t seed = defaults.seed;
    std::string out_dir = defaults.out_dir;
    auto *dim_opt = app.add_option("--dim", dim, "Hilbert-space dimension (odd prime)");
    auto *seed_opt = app.add_option("--seed", seed, "Seed for sampled outcomes and random inputs");
    auto *out_opt = app.add_option("--out", out_dir, "Output directory");

    auto *wigner = app.add_subcommand("wigner", "Write the Wigner grid of a state");
    std::string state = "position:0";
    std::string shift_text;
    std::string from;
    wigner->add_option("--state", state, "State descriptor");
    wigner->add_option("--shift", shift_text, "Also write the grid shifted by dq,dp");
    wigner->add_option("--from", from, "Re-serialize an existing grid file instead");

    RunConfig cli;
    std::string widths_text;
    std::string config_path;
    auto *teleport = app.add_subcommand("teleport", "Run the protocol and write outcome and fidelity tables");
    auto *sweep = app.add_subcommand("sweep", "Tabulate mean fidelity against Gaussian EPR-kernel width");
    std::vector<std::pair<CLI::App *, std::vector<CLI::Option *>>> run_options;
    for (CLI::App *sub : {teleport, sweep}) {
        std::vector<CLI::Option *> opts;
        opts.push_back(sub->add_option("--filter-kernel", cli.filter_kernel, "ideal|uniform|gaussian:<s>|file:<path>"));
        opts.push_back(sub->add_option("--outcomes", cli.outcomes, "exhaustive|sampled"));
        opts.push_back(sub->add_option("--samples", cli.samples, "Outcome draws in sampled mode"));
        sub->add_option("--config", config_path, "Run config JSON; explicit flags override it");
        run_options.emplace_back(sub, std::move(opts));
    }
    auto *input_opt = teleport->add_option("--input", cli.input, "Input state descriptor");
    auto *epr_opt = teleport->add_option("--epr-kernel", cli.epr_kernel, "ideal|uniform|gaussian:<s>|file:<path>");
    auto *resource_opt = teleport->add_option("--resource", cli.resource, "Two-party resource grid file");
    auto *traces_opt = teleport->add_flag("--write-traces", cli.write_traces, "Write per-outcome grids");
    auto *widths_opt = sweep->add_option("--widths", widths_text, "Comma-separated non-decreasing widths");
    auto *inputs_opt = sweep->add_option("--inputs", cli.sweep_inputs, "Random pure inputs per width");

    std::vector<const char *> argv{"wigtel"};
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (wigner->parsed()) {
            std::optional<std::pair<std::int64_t, std::int64_t>> shift;
            if (!shift_text.empty()) {
                auto comma = shift_text.find(',');
                if (comma == std::string::npos) {
                    throw ConfigError("--shift expects dq,dp");
                }
                try {
                    shift.emplace(std::stoll(shift_text.substr(0, comma)), std::stoll(shift_text.substr(comma + 1)));
                } catch (const std::logic_error &) {
                    throw ConfigError("--shift expects two integers");
                }
            }
            std::optional<std::filesystem::path> from_path;
            if (!from.empty()) {
                from_path = from;
            }
            return cmd_wigner(state, dim, out_dir, shift, from_path, out);
        }

        CLI::App *sub = teleport->parsed() ? teleport : sweep;
        RunConfig config = config_path.empty() ? RunConfig{} : read_config_file(config_path);
        auto given = [](const CLI::Option *opt) { return opt->count() > 0; };
        if (config_path.empty() || given(dim_opt)) config.dim = dim;
        if (config_path.empty() || given(seed_opt)) config.seed = seed;
        if (config_path.empty() || given(out_opt)) config.out_dir = out_dir;
        for (auto &[owner, opts] : run_options) {
            if (owner != sub) {
                continue;
            }
            if (config_path.empty() || given(opts[0])) config.filter_kernel = cli.filter_kernel;
            if (config_path.empty() || given(opts[1])) config.outcomes = cli.outcomes;
            if (config_path.empty() || given(opts[2])) config.samples = cli.samples;
        }
        if (sub == teleport) {
            if (config_path.empty() || given(input_opt)) config.input = cli.input;
            if (config_path.empty() || given(epr_opt)) config.epr_kernel = cli.epr_kernel;
            if (config_path.empty() || given(resource_opt)) config.resource = cli.resource;
            if (config_path.empty() || given(traces_opt)) config.write_traces = cli.write_traces;
            return cmd_teleport(config, out);
        }
        if (config_path.empty() || given(widths_opt)) config.widths = parse_width_list(widths_text);
        if (config_path.empty() || given(inputs_opt)) config.sweep_inputs = cli.sweep_inputs;
        return cmd_sweep(config, out);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError &e) {
        err << "numerical validation failed: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "numerical validation failed: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace wigtel
