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

#include "wigtel/grid_io.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "wigtel/errors.h"

namespace wigtel {

namespace {

constexpr std::string_view GRID_MAGIC = "wigtel-grid";
constexpr double HEADER_SUM_TOLERANCE = 1e-9;

double parse_double(std::string_view text, std::string_view what) {
    std::string s(text);
    char *end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw ConfigError("bad " + std::string(what) + ": '" + s + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
    std::string s(text);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("bad " + std::string(what) + ": '" + s + "'");
    }
    errno = 0;
    unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
    if (errno == ERANGE) {
        throw ConfigError("bad " + std::string(what) + ": '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

void check_variables(const std::vector<std::string> &variables, std::size_t parties) {
    if (variables.size() != 2 * parties) {
        throw ConfigError("grid file must name 2 variables per party");
    }
}

GridFile finish(std::uint64_t dim, std::uint64_t parties, std::vector<std::string> variables, double header_sum,
                std::vector<double> values) {
    if (dim > std::numeric_limits<std::uint32_t>::max() || parties == 0) {
        throw ConfigError("grid file has a bad dim or parties field");
    }
    PrimeDimension d(static_cast<std::uint32_t>(dim));
    if (values.size() != grid_size(d, parties)) {
        throw ConfigError("grid file value count does not match N^(2 parties)");
    }
    check_variables(variables, parties);
    double recomputed = stable_sum(values);
    if (!(std::abs(recomputed - header_sum) <= HEADER_SUM_TOLERANCE)) {
        throw ConfigError("grid file sum field does not match its values");
    }
    return GridFile{WignerGrid(d, parties, std::move(values)), std::move(variables)};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> default_variables(std::size_t parties) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= parties; i++) {
        out.push_back("q" + std::to_string(i));
        out.push_back("p" + std::to_string(i));
    }
    return out;
}

std::string format_grid_text(const GridFile &file) {
    const WignerGrid &g = file.grid;
    check_variables(file.variables, g.parties());
    std::string out;
    out.reserve(g.size() * 24 + 128);
    out += GRID_MAGIC;
    out += "\nformat=" + std::to_string(GRID_FORMAT_VERSION);
    out += "\ndim=" + std::to_string(g.dim().value());
    out += "\nparties=" + std::to_string(g.parties());
    out += "\nvariables=";
    for (std::size_t i = 0; i < file.variables.size(); i++) {
        out += (i ? "," : "") + file.variables[i];
    }
    out += "\nsum=" + format_double(g.sum());
    out += "\ncount=" + std::to_string(g.size());
    out += "\nvalues\n";
    for (double v : g.values()) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

GridFile parse_grid_text(std::string_view text) {
    std::vector<std::string> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty() || lines[0] != GRID_MAGIC) {
        throw ConfigError("not a wigtel grid file");
    }
    std::map<std::string, std::string> header;
    std::size_t i = 1;
    for (; i < lines.size() && lines[i] != "values"; i++) {
        auto eq = lines[i].find('=');
        if (eq == std::string::npos) {
            throw ConfigError("malformed grid header line: '" + lines[i] + "'");
        }
        header[lines[i].substr(0, eq)] = lines[i].substr(eq + 1);
    }
    if (i == lines.size()) {
        throw ConfigError("grid file has no values section");
    }
    for (const char *key : {"format", "dim", "parties", "variables", "sum", "count"}) {
        if (!header.contains(key)) {
            throw ConfigError(std::string("grid file header is missing '") + key + "'");
        }
    }
    if (parse_unsigned(header["format"], "format") != GRID_FORMAT_VERSION) {
        throw ConfigError("unsupported grid format version " + header["format"]);
    }
    std::uint64_t count = parse_unsigned(header["count"], "count");
    if (lines.size() - i - 1 != count) {
        throw ConfigError("grid file value count does not match its count field");
    }
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t k = i + 1; k < lines.size(); k++) {
        values.push_back(parse_double(lines[k], "grid value"));
    }
    return finish(
        parse_unsigned(header["dim"], "dim"),
        parse_unsigned(header["parties"], "parties"),
        split(header["variables"], ','),
        parse_double(header["sum"], "sum"),
        std::move(values));
}

nlohmann::json grid_to_json(const GridFile &file) {
    check_variables(file.variables, file.grid.parties());
    nlohmann::json j;
    j["kind"] = GRID_MAGIC;
    j["format"] = GRID_FORMAT_VERSION;
    j["dim"] = file.grid.dim().value();
    j["parties"] = file.grid.parties();
    j["variables"] = file.variables;
    j["sum"] = file.grid.sum();
    j["values"] = file.grid.values();
    return j;
}

GridFile grid_from_json(const nlohmann::json &j) {
    try {
        if (j.at("kind").get<std::string>() != GRID_MAGIC || j.at("format").get<int>() != GRID_FORMAT_VERSION) {
            throw ConfigError("not a wigtel grid document");
        }
        return finish(
            j.at("dim").get<std::uint64_t>(),
            j.at("parties").get<std::uint64_t>(),
            j.at("variables").get<std::vector<std::string>>(),
            j.at("sum").get<double>(),
            j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed grid document: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw ConfigError("failed writing " + path.string());
    }
}

void write_grid_files(const std::filesystem::path &path, const GridFile &file) {
    write_text_file(path, format_grid_text(file));
    std::filesystem::path sibling = path;
    sibling.replace_extension(".json");
    write_text_file(sibling, grid_to_json(file).dump(1) + "\n");
}

GridFile read_grid_file(const std::filesystem::path &path) {
    std::string text = read_text_file(path);
    if (path.extension() == ".json") {
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded()) {
            throw ConfigError("malformed JSON in " + path.string());
        }
        return grid_from_json(j);
    }
    return parse_grid_text(text);
}

Kernel read_kernel_file(const std::filesystem::path &path, const PrimeDimension &dim) {
    GridFile file = read_grid_file(path);
    if (file.grid.parties() != 1 || !(file.grid.dim() == dim)) {
        throw ConfigError("kernel file " + path.string() + " must hold a single-party grid of the run dimension");
    }
    return Kernel(dim, file.grid.values());
}

FidelitySummary summarize(const std::vector<TeleportTrace> &traces) {
    FidelitySummary s;
    if (traces.empty()) {
        return s;
    }
    s.count = traces.size();
    s.min = traces.front().fidelity;
    s.max = traces.front().fidelity;
    std::vector<double> values;
    values.reserve(traces.size());
    for (const TeleportTrace &t : traces) {
        values.push_back(t.fidelity);
        s.min = std::min(s.min, t.fidelity);
        s.max = std::max(s.max, t.fidelity);
    }
    // rounding can otherwise push the mean just outside [min, max]
    s.mean = std::clamp(stable_sum(values) / static_cast<double>(values.size()), s.min, s.max);
    return s;
}

std::string format_outcome_table(const std::vector<TeleportTrace> &traces) {
    std::string out = "index\tx2\tp1\tprobability\tfidelity\n";
    for (std::size_t i = 0; i < traces.size(); i++) {
        const TeleportTrace &t = traces[i];
        out += std::to_string(i) + "\t" + std::to_string(t.outcome.x2) + "\t" + std::to_string(t.outcome.p1) + "\t" +
               format_double(t.outcome.probability) + "\t" + format_double(t.fidelity) + "\n";
    }
    return out;
}

std::string format_fidelity_summary(const FidelitySummary &s) {
    return "count=" + std::to_string(s.count) + "\nmean=" + format_double(s.mean) + "\nmin=" + format_double(s.min) +
           "\nmax=" + format_double(s.max) + "\n";
}

}  // namespace wigtel
