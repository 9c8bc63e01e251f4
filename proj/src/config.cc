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

#include "wigtel/config.h"

#include <cmath>
#include <cstdlib>

#include "wigtel/errors.h"
#include "wigtel/grid_io.h"
#include "wigtel/phase_space.h"

namespace wigtel {

namespace {

nlohmann::json width_to_json(double w) {
    if (std::isinf(w)) {
        return "inf";
    }
    return w;
}

double width_from_json(const nlohmann::json &j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") {
            return INFINITY;
        }
        throw ConfigError("width must be a number or \"inf\"");
    }
    return j.get<double>();
}

void check_kernel_spec(const std::string &spec) {
    if (spec.rfind("file:", 0) == 0) {
        std::filesystem::path path = spec.substr(5);
        if (!std::filesystem::exists(path)) {
            throw ConfigError("kernel file does not exist: " + path.string());
        }
    }
}

}  // namespace

nlohmann::json config_to_json(const RunConfig &c) {
    nlohmann::json widths = nlohmann::json::array();
    for (double w : c.widths) {
        widths.push_back(width_to_json(w));
    }
    return {
        {"dim", c.dim},
        {"seed", c.seed},
        {"out_dir", c.out_dir},
        {"input", c.input},
        {"epr_kernel", c.epr_kernel},
        {"filter_kernel", c.filter_kernel},
        {"resource", c.resource},
        {"outcomes", c.outcomes},
        {"samples", c.samples},
        {"write_traces", c.write_traces},
        {"widths", widths},
        {"sweep_inputs", c.sweep_inputs},
    };
}

RunConfig config_from_json(const nlohmann::json &j) {
    RunConfig c;
    try {
        if (!j.is_object()) {
            throw ConfigError("run config must be a JSON object");
        }
        c.dim = j.value("dim", c.dim);
        c.seed = j.value("seed", c.seed);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.input = j.value("input", c.input);
        c.epr_kernel = j.value("epr_kernel", c.epr_kernel);
        c.filter_kernel = j.value("filter_kernel", c.filter_kernel);
        c.resource = j.value("resource", c.resource);
        c.outcomes = j.value("outcomes", c.outcomes);
        c.samples = j.value("samples", c.samples);
        c.write_traces = j.value("write_traces", c.write_traces);
        c.sweep_inputs = j.value("sweep_inputs", c.sweep_inputs);
        if (j.contains("widths")) {
            for (const auto &w : j.at("widths")) {
                c.widths.push_back(width_from_json(w));
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed run config: ") + e.what());
    }
    return c;
}

RunConfig read_config_file(const std::filesystem::path &path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded()) {
        throw ConfigError("malformed JSON in " + path.string());
    }
    return config_from_json(j);
}

void write_config_file(const std::filesystem::path &path, const RunConfig &config) {
    write_text_file(path, config_to_json(config).dump(2) + "\n");
}

void validate_config(const RunConfig &c, bool sweep) {
    static_cast<void>(PrimeDimension(c.dim));
    if (c.outcomes != "exhaustive" && c.outcomes != "sampled") {
        throw ConfigError("outcome mode must be 'exhaustive' or 'sampled'");
    }
    if (c.outcomes == "sampled" && c.samples == 0) {
        throw ConfigError("sampled outcome mode needs --samples > 0");
    }
    check_kernel_spec(c.filter_kernel);
    if (!sweep) {
        check_kernel_spec(c.epr_kernel);
        if (!c.resource.empty() && !std::filesystem::exists(c.resource)) {
            throw ConfigError("resource file does not exist: " + c.resource);
        }
        return;
    }
    if (c.widths.empty()) {
        throw ConfigError("sweep needs at least one width");
    }
    for (std::size_t i = 0; i < c.widths.size(); i++) {
        if (std::isnan(c.widths[i]) || c.widths[i] < 0) {
            throw ConfigError("sweep widths must be non-negative");
        }
        if (i > 0 && c.widths[i] < c.widths[i - 1]) {
            throw ConfigError("sweep widths must be non-decreasing");
        }
    }
    if (c.sweep_inputs == 0) {
        throw ConfigError("sweep needs at least one input");
    }
}

std::vector<double> parse_width_list(const std::string &text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(',', start);
        std::string item = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        char *end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size()) {
            throw ConfigError("bad width '" + item + "'");
        }
        out.push_back(v);
        if (pos == std::string::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

}  // namespace wigtel
