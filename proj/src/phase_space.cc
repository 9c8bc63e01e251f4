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

#include "wigtel/phase_space.h"

#include <cstdlib>
#include <string>

#include "wigtel/errors.h"

namespace wigtel {

std::uint32_t max_supported_dimension() {
    const char *env = std::getenv("WIGTEL_MAX_DIM");
    if (env == nullptr || *env == '\0') {
        return DEFAULT_MAX_DIMENSION;
    }
    char *end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v < 3 || v > 1000000) {
        throw ConfigError("WIGTEL_MAX_DIM must be an integer between 3 and 1000000");
    }
    return static_cast<std::uint32_t>(v);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; d++) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

PrimeDimension::PrimeDimension(std::uint32_t n, std::uint32_t max_dim) : n_(n) {
    if (n < 3 || !is_prime(n)) {
        throw ConfigError("dimension must be an odd prime");
    }
    if (n > max_dim) {
        throw ConfigError(
            "dimension " + std::to_string(n) + " exceeds supported maximum " + std::to_string(max_dim));
    }
}

Residue PrimeDimension::reduce(std::int64_t k) const {
    std::int64_t r = k % static_cast<std::int64_t>(n_);
    if (r < 0) {
        r += n_;
    }
    return static_cast<Residue>(r);
}

Residue mod_add(Residue a, Residue b, const PrimeDimension &dim) {
    return dim.add(a, b);
}

Residue mod_neg(Residue a, const PrimeDimension &dim) {
    return dim.neg(a);
}

Residue d2(Residue k, const PrimeDimension &dim) {
    return dim.half(k);
}

PhasePoint make_point(std::int64_t q, std::int64_t p, const PrimeDimension &dim) {
    return {dim.reduce(q), dim.reduce(p)};
}

std::string to_string(PhasePoint pt) {
    return "(" + std::to_string(pt.q) + "," + std::to_string(pt.p) + ")";
}

}  // namespace wigtel
