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

#ifndef WIGTEL_PHASE_SPACE_H
#define WIGTEL_PHASE_SPACE_H

#include <cstddef>
#include <cstdint>
#include <string>

namespace wigtel {

/// A canonical representative of Z_N, always in [0, N).
using Residue = std::uint32_t;

/// Largest dimension accepted unless WIGTEL_MAX_DIM overrides it.
constexpr std::uint32_t DEFAULT_MAX_DIMENSION = 97;

/// The supported-dimension cap, honoring the WIGTEL_MAX_DIM environment variable.
std::uint32_t max_supported_dimension();

bool is_prime(std::uint64_t n);

/// An odd prime N >= 3. All residue arithmetic in the library is done modulo this value.
class PrimeDimension {
   public:
    /// Throws ConfigError("dimension must be an odd prime") for N that is not an odd prime,
    /// and ConfigError when N exceeds `max_dim`.
    explicit PrimeDimension(std::uint32_t n, std::uint32_t max_dim = max_supported_dimension());

    std::uint32_t value() const {
        return n_;
    }
    /// Number of phase-space points, N^2.
    std::size_t points() const {
        return static_cast<std::size_t>(n_) * n_;
    }

    /// Maps any integer onto its canonical residue.
    Residue reduce(std::int64_t k) const;

    Residue add(Residue a, Residue b) const {
        Residue s = a + b;
        return s >= n_ ? s - n_ : s;
    }
    Residue neg(Residue a) const {
        return a == 0 ? 0 : n_ - a;
    }
    Residue sub(Residue a, Residue b) const {
        return add(a, neg(b));
    }
    Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % n_);
    }
    /// Generalized halving: the unique h with 2h = k (mod N).
    Residue half(Residue k) const {
        return (k % 2 == 0) ? k / 2 : (k + n_) / 2;
    }

    bool operator==(const PrimeDimension &other) const = default;

   private:
    std::uint32_t n_;
};

Residue mod_add(Residue a, Residue b, const PrimeDimension &dim);
Residue mod_neg(Residue a, const PrimeDimension &dim);
Residue d2(Residue k, const PrimeDimension &dim);

/// A point (q, p) of the discrete phase space Z_N x Z_N.
struct PhasePoint {
    Residue q = 0;
    Residue p = 0;

    bool operator==(const PhasePoint &other) const = default;
};

/// Builds a point after reducing both coordinates modulo N.
PhasePoint make_point(std::int64_t q, std::int64_t p, const PrimeDimension &dim);

/// Position of a point within a single-party grid: q varies fastest.
inline std::size_t point_offset(PhasePoint pt, const PrimeDimension &dim) {
    return static_cast<std::size_t>(pt.p) * dim.value() + pt.q;
}

std::string to_string(PhasePoint pt);

}  // namespace wigtel

#endif
