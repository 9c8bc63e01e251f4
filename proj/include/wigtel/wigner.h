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

#ifndef WIGTEL_WIGNER_H
#define WIGTEL_WIGNER_H

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "wigtel/hilbert.h"
#include "wigtel/phase_space.h"

namespace wigtel {

/// Upper bound on stored grid entries (N^(2k)), about 2 GiB of doubles.
constexpr std::size_t MAX_GRID_ENTRIES = std::size_t{1} << 28;

/// N^(2 parties). Throws ConfigError past MAX_GRID_ENTRIES.
std::size_t grid_size(const PrimeDimension &dim, std::size_t parties);

/// Neumaier-compensated sum.
double stable_sum(std::span<const double> values);

/// A normalized real quasiprobability distribution over (Z_N x Z_N)^parties.
///
/// Storage: party 0 is the slowest-varying block of N^2 entries; inside a party the
/// offset is p * N + q, so q varies fastest.
class WignerGrid {
   public:
    /// Requires N^(2 parties) finite values summing to 1 (within 1e-12 of the l1 mass).
    WignerGrid(PrimeDimension dim, std::size_t parties, std::vector<double> values);

    const PrimeDimension &dim() const {
        return dim_;
    }
    std::size_t parties() const {
        return parties_;
    }
    std::size_t size() const {
        return values_.size();
    }
    const std::vector<double> &values() const {
        return values_;
    }
    double operator[](std::size_t flat) const {
        return values_[flat];
    }
    /// Value at one phase-space point per party.
    double at(std::span<const PhasePoint> points) const;
    double at(PhasePoint point) const {
        return at(std::span<const PhasePoint>(&point, 1));
    }
    std::size_t index_of(std::span<const PhasePoint> points) const;
    /// Inverse of index_of.
    std::vector<PhasePoint> points_of(std::size_t flat) const;
    double sum() const;

    bool operator==(const WignerGrid &other) const = default;

   private:
    PrimeDimension dim_;
    std::size_t parties_;
    std::vector<double> values_;
};

/// The discrete Wigner operators A(q, p) of one dimension.
///
/// A(q, p) has exactly one non-zero per row: entry (r, 2q - r) with phase
/// e^{2 pi i p (2r - 2q) / N}. The set keeps that sparse form and materializes dense
/// matrices on request.
class WignerOperatorSet {
   public:
    explicit WignerOperatorSet(PrimeDimension dim);

    /// Shared instance per dimension, built on first use.
    static std::shared_ptr<const WignerOperatorSet> get(const PrimeDimension &dim);

    const PrimeDimension &dim() const {
        return dim_;
    }
    /// Column of the single non-zero in row r of A(q, .).
    Residue column(Residue q, Residue r) const {
        return columns_[static_cast<std::size_t>(q) * dim_.value() + r];
    }
    /// e^{2 pi i k / N} for a residue k.
    Complex phase(Residue k) const {
        return phases_[k];
    }
    Complex entry(PhasePoint point, Residue r) const {
        return phase(dim_.mul(point.p, dim_.sub(r, column(point.q, r))));
    }
    Matrix dense(PhasePoint point) const;

   private:
    PrimeDimension dim_;
    std::vector<Residue> columns_;
    std::vector<Complex> phases_;
};

Matrix wigner_operator(PhasePoint point, const PrimeDimension &dim);

/// (1/N^k) Tr(op * A(a_1) x ... x A(a_k)) for every grid point, before discarding the
/// imaginary part. `op` must be N^k x N^k.
std::vector<Complex> wigner_expectations(const PrimeDimension &dim, std::size_t parties, const Matrix &op);

/// Forward transform. Throws NonHermitianInput if any imaginary residue exceeds 1e-9.
WignerGrid to_wigner(const DensityMatrix &state);

/// Inverse transform rho = sum W(a) A(a). The result is Hermitian with unit trace
/// but only positive if the grid describes a physical state.
DensityMatrix from_wigner(const WignerGrid &grid);

/// P(q) = sum_p W(q, p). Single-party grids only.
std::vector<double> marginal_q(const WignerGrid &grid);
/// P(p) = sum_q W(q, p). Single-party grids only.
std::vector<double> marginal_p(const WignerGrid &grid);

/// Sums out every party not in `keep` (0-based indices; result keeps ascending order).
WignerGrid partial_sum(const WignerGrid &grid, std::span<const std::size_t> keep);

/// W'(q, p) = W(q - dq, p - dp) on a single-party grid.
WignerGrid shift_grid(const WignerGrid &grid, Residue dq, Residue dp);

/// Product distribution; `a` occupies the leading parties.
WignerGrid product(const WignerGrid &a, const WignerGrid &b);

/// Tr(rho sigma) = N^k sum W_rho W_sigma.
double grid_overlap(const WignerGrid &a, const WignerGrid &b);

/// Largest absolute entrywise difference. Grids must have the same shape.
double max_abs_diff(const WignerGrid &a, const WignerGrid &b);

}  // namespace wigtel

#endif
