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

#ifndef WIGTEL_HILBERT_H
#define WIGTEL_HILBERT_H

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wigtel/phase_space.h"

namespace wigtel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// e^{2 pi i k / N}.
Complex root_of_unity(std::int64_t k, const PrimeDimension &dim);

/// N^parties.
std::size_t hilbert_size(const PrimeDimension &dim, std::size_t parties);

/// Pure state of `parties` qudits. Party 0 is the most significant index.
class StateVector {
   public:
    /// Requires unit norm within 1e-12.
    StateVector(PrimeDimension dim, std::size_t parties, Vector amplitudes);
    /// Rescales `amplitudes` to unit norm first.
    static StateVector normalized(PrimeDimension dim, std::size_t parties, Vector amplitudes);

    const PrimeDimension &dim() const {
        return dim_;
    }
    std::size_t parties() const {
        return parties_;
    }
    const Vector &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t k) const {
        return amplitudes_[static_cast<Eigen::Index>(k)];
    }
    /// <this|other>
    Complex inner(const StateVector &other) const;

   private:
    PrimeDimension dim_;
    std::size_t parties_;
    Vector amplitudes_;
};

/// Hermitian unit-trace operator on N^parties levels.
///
/// Construction checks shape, Hermiticity and trace (1e-12). Positivity is a separate
/// check (`require_positive`), because inverse Wigner transforms of arbitrary grids
/// legitimately produce non-positive operators that the caller must reject.
class DensityMatrix {
   public:
    DensityMatrix(PrimeDimension dim, std::size_t parties, Matrix entries);

    static DensityMatrix pure(const StateVector &state);
    static DensityMatrix maximally_mixed(PrimeDimension dim, std::size_t parties);

    const PrimeDimension &dim() const {
        return dim_;
    }
    std::size_t parties() const {
        return parties_;
    }
    const Matrix &matrix() const {
        return entries_;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(entries_.rows());
    }

    double min_eigenvalue() const;
    bool is_positive_semidefinite(double floor = -1e-10) const;
    /// Throws NumericalError when the smallest eigenvalue is below -1e-10.
    const DensityMatrix &require_positive() const;
    double purity() const;

   private:
    PrimeDimension dim_;
    std::size_t parties_;
    Matrix entries_;
};

/// Kronecker product; `a` supplies the more significant indices.
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Traces out every party not listed in `keep` (0-based, any order; result keeps ascending order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);

/// Re Tr(a b).
double overlap(const DensityMatrix &a, const DensityMatrix &b);

StateVector position_eigenstate(Residue k, const PrimeDimension &dim);
StateVector momentum_eigenstate(Residue l, const PrimeDimension &dim);

/// (1/sqrt N) sum_k e^{2 pi i k p / N} |k>|k - x>, the joint eigenstate with
/// q1 - q2 = x and p1 + p2 = p (mod N).
StateVector bell_state(Residue p, Residue x, const PrimeDimension &dim);

/// (1/sqrt N) sum_k |k>|k>.
StateVector epr_state(const PrimeDimension &dim);

/// Diagonal operator with eigenvalue (a - b) mod N on |a>|b>.
Matrix joint_position_difference(const PrimeDimension &dim);
/// Operator with eigenvalue (l + m) mod N on |p_l>|p_m>.
Matrix joint_momentum_sum(const PrimeDimension &dim);

/// Receiver-side correction sum_k e^{2 pi i p1 k / N} |k><k - x2|.
class UnitaryCorrection {
   public:
    UnitaryCorrection(Residue x_shift, Residue p_shift, const PrimeDimension &dim);

    Residue x_shift() const {
        return x_shift_;
    }
    Residue p_shift() const {
        return p_shift_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    /// U rho U^dagger
    DensityMatrix apply(const DensityMatrix &rho) const;

   private:
    PrimeDimension dim_;
    Residue x_shift_;
    Residue p_shift_;
    Matrix matrix_;
};

UnitaryCorrection bennett_unitary(Residue x2, Residue p1, const PrimeDimension &dim);

/// Bell-measurement record: x2 is the q1 - q2 eigenvalue, p1 the p1 + p2 eigenvalue.
struct BellOutcome {
    Residue x2 = 0;
    Residue p1 = 0;
    double probability = 0;
};

struct OracleResult {
    double probability;
    /// Receiver state after the measurement and before correction.
    DensityMatrix conditional;
};

/// Projects input (party 1) tensor resource (parties 2, 3) onto the Bell state of
/// parties 1, 2 with eigenvalues (outcome.x2, outcome.p1) and returns the receiver state.
///
/// With a non-empty `filter` (N^2 weights indexed by p*N + q offsets) the measurement is
/// unsharp: the unnormalized receiver states of outcomes (x2 + dq, p1 + dp) are mixed with
/// weights filter[dq, dp]. Throws ZeroProbability below 1e-15.
OracleResult oracle_teleport(
    const DensityMatrix &input,
    const DensityMatrix &resource,
    const BellOutcome &outcome,
    std::span<const double> filter = {});

/// Same as above with the ideal EPR resource.
OracleResult oracle_teleport(const DensityMatrix &input, const BellOutcome &outcome);

/// Amplitudes with i.i.d. standard-normal real and imaginary parts, normalized.
StateVector random_pure_state(const PrimeDimension &dim, std::size_t parties, std::mt19937_64 &rng);

/// G G^dagger / Tr(G G^dagger) for a complex Gaussian G.
DensityMatrix random_density_matrix(const PrimeDimension &dim, std::size_t parties, std::mt19937_64 &rng);

}  // namespace wigtel

#endif
