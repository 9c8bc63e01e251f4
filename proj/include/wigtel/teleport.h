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

#ifndef WIGTEL_TELEPORT_H
#define WIGTEL_TELEPORT_H

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "wigtel/hilbert.h"
#include "wigtel/wigner.h"

namespace wigtel {

/// A probability kernel over Z_N x Z_N.
///
/// Entry (a, b) is stored at b * N + a, the same layout as a single-party grid. For the
/// entanglement resource a = q2 - q3 and b = p2 + p3; for the measurement filter (a, b)
/// is the deviation (dX2, dP1) from the reported outcome.
class Kernel {
   public:
    /// Requires non-negative weights summing to 1 within 1e-12.
    Kernel(PrimeDimension dim, std::vector<double> weights);

    static Kernel point_mass(const PrimeDimension &dim);
    static Kernel uniform(const PrimeDimension &dim);
    /// Product of two periodized Gaussians exp(-(a + jN)^2 / (2 sigma^2)), j in {-1, 0, 1}.
    /// sigma = 0 gives the point mass; sigma = +inf gives the uniform kernel.
    static Kernel periodized_gaussian(const PrimeDimension &dim, double sigma);

    const PrimeDimension &dim() const {
        return dim_;
    }
    const std::vector<double> &weights() const {
        return weights_;
    }
    double at(Residue a, Residue b) const {
        return weights_[static_cast<std::size_t>(b) * dim_.value() + a];
    }
    bool is_point_mass() const;
    /// Shannon entropy in nats.
    double entropy() const;

    bool operator==(const Kernel &other) const = default;

   private:
    PrimeDimension dim_;
    std::vector<double> weights_;
};

/// Imperfections of the protocol: a smeared entanglement resource and an unsharp Bell filter.
struct NoiseModel {
    Kernel epr_kernel;
    Kernel measurement_filter;

    static NoiseModel ideal(const PrimeDimension &dim);
};

/// Two-party resource W(q2, p2, q3, p3) = (1/N^2) K(q2 - q3, p2 + p3).
/// Throws InvalidResource if the grid does not describe a density matrix.
WignerGrid epr_grid(const PrimeDimension &dim, const NoiseModel &noise);

/// Rejects two-party grids whose inverse transform is not positive semidefinite.
void validate_resource(const WignerGrid &resource);

/// W(q1, p1, q2, p2, q3, p3) = W_in(q1, p1) W_res(q2, p2, q3, p3).
WignerGrid assemble_joint(const WignerGrid &input, const WignerGrid &resource);

/// Rewrites parties 0 and 1 in the Bell variables X1 = q1 + q2, X2 = q1 - q2,
/// P1 = p1 + p2, P2 = p1 - p2. The output stores (X1, P1) in party slot 0 and
/// (X2, P2) in party slot 1; remaining parties are untouched.
WignerGrid canonical_transform(const WignerGrid &joint);
WignerGrid inverse_canonical_transform(const WignerGrid &transformed);

/// Probability of each Bell outcome, ordered by x2 * N + p1. Throws NegativeProbability
/// when any outcome falls below -1e-10.
std::vector<BellOutcome> outcome_distribution(const WignerGrid &transformed);
/// As above, for the outcome reported through an unsharp filter.
std::vector<BellOutcome> outcome_distribution(const WignerGrid &transformed, const Kernel &filter);

/// Receiver grid after the measurement reports `outcome`, before correction, renormalized.
/// Throws ZeroProbability if the (filtered) outcome weight is below 1e-15.
WignerGrid condition_on_outcome(const WignerGrid &transformed, const BellOutcome &outcome, const NoiseModel &noise);
WignerGrid condition_on_outcome(const WignerGrid &transformed, const BellOutcome &outcome, const Kernel &filter);

/// Receiver correction: the displacement W(q - X2, p - P1).
WignerGrid correct(const WignerGrid &conditional, const BellOutcome &outcome);

/// Tr(rho_in rho_out) through the inverse transform, clamped to [0, 1] within 1e-10.
double fidelity(const WignerGrid &input, const WignerGrid &output);

struct OutcomeSelection {
    enum class Mode { Exhaustive, Sampled };

    Mode mode = Mode::Exhaustive;
    std::uint64_t seed = 0;
    std::size_t count = 0;

    static OutcomeSelection exhaustive() {
        return {};
    }
    static OutcomeSelection sampled(std::uint64_t seed, std::size_t count) {
        return {Mode::Sampled, seed, count};
    }
};

/// Every intermediate grid of one protocol run. The three-party grids are shared
/// between the traces of a single run.
struct TeleportTrace {
    std::shared_ptr<const WignerGrid> input_grid;
    std::shared_ptr<const WignerGrid> joint_grid;
    std::shared_ptr<const WignerGrid> transformed_grid;
    WignerGrid conditional_grid;
    WignerGrid output_grid;
    BellOutcome outcome;
    double fidelity;
    /// Set for sampled runs.
    std::optional<std::uint64_t> seed;
};

/// Runs the protocol on a single-party input. Exhaustive selection yields one trace per
/// outcome in x2 * N + p1 order (zero-probability outcomes are skipped); sampled selection
/// draws `count` outcomes from the outcome distribution with a seeded generator.
std::vector<TeleportTrace> run_teleport(
    const WignerGrid &input, const NoiseModel &noise, const OutcomeSelection &selection);

/// Same, with an explicit two-party resource grid (validated) and measurement filter.
std::vector<TeleportTrace> run_teleport(
    const WignerGrid &input, const WignerGrid &resource, const Kernel &filter, const OutcomeSelection &selection);

}  // namespace wigtel

#endif
