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

#include "wigtel/teleport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "wigtel/errors.h"

namespace wigtel {

namespace {

constexpr double KERNEL_TOLERANCE = 1e-12;
constexpr double NEGATIVE_PROBABILITY_FLOOR = -1e-10;
constexpr double MIN_PROBABILITY = 1e-15;
constexpr double FIDELITY_TOLERANCE = 1e-10;
constexpr double RESOURCE_EIGENVALUE_FLOOR = -1e-10;

void require_parties(const WignerGrid &grid, std::size_t parties, const char *what) {
    if (grid.parties() != parties) {
        throw std::invalid_argument(
            std::string(what) + " expects a " + std::to_string(parties) + "-party grid, got " +
            std::to_string(grid.parties()));
    }
}

void require_same_dim(const PrimeDimension &a, const PrimeDimension &b, const char *what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

/// Moves whole trailing blocks of a grid so that the party-0/party-1 offset pair
/// `source_of(dest)` lands at `dest`.
template <typename SourceOf>
WignerGrid relabel_leading_pair(const WignerGrid &grid, SourceOf source_of) {
    if (grid.parties() < 2) {
        throw std::invalid_argument("canonical transform needs at least two parties");
    }
    const PrimeDimension &dim = grid.dim();
    const std::size_t n = dim.value();
    const std::size_t m = n * n;
    const std::size_t block = grid.size() / (m * m);
    std::vector<double> out(grid.size());
    for (Residue b0 = 0; b0 < n; b0++) {          // P-type coordinate of slot 0
        for (Residue a0 = 0; a0 < n; a0++) {      // Q-type coordinate of slot 0
            for (Residue b1 = 0; b1 < n; b1++) {  // P-type coordinate of slot 1
                for (Residue a1 = 0; a1 < n; a1++) {
                    auto [s0, s1] = source_of(PhasePoint{a0, b0}, PhasePoint{a1, b1});
                    std::size_t dst = (point_offset({a0, b0}, dim) * m + point_offset({a1, b1}, dim)) * block;
                    std::size_t src = (point_offset(s0, dim) * m + point_offset(s1, dim)) * block;
                    std::copy_n(grid.values().begin() + static_cast<std::ptrdiff_t>(src), block,
                                out.begin() + static_cast<std::ptrdiff_t>(dst));
                }
            }
        }
    }
    return WignerGrid(dim, grid.parties(), std::move(out));
}

/// Receiver-slice weights sum_{X1, P2} W'(X1, P1, X2, P2, q3, p3) added into `acc` with weight w.
void accumulate_slice(const WignerGrid &transformed, Residue x2, Residue p1, double w, std::vector<double> &acc) {
    const PrimeDimension &dim = transformed.dim();
    const std::size_t n = dim.value();
    const std::size_t m = n * n;
    for (Residue x1 = 0; x1 < n; x1++) {
        std::size_t slot0 = point_offset({x1, p1}, dim);
        for (Residue p2 = 0; p2 < n; p2++) {
            std::size_t slot1 = point_offset({x2, p2}, dim);
            const double *src = transformed.values().data() + (slot0 * m + slot1) * m;
            for (std::size_t i = 0; i < m; i++) {
                acc[i] += w * src[i];
            }
        }
    }
}

std::vector<TeleportTrace> run_validated(
    const WignerGrid &input, const WignerGrid &resource, const Kernel &filter, const OutcomeSelection &selection) {
    auto input_grid = std::make_shared<const WignerGrid>(input);
    auto joint = std::make_shared<const WignerGrid>(assemble_joint(input, resource));
    auto transformed = std::make_shared<const WignerGrid>(canonical_transform(*joint));
    std::vector<BellOutcome> distribution = outcome_distribution(*transformed, filter);

    std::vector<BellOutcome> selected;
    std::optional<std::uint64_t> seed;
    if (selection.mode == OutcomeSelection::Mode::Exhaustive) {
        for (const BellOutcome &o : distribution) {
            if (o.probability > MIN_PROBABILITY) {
                selected.push_back(o);
            }
        }
    } else {
        if (selection.count == 0) {
            throw ConfigError("sampled outcome selection needs a positive count");
        }
        seed = selection.seed;
        std::vector<double> weights;
        weights.reserve(distribution.size());
        for (const BellOutcome &o : distribution) {
            weights.push_back(std::max(0.0, o.probability));
        }
        std::mt19937_64 rng(selection.seed);
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        for (std::size_t i = 0; i < selection.count; i++) {
            selected.push_back(distribution[pick(rng)]);
        }
    }

    std::vector<TeleportTrace> traces;
    traces.reserve(selected.size());
    for (const BellOutcome &outcome : selected) {
        WignerGrid conditional = condition_on_outcome(*transformed, outcome, filter);
        WignerGrid output = correct(conditional, outcome);
        double f = fidelity(input, output);
        traces.push_back(TeleportTrace{
            input_grid, joint, transformed, std::move(conditional), std::move(output), outcome, f, seed});
    }
    return traces;
}

}  // namespace

Kernel::Kernel(PrimeDimension dim, std::vector<double> weights) : dim_(dim), weights_(std::move(weights)) {
    if (weights_.size() != dim_.points()) {
        throw ConfigError("kernel must have N^2 = " + std::to_string(dim_.points()) + " weights");
    }
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0) {
            throw ConfigError("kernel weights must be finite and non-negative");
        }
    }
    double total = stable_sum(weights_);
    if (!(std::abs(total - 1.0) <= KERNEL_TOLERANCE)) {
        throw ConfigError("kernel weights must sum to 1 (got " + std::to_string(total) + ")");
    }
}

Kernel Kernel::point_mass(const PrimeDimension &dim) {
    std::vector<double> w(dim.points(), 0.0);
    w[0] = 1.0;
    return Kernel(dim, std::move(w));
}

Kernel Kernel::uniform(const PrimeDimension &dim) {
    return Kernel(dim, std::vector<double>(dim.points(), 1.0 / static_cast<double>(dim.points())));
}

Kernel Kernel::periodized_gaussian(const PrimeDimension &dim, double sigma) {
    if (std::isnan(sigma) || sigma < 0) {
        throw ConfigError("Gaussian kernel width must be non-negative");
    }
    if (sigma == 0) {
        return point_mass(dim);
    }
    if (std::isinf(sigma)) {
        return uniform(dim);
    }
    const std::uint32_t n = dim.value();
    std::vector<double> profile(n, 0.0);
    for (std::uint32_t a = 0; a < n; a++) {
        // centred representative in (-N/2, N/2]
        double centred = a <= n / 2 ? static_cast<double>(a) : static_cast<double>(a) - n;
        for (int j = -1; j <= 1; j++) {
            double x = centred + static_cast<double>(j) * n;
            profile[a] += std::exp(-x * x / (2 * sigma * sigma));
        }
    }
    std::vector<double> w(dim.points());
    for (std::uint32_t b = 0; b < n; b++) {
        for (std::uint32_t a = 0; a < n; a++) {
            w[static_cast<std::size_t>(b) * n + a] = profile[a] * profile[b];
        }
    }
    double total = stable_sum(w);
    for (double &v : w) {
        v /= total;
    }
    return Kernel(dim, std::move(w));
}

bool Kernel::is_point_mass() const {
    return weights_[0] == 1.0;
}

double Kernel::entropy() const {
    double h = 0;
    for (double w : weights_) {
        if (w > 0) {
            h -= w * std::log(w);
        }
    }
    return h;
}

NoiseModel NoiseModel::ideal(const PrimeDimension &dim) {
    return NoiseModel{Kernel::point_mass(dim), Kernel::point_mass(dim)};
}

WignerGrid epr_grid(const PrimeDimension &dim, const NoiseModel &noise) {
    require_same_dim(dim, noise.epr_kernel.dim(), "epr_grid");
    const std::uint32_t n = dim.value();
    const std::size_t m = dim.points();
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<double> values(m * m);
    for (Residue p2 = 0; p2 < n; p2++) {
        for (Residue q2 = 0; q2 < n; q2++) {
            for (Residue p3 = 0; p3 < n; p3++) {
                for (Residue q3 = 0; q3 < n; q3++) {
                    std::size_t flat = point_offset({q2, p2}, dim) * m + point_offset({q3, p3}, dim);
                    values[flat] = scale * noise.epr_kernel.at(dim.sub(q2, q3), dim.add(p2, p3));
                }
            }
        }
    }
    WignerGrid grid(dim, 2, std::move(values));
    validate_resource(grid);
    return grid;
}

void validate_resource(const WignerGrid &resource) {
    require_parties(resource, 2, "validate_resource");
    double lo = from_wigner(resource).min_eigenvalue();
    if (lo < RESOURCE_EIGENVALUE_FLOOR) {
        throw InvalidResource(
            "resource grid is not a valid two-party state (min eigenvalue " + std::to_string(lo) + ")");
    }
}

WignerGrid assemble_joint(const WignerGrid &input, const WignerGrid &resource) {
    require_parties(input, 1, "assemble_joint input");
    require_parties(resource, 2, "assemble_joint resource");
    require_same_dim(input.dim(), resource.dim(), "assemble_joint");
    return product(input, resource);
}

WignerGrid canonical_transform(const WignerGrid &joint) {
    const PrimeDimension &dim = joint.dim();
    // Destination (X1, P1), (X2, P2) reads from q1 = D2(X1 + X2), q2 = D2(X1 - X2), same for p.
    return relabel_leading_pair(joint, [&](PhasePoint bell0, PhasePoint bell1) {
        PhasePoint first{dim.half(dim.add(bell0.q, bell1.q)), dim.half(dim.add(bell0.p, bell1.p))};
        PhasePoint second{dim.half(dim.sub(bell0.q, bell1.q)), dim.half(dim.sub(bell0.p, bell1.p))};
        return std::pair{first, second};
    });
}

WignerGrid inverse_canonical_transform(const WignerGrid &transformed) {
    const PrimeDimension &dim = transformed.dim();
    return relabel_leading_pair(transformed, [&](PhasePoint first, PhasePoint second) {
        PhasePoint bell0{dim.add(first.q, second.q), dim.add(first.p, second.p)};
        PhasePoint bell1{dim.sub(first.q, second.q), dim.sub(first.p, second.p)};
        return std::pair{bell0, bell1};
    });
}

std::vector<BellOutcome> outcome_distribution(const WignerGrid &transformed) {
    require_parties(transformed, 3, "outcome_distribution");
    const PrimeDimension &dim = transformed.dim();
    const std::uint32_t n = dim.value();
    const std::size_t m = dim.points();
    std::vector<BellOutcome> out;
    out.reserve(m);
    for (Residue x2 = 0; x2 < n; x2++) {
        for (Residue p1 = 0; p1 < n; p1++) {
            std::vector<double> partials;
            partials.reserve(m);
            for (Residue x1 = 0; x1 < n; x1++) {
                for (Residue p2 = 0; p2 < n; p2++) {
                    std::size_t base = (point_offset({x1, p1}, dim) * m + point_offset({x2, p2}, dim)) * m;
                    partials.push_back(stable_sum(std::span(transformed.values()).subspan(base, m)));
                }
            }
            double prob = stable_sum(partials);
            if (prob < NEGATIVE_PROBABILITY_FLOOR) {
                throw NegativeProbability(
                    "Bell outcome " + to_string(PhasePoint{x2, p1}) + " has probability " + std::to_string(prob));
            }
            out.push_back(BellOutcome{x2, p1, prob});
        }
    }
    return out;
}

std::vector<BellOutcome> outcome_distribution(const WignerGrid &transformed, const Kernel &filter) {
    std::vector<BellOutcome> sharp = outcome_distribution(transformed);
    if (filter.is_point_mass()) {
        return sharp;
    }
    const PrimeDimension &dim = transformed.dim();
    require_same_dim(dim, filter.dim(), "outcome_distribution");
    const std::uint32_t n = dim.value();
    std::vector<BellOutcome> out = sharp;
    for (BellOutcome &o : out) {
        double prob = 0;
        for (Residue dp = 0; dp < n; dp++) {
            for (Residue dq = 0; dq < n; dq++) {
                double w = filter.at(dq, dp);
                if (w != 0) {
                    prob += w * sharp[static_cast<std::size_t>(dim.add(o.x2, dq)) * n + dim.add(o.p1, dp)].probability;
                }
            }
        }
        o.probability = prob;
    }
    return out;
}

WignerGrid condition_on_outcome(const WignerGrid &transformed, const BellOutcome &outcome, const NoiseModel &noise) {
    return condition_on_outcome(transformed, outcome, noise.measurement_filter);
}

WignerGrid condition_on_outcome(const WignerGrid &transformed, const BellOutcome &outcome, const Kernel &filter) {
    require_parties(transformed, 3, "condition_on_outcome");
    const PrimeDimension &dim = transformed.dim();
    require_same_dim(dim, filter.dim(), "condition_on_outcome");
    const std::uint32_t n = dim.value();
    const Residue x2 = dim.reduce(outcome.x2);
    const Residue p1 = dim.reduce(outcome.p1);
    std::vector<double> acc(dim.points(), 0.0);
    for (Residue dp = 0; dp < n; dp++) {
        for (Residue dq = 0; dq < n; dq++) {
            double w = filter.at(dq, dp);
            if (w != 0) {
                accumulate_slice(transformed, dim.add(x2, dq), dim.add(p1, dp), w, acc);
            }
        }
    }
    double total = stable_sum(acc);
    if (!(total > MIN_PROBABILITY)) {
        throw ZeroProbability("Bell outcome " + to_string(PhasePoint{x2, p1}) + " has zero probability");
    }
    for (double &v : acc) {
        v /= total;
    }
    return WignerGrid(dim, 1, std::move(acc));
}

WignerGrid correct(const WignerGrid &conditional, const BellOutcome &outcome) {
    return shift_grid(conditional, outcome.x2, outcome.p1);
}

double fidelity(const WignerGrid &input, const WignerGrid &output) {
    double f = overlap(from_wigner(input), from_wigner(output));
    if (f < -FIDELITY_TOLERANCE || f > 1 + FIDELITY_TOLERANCE) {
        throw NumericalError("fidelity " + std::to_string(f) + " outside [0, 1]");
    }
    return std::clamp(f, 0.0, 1.0);
}

std::vector<TeleportTrace> run_teleport(
    const WignerGrid &input, const NoiseModel &noise, const OutcomeSelection &selection) {
    require_parties(input, 1, "run_teleport input");
    WignerGrid resource = epr_grid(input.dim(), noise);
    return run_validated(input, resource, noise.measurement_filter, selection);
}

std::vector<TeleportTrace> run_teleport(
    const WignerGrid &input, const WignerGrid &resource, const Kernel &filter, const OutcomeSelection &selection) {
    require_parties(input, 1, "run_teleport input");
    require_same_dim(input.dim(), resource.dim(), "run_teleport");
    require_same_dim(input.dim(), filter.dim(), "run_teleport");
    validate_resource(resource);
    return run_validated(input, resource, filter, selection);
}

}  // namespace wigtel
