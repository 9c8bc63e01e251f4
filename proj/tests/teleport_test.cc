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

#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "wigtel/errors.h"

using namespace wigtel;

namespace {

constexpr double TOL = 1e-12;

WignerGrid grid_of(const StateVector &v) {
    return to_wigner(DensityMatrix::pure(v));
}

WignerGrid transformed_for(const WignerGrid &input, const WignerGrid &resource) {
    return canonical_transform(assemble_joint(input, resource));
}

}  // namespace

TEST(kernel, factories) {
    PrimeDimension five(5);
    Kernel point = Kernel::point_mass(five);
    EXPECT_TRUE(point.is_point_mass());
    EXPECT_EQ(point.entropy(), 0.0);
    Kernel flat = Kernel::uniform(five);
    EXPECT_FALSE(flat.is_point_mass());
    EXPECT_NEAR(flat.entropy(), std::log(25.0), TOL);
    EXPECT_EQ(Kernel::periodized_gaussian(five, 0), point);
    EXPECT_EQ(Kernel::periodized_gaussian(five, INFINITY), flat);

    Kernel g = Kernel::periodized_gaussian(five, 1.0);
    EXPECT_NEAR(stable_sum(g.weights()), 1.0, TOL);
    // Symmetric under a -> -a and peaked at the origin.
    for (Residue a = 1; a < 5; a++) {
        EXPECT_NEAR(g.at(a, 0), g.at(five.neg(a), 0), TOL);
        EXPECT_LT(g.at(a, 0), g.at(0, 0));
    }
    EXPECT_LT(Kernel::periodized_gaussian(five, 0.5).entropy(), g.entropy());
}

TEST(kernel, validation) {
    PrimeDimension three(3);
    EXPECT_THROW(Kernel(three, std::vector<double>(8, 1.0 / 8)), ConfigError);
    EXPECT_THROW(Kernel(three, std::vector<double>(9, 0.2)), ConfigError);
    std::vector<double> negative(9, 0.0);
    negative[0] = 1.5;
    negative[1] = -0.5;
    EXPECT_THROW(Kernel(three, negative), ConfigError);
    EXPECT_THROW(Kernel::periodized_gaussian(three, -1), ConfigError);
}

TEST(teleport, ideal_epr_grid_n3) {
    PrimeDimension three(3);
    WignerGrid epr = epr_grid(three, NoiseModel::ideal(three));
    for (std::size_t flat = 0; flat < epr.size(); flat++) {
        auto pts = epr.points_of(flat);
        bool on = pts[0].q == pts[1].q && pts[0].p == three.neg(pts[1].p);
        EXPECT_EQ(epr[flat], on ? 1.0 / 9 : 0.0);
    }
    std::vector<std::size_t> receiver{1};
    WignerGrid marginal = partial_sum(epr, receiver);
    for (double v : marginal.values()) {
        EXPECT_NEAR(v, 1.0 / 9, TOL);
    }
    EXPECT_LT(max_abs_diff(epr, to_wigner(DensityMatrix::pure(epr_state(three)))), TOL);
}

TEST(teleport, uniform_kernel_resource_is_maximally_mixed) {
    PrimeDimension five(5);
    WignerGrid resource = epr_grid(five, NoiseModel{Kernel::uniform(five), Kernel::point_mass(five)});
    for (double v : resource.values()) {
        EXPECT_NEAR(v, 1.0 / 625, TOL);
    }
    Matrix expected = Matrix::Identity(25, 25) / 25.0;
    EXPECT_LT(wigtel_test::max_abs_diff(from_wigner(resource).matrix(), expected), TOL);
}

TEST(teleport, smeared_resource_is_a_bell_mixture) {
    PrimeDimension five(5);
    std::mt19937_64 rng(3);
    Kernel k = wigtel_test::random_kernel(five, rng);
    WignerGrid resource = epr_grid(five, NoiseModel{k, Kernel::point_mass(five)});
    EXPECT_LT(max_abs_diff(resource, to_wigner(wigtel_test::bell_mixture(k))), TOL);
    std::vector<std::size_t> sender{0};
    WignerGrid marginal = partial_sum(resource, sender);
    for (double v : marginal.values()) {
        EXPECT_NEAR(v, 1.0 / 25, TOL);
    }
}

TEST(teleport, invalid_resource_is_rejected) {
    PrimeDimension three(3);
    WignerGrid epr = epr_grid(three, NoiseModel::ideal(three));
    std::vector<double> v = epr.values();
    for (double &x : v) {
        x = 2 * x - 1.0 / 81;  // 2 |EPR><EPR| - I/9 has eigenvalue -1/9
    }
    WignerGrid bad(three, 2, v);
    EXPECT_THROW(validate_resource(bad), InvalidResource);
    WignerGrid input = grid_of(position_eigenstate(0, three));
    EXPECT_THROW(run_teleport(input, bad, Kernel::point_mass(three), OutcomeSelection::exhaustive()), InvalidResource);
}

TEST(teleport, joint_grid_structure) {
    PrimeDimension three(3);
    WignerGrid input = grid_of(position_eigenstate(0, three));
    WignerGrid joint = assemble_joint(input, epr_grid(three, NoiseModel::ideal(three)));
    EXPECT_EQ(joint.parties(), 3u);
    EXPECT_NEAR(joint.sum(), 1.0, TOL);
    for (std::size_t flat = 0; flat < joint.size(); flat++) {
        auto pts = joint.points_of(flat);
        bool support = pts[0].q == 0 && pts[1].q == pts[2].q && pts[1].p == three.neg(pts[2].p);
        if (!support) {
            EXPECT_EQ(joint[flat], 0.0);
        } else {
            EXPECT_NEAR(joint[flat], 1.0 / 27, TOL);
        }
    }
    std::vector<std::size_t> first{0};
    EXPECT_LT(max_abs_diff(partial_sum(joint, first), input), TOL);
}

TEST(teleport, canonical_transform_support_and_inverse) {
    PrimeDimension three(3);
    std::mt19937_64 rng(5);
    WignerGrid input = to_wigner(random_density_matrix(three, 1, rng));
    WignerGrid joint = assemble_joint(input, epr_grid(three, NoiseModel::ideal(three)));
    WignerGrid transformed = canonical_transform(joint);
    std::size_t support = 0;
    for (std::size_t flat = 0; flat < transformed.size(); flat++) {
        auto pts = transformed.points_of(flat);
        // slot 0 = (X1, P1), slot 1 = (X2, P2), slot 2 = (q3, p3)
        bool allowed = three.sub(pts[0].q, pts[1].q) == three.add(pts[2].q, pts[2].q) &&
                       three.sub(pts[0].p, pts[1].p) == three.neg(three.add(pts[2].p, pts[2].p));
        if (!allowed) {
            EXPECT_EQ(transformed[flat], 0.0);
        }
        support += transformed[flat] != 0.0;
    }
    std::size_t joint_support = 0;
    for (double v : joint.values()) {
        joint_support += v != 0.0;
    }
    EXPECT_EQ(support, joint_support);
    EXPECT_EQ(inverse_canonical_transform(transformed), joint);

    std::multiset<double> before(joint.values().begin(), joint.values().end());
    std::multiset<double> after(transformed.values().begin(), transformed.values().end());
    EXPECT_EQ(before, after);
}

TEST(teleport, canonical_transform_matches_closed_form) {
    PrimeDimension five(5);
    std::mt19937_64 rng(7);
    WignerGrid input = to_wigner(random_density_matrix(five, 1, rng));
    WignerGrid transformed = transformed_for(input, epr_grid(five, NoiseModel::ideal(five)));
    // W' = (1/N^2) delta(X1 - X2, 2 q3) delta(P1 - P2, -2 p3) W_in(D2(X1 + X2), D2(P1 + P2))
    for (std::size_t flat = 0; flat < transformed.size(); flat++) {
        auto pts = transformed.points_of(flat);
        bool on = five.sub(pts[0].q, pts[1].q) == five.add(pts[2].q, pts[2].q) &&
                  five.sub(pts[0].p, pts[1].p) == five.neg(five.add(pts[2].p, pts[2].p));
        double expected = on ? input.at(PhasePoint{d2(five.add(pts[0].q, pts[1].q), five),
                                                   d2(five.add(pts[0].p, pts[1].p), five)}) /
                                   25.0
                             : 0.0;
        ASSERT_NEAR(transformed[flat], expected, TOL);
    }
}

TEST(teleport, ideal_outcomes_are_uniform) {
    std::mt19937_64 rng(11);
    for (std::uint32_t n : {3u, 5u, 7u}) {
        PrimeDimension dim(n);
        WignerGrid input = to_wigner(random_density_matrix(dim, 1, rng));
        std::vector<BellOutcome> dist = outcome_distribution(transformed_for(input, epr_grid(dim, NoiseModel::ideal(dim))));
        ASSERT_EQ(dist.size(), n * n);
        double total = 0;
        for (std::size_t i = 0; i < dist.size(); i++) {
            EXPECT_EQ(dist[i].x2 * n + dist[i].p1, i);
            EXPECT_NEAR(dist[i].probability, 1.0 / (n * n), TOL);
            total += dist[i].probability;
        }
        EXPECT_NEAR(total, 1.0, TOL);
    }
}

TEST(teleport, outcome_probabilities_match_oracle_for_general_resource) {
    PrimeDimension five(5);
    std::mt19937_64 rng(13);
    DensityMatrix input = random_density_matrix(five, 1, rng);
    DensityMatrix resource = random_density_matrix(five, 2, rng);
    std::vector<BellOutcome> dist = outcome_distribution(transformed_for(to_wigner(input), to_wigner(resource)));
    for (const BellOutcome &o : dist) {
        EXPECT_NEAR(o.probability, oracle_teleport(input, resource, o).probability, TOL);
    }
}

TEST(teleport, negative_outcome_probability_is_reported) {
    PrimeDimension three(3);
    WignerGrid zero = grid_of(position_eigenstate(0, three));
    WignerGrid zero_zero = product(zero, zero);
    WignerGrid mixed(three, 2, std::vector<double>(81, 1.0 / 81));
    std::vector<double> v(81);
    for (std::size_t i = 0; i < v.size(); i++) {
        v[i] = 2 * zero_zero[i] - mixed[i];
    }
    WignerGrid unphysical(three, 2, v);
    EXPECT_THROW(outcome_distribution(transformed_for(zero, unphysical)), NegativeProbability);
}

TEST(teleport, conditioning_examples) {
    PrimeDimension five(5);
    std::mt19937_64 rng(17);
    NoiseModel ideal = NoiseModel::ideal(five);
    WignerGrid input = to_wigner(random_density_matrix(five, 1, rng));
    WignerGrid transformed = transformed_for(input, epr_grid(five, ideal));

    EXPECT_LT(max_abs_diff(condition_on_outcome(transformed, BellOutcome{0, 0}, ideal), input), TOL);
    for (Residue x2 = 0; x2 < 5; x2++) {
        for (Residue p1 = 0; p1 < 5; p1++) {
            WignerGrid cond = condition_on_outcome(transformed, BellOutcome{x2, p1}, ideal);
            for (Residue q = 0; q < 5; q++) {
                for (Residue p = 0; p < 5; p++) {
                    ASSERT_NEAR(cond.at(PhasePoint{q, p}), input.at(PhasePoint{five.add(q, x2), five.add(p, p1)}), TOL);
                }
            }
        }
    }

    WignerGrid two = grid_of(position_eigenstate(2, five));
    WignerGrid cond = condition_on_outcome(transformed_for(two, epr_grid(five, ideal)), BellOutcome{1, 0}, ideal);
    EXPECT_LT(max_abs_diff(cond, grid_of(position_eigenstate(1, five))), TOL);
    OracleResult oracle = oracle_teleport(DensityMatrix::pure(position_eigenstate(2, five)), BellOutcome{1, 0});
    EXPECT_LT(max_abs_diff(cond, to_wigner(oracle.conditional)), TOL);
}

TEST(teleport, zero_probability_outcome) {
    PrimeDimension three(3);
    WignerGrid zero = grid_of(position_eigenstate(0, three));
    WignerGrid transformed = transformed_for(zero, product(zero, zero));
    EXPECT_NO_THROW(condition_on_outcome(transformed, BellOutcome{0, 2}, Kernel::point_mass(three)));
    EXPECT_THROW(condition_on_outcome(transformed, BellOutcome{1, 0}, Kernel::point_mass(three)), ZeroProbability);
}

TEST(teleport, correction_examples) {
    PrimeDimension five(5);
    std::mt19937_64 rng(19);
    WignerGrid g = to_wigner(random_density_matrix(five, 1, rng));
    EXPECT_EQ(correct(g, BellOutcome{0, 0}), g);
    EXPECT_EQ(correct(g, BellOutcome{2, 3}), shift_grid(g, 2, 3));
}

TEST(teleport, ideal_pipeline_restores_input) {
    std::mt19937_64 rng(23);
    for (std::uint32_t n : {3u, 5u, 7u}) {
        PrimeDimension dim(n);
        WignerGrid input = grid_of(random_pure_state(dim, 1, rng));
        std::vector<TeleportTrace> traces = run_teleport(input, NoiseModel::ideal(dim), OutcomeSelection::exhaustive());
        ASSERT_EQ(traces.size(), n * n);
        for (const TeleportTrace &t : traces) {
            EXPECT_LT(max_abs_diff(t.output_grid, input), 1e-12);
            EXPECT_NEAR(t.fidelity, 1.0, 1e-10);
            EXPECT_FALSE(t.seed.has_value());
            EXPECT_EQ(t.joint_grid.get(), traces[0].joint_grid.get());
        }
    }
}

TEST(teleport, noisy_resource_convolves_input) {
    std::mt19937_64 rng(29);
    for (std::uint32_t n : {3u, 5u}) {
        PrimeDimension dim(n);
        std::vector<Kernel> kernels{Kernel::periodized_gaussian(dim, 0.7), Kernel::uniform(dim),
                                    wigtel_test::random_kernel(dim, rng)};
        for (const Kernel &k : kernels) {
            WignerGrid input = to_wigner(random_density_matrix(dim, 1, rng));
            std::vector<double> expected = wigtel_test::brute_force_convolution(input, k);
            NoiseModel noise{k, Kernel::point_mass(dim)};
            for (const TeleportTrace &t : run_teleport(input, noise, OutcomeSelection::exhaustive())) {
                EXPECT_LT(wigtel_test::max_abs_diff(t.output_grid.values(), expected), 1e-10);
                EXPECT_NEAR(t.outcome.probability, 1.0 / (n * n), TOL);
            }
        }
    }
}

TEST(teleport, noisy_pipeline_matches_oracle) {
    PrimeDimension five(5);
    std::mt19937_64 rng(31);
    Kernel k = wigtel_test::random_kernel(five, rng);
    DensityMatrix resource = wigtel_test::bell_mixture(k);
    DensityMatrix input = DensityMatrix::pure(random_pure_state(five, 1, rng));
    auto traces = run_teleport(to_wigner(input), NoiseModel{k, Kernel::point_mass(five)}, OutcomeSelection::exhaustive());
    for (const TeleportTrace &t : traces) {
        OracleResult oracle = oracle_teleport(input, resource, t.outcome);
        EXPECT_NEAR(t.outcome.probability, oracle.probability, TOL);
        EXPECT_LT(max_abs_diff(t.conditional_grid, to_wigner(oracle.conditional)), 1e-10);
    }
}

TEST(teleport, fuzzy_filter_matches_oracle) {
    PrimeDimension three(3);
    std::mt19937_64 rng(37);
    DensityMatrix input = random_density_matrix(three, 1, rng);
    DensityMatrix resource = random_density_matrix(three, 2, rng);
    Kernel filter = Kernel::periodized_gaussian(three, 0.8);
    auto traces = run_teleport(to_wigner(input), to_wigner(resource), filter, OutcomeSelection::exhaustive());
    ASSERT_EQ(traces.size(), 9u);
    double total = 0;
    for (const TeleportTrace &t : traces) {
        OracleResult oracle = oracle_teleport(input, resource, t.outcome, filter.weights());
        EXPECT_NEAR(t.outcome.probability, oracle.probability, TOL);
        EXPECT_LT(max_abs_diff(t.conditional_grid, to_wigner(oracle.conditional)), 1e-10);
        total += t.outcome.probability;
    }
    EXPECT_NEAR(total, 1.0, TOL);
}

TEST(teleport, uniform_kernel_gives_one_over_n_fidelity) {
    std::mt19937_64 rng(41);
    for (std::uint32_t n : {3u, 5u}) {
        PrimeDimension dim(n);
        WignerGrid input = grid_of(random_pure_state(dim, 1, rng));
        NoiseModel noise{Kernel::uniform(dim), Kernel::point_mass(dim)};
        for (const TeleportTrace &t : run_teleport(input, noise, OutcomeSelection::exhaustive())) {
            EXPECT_NEAR(t.fidelity, 1.0 / n, 1e-10);
        }
    }
}

TEST(teleport, sampled_selection_is_reproducible) {
    PrimeDimension five(5);
    std::mt19937_64 rng(43);
    WignerGrid input = grid_of(random_pure_state(five, 1, rng));
    auto a = run_teleport(input, NoiseModel::ideal(five), OutcomeSelection::sampled(99, 12));
    auto b = run_teleport(input, NoiseModel::ideal(five), OutcomeSelection::sampled(99, 12));
    auto c = run_teleport(input, NoiseModel::ideal(five), OutcomeSelection::sampled(100, 12));
    ASSERT_EQ(a.size(), 12u);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].outcome.x2, b[i].outcome.x2);
        EXPECT_EQ(a[i].outcome.p1, b[i].outcome.p1);
        EXPECT_EQ(a[i].seed, std::optional<std::uint64_t>(99));
        differs |= a[i].outcome.x2 != c[i].outcome.x2 || a[i].outcome.p1 != c[i].outcome.p1;
    }
    EXPECT_TRUE(differs);
    EXPECT_THROW(run_teleport(input, NoiseModel::ideal(five), OutcomeSelection::sampled(1, 0)), ConfigError);
}

TEST(teleport, fidelity_of_orthogonal_and_identical_states) {
    PrimeDimension five(5);
    WignerGrid zero = grid_of(position_eigenstate(0, five));
    WignerGrid one = grid_of(position_eigenstate(1, five));
    EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-12);
    EXPECT_GE(fidelity(zero, one), 0.0);
}
