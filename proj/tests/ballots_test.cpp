// Copyright 2026 The qvote Authors
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

#include "qvote/ballots.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qvote/rule.hpp"

using namespace qvote;

TEST(CanonicalBallot, Endpoints) {
    EXPECT_TRUE(approx_equal(canonical_ballot(0.0), DensityOperator::basis(1, 0)));
    EXPECT_TRUE(approx_equal(canonical_ballot(1.0), DensityOperator::basis(1, 1)));
    EXPECT_NEAR(winning_probability(canonical_ballot(0.6)), 0.6, 1e-12);
}

TEST(CanonicalBallot, GridWinningProbability) {
    for (int i = 0; i <= 100; ++i) {
        const double r = i / 100.0;
        EXPECT_NEAR(winning_probability(canonical_ballot(r)), r, 1e-12) << r;
    }
}

TEST(CanonicalBallot, IsPure) {
    const auto rho = canonical_ballot(0.37);
    EXPECT_NEAR((rho.matrix() * rho.matrix()).trace().real(), 1.0, 1e-12);
}

TEST(CanonicalBallot, DomainErrors) {
    for (double r : {-0.01, 1.01, std::nan("")}) {
        try {
            canonical_ballot(r);
            FAIL() << r;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::domain);
        }
    }
}

TEST(Realize, Classical) {
    const auto a = realize({BallotSpec::classical(1), BallotSpec::classical(0)}, 2);
    EXPECT_TRUE(approx_equal(a.state_of(1), DensityOperator::basis(1, 1)));
    EXPECT_TRUE(approx_equal(a.state_of(2), DensityOperator::basis(1, 0)));
}

TEST(Realize, Probabilistic) {
    const auto a = realize({BallotSpec::probabilistic(0.6), BallotSpec::probabilistic(0.6), BallotSpec::classical(0)}, 3);
    EXPECT_NEAR(winning_probability(a.state_of(1)), 0.6, 1e-12);
    EXPECT_NEAR(winning_probability(a.state_of(2)), 0.6, 1e-12);
    EXPECT_NEAR(winning_probability(a.state_of(3)), 0.0, 1e-12);
    EXPECT_FALSE(a.has_joint());
}

TEST(Realize, BellJointReducesToMaximallyMixed) {
    const auto a = realize({bell_ballot()}, 2);
    ASSERT_EQ(a.groups().size(), 1u);
    EXPECT_EQ(a.groups()[0].state.num_qubits(), 2);
    EXPECT_TRUE(a.is_joint(1));
    EXPECT_TRUE(a.has_joint());
    for (std::size_t v : {1u, 2u}) {
        EXPECT_TRUE(approx_equal(a.reduced_state_of(v), DensityOperator::maximally_mixed(1), 1e-12));
    }
    EXPECT_THROW(a.state_of(1), Error);
}

TEST(BellBallot, Amplitudes) {
    const auto spec = bell_ballot();
    const auto& joint = std::get<JointBallot>(spec.kind);
    const double h = 1.0 / std::sqrt(2.0);
    ASSERT_EQ(joint.amplitudes.size(), 4u);
    EXPECT_NEAR(std::abs(joint.amplitudes[0] - Complex(h)), 0.0, 1e-15);
    EXPECT_EQ(joint.amplitudes[1], Complex(0.0));
    EXPECT_EQ(joint.amplitudes[2], Complex(0.0));
    EXPECT_NEAR(std::abs(joint.amplitudes[3] - Complex(h)), 0.0, 1e-15);
    EXPECT_EQ(joint.slots, (std::vector<std::size_t>{1, 2}));
}

TEST(BellBallot, AndAndOrGiveOneHalf) {
    const auto a = realize({bell_ballot()}, 2);
    EXPECT_NEAR(winning_probability(quantum_and(a.groups()[0].state)), 0.5, 1e-12);
    EXPECT_NEAR(winning_probability(quantum_or(a.groups()[0].state)), 0.5, 1e-12);
}

TEST(Realize, JointSlotsNeedNotBeAdjacent) {
    const auto a = realize({BallotSpec::classical(1), bell_ballot(1, 3)}, 3);
    EXPECT_TRUE(a.is_joint(1));
    EXPECT_TRUE(a.is_joint(3));
    EXPECT_FALSE(a.is_joint(2));
    EXPECT_TRUE(approx_equal(a.state_of(2), DensityOperator::basis(1, 1)));
    EXPECT_EQ(a.qubit_of(3), 1u);
}

TEST(Realize, PinnedVoters) {
    auto pinned = BallotSpec::classical(1);
    pinned.for_voter(3);
    const auto a = realize({BallotSpec::classical(0), BallotSpec::classical(0), pinned}, 3);
    EXPECT_NEAR(winning_probability(a.state_of(3)), 1.0, 1e-12);
    auto first = BallotSpec::classical(1);
    first.for_voter(1);
    const auto b = realize({BallotSpec::classical(0), first}, 2);
    EXPECT_NEAR(winning_probability(b.state_of(1)), 1.0, 1e-12);
    EXPECT_NEAR(winning_probability(b.state_of(2)), 0.0, 1e-12);
}

TEST(Realize, CoverageErrors) {
    const auto expect_config = [](const std::vector<BallotSpec>& specs, std::size_t m) {
        try {
            realize(specs, m);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::config) << e.what();
        }
    };
    expect_config({BallotSpec::classical(1)}, 2);                                 // gap
    expect_config({BallotSpec::classical(1), BallotSpec::classical(1)}, 1);       // too many
    expect_config({bell_ballot(1, 2), bell_ballot(2, 3)}, 3);                     // overlap
    expect_config({bell_ballot(1, 4)}, 2);                                        // out of range
    expect_config({}, 0);
}

TEST(Realize, ValidationErrors) {
    EXPECT_THROW(realize({BallotSpec::classical(2)}, 1), Error);
    try {
        realize({BallotSpec::pure(1.0, 1.0)}, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::normalization);
    }
    EXPECT_THROW(realize({BallotSpec::mixed({{0.5, {1.0, 0.0}}, {0.4, {0.0, 1.0}}})}, 1), Error);
    EXPECT_THROW(realize({BallotSpec::mixed({{1.2, {1.0, 0.0}}, {-0.2, {0.0, 1.0}}})}, 1), Error);
    EXPECT_THROW(realize({BallotSpec::joint({1, 2}, {1.0, 0.0})}, 2), Error);
}

TEST(MixedBallot, WinningProbabilityIsLinear) {
    RandomStream rng(41);
    for (int i = 0; i < 50; ++i) {
        std::vector<MixedComponent> comps;
        double expected = 0.0;
        double remaining = 1.0;
        for (int c = 0; c < 3; ++c) {
            const double w = c == 2 ? remaining : remaining * rng.uniform();
            remaining -= w;
            const auto psi = random_pure(1, rng);
            comps.push_back({w, {psi.amplitudes()(0), psi.amplitudes()(1)}});
            expected += w * std::norm(psi.amplitudes()(1));
        }
        const auto a = realize({BallotSpec::mixed(comps)}, 1);
        EXPECT_NEAR(winning_probability(a.state_of(1)), expected, 1e-9);
        EXPECT_TRUE(is_valid(a.state_of(1)));
    }
}

TEST(MixedBallot, SixtyPercentEncodingsAgreeUnderFormulas) {
    // Pure and mixed encodings differ as operators but not in WP under any rule.
    const auto pure = canonical_ballot(0.6);
    const auto mixed = materialize(mixed_preference(0.6));
    EXPECT_FALSE(approx_equal(pure, mixed, 1e-3));
    RandomStream rng(42);
    for (const char* text : {"AND(v1, v2)", "OR(v1, NOT(v2))", "OR(AND(v1,v2), AND(v2,v3), AND(v1,v3))",
                             "NOT(AND(v3, OR(v1, v2, NOT(v3))))"}) {
        const auto ast = parse_rule(text);
        for (int i = 0; i < 20; ++i) {
            const double r1 = rng.uniform(), r2 = rng.uniform(), r3 = rng.uniform();
            const auto a = realize({BallotSpec::probabilistic(r1), BallotSpec::probabilistic(r2),
                                    BallotSpec::probabilistic(r3)}, 3);
            const auto b = realize({mixed_preference(r1), mixed_preference(r2), mixed_preference(r3)}, 3);
            EXPECT_NEAR(winning_probability(evaluate_density(ast, a)), winning_probability(evaluate_density(ast, b)),
                        1e-9)
                << text;
        }
    }
}
