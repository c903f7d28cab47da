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

#include "qvote/qlogic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"

using namespace qvote;

namespace {

DensityOperator theta(double r) {
    const Complex amps[] = {std::sqrt(1.0 - r), std::sqrt(r)};
    return pure_to_density(PureState::from_amplitudes(amps));
}

DensityOperator bell() {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex amps[] = {h, 0.0, 0.0, h};
    return pure_to_density(PureState::from_amplitudes(amps));
}

const DensityOperator zero = DensityOperator::basis(1, 0);
const DensityOperator one = DensityOperator::basis(1, 1);

std::vector<DensityOperator> population(std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<DensityOperator> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(i % 2 ? random_density(1, rng) : pure_to_density(random_pure(1, rng)));
    }
    return out;
}

}  // namespace

TEST(Toffoli, MapsEveryBasisState) {
    const Matrix t = toffoli_gate();
    EXPECT_TRUE(is_unitary(t));
    for (unsigned x = 0; x < 8; ++x) {
        const unsigned x1 = x >> 2, x2 = (x >> 1) & 1, x3 = x & 1;
        const unsigned y = (x1 << 2) | (x2 << 1) | ((x1 * x2) ^ x3);
        for (unsigned r = 0; r < 8; ++r) EXPECT_EQ(t(r, x), Complex(r == y ? 1.0 : 0.0, 0.0)) << x;
    }
    EXPECT_LE((t - oracle::toffoli()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(QuantumAnd, BasisCases) {
    EXPECT_NEAR(winning_probability(quantum_and(tensor(one, one))), 1.0, 1e-12);
    EXPECT_NEAR(winning_probability(quantum_and(tensor(zero, one))), 0.0, 1e-12);
    EXPECT_NEAR(winning_probability(quantum_and(tensor(one, zero))), 0.0, 1e-12);
    EXPECT_NEAR(winning_probability(quantum_and(tensor(zero, zero))), 0.0, 1e-12);
    EXPECT_TRUE(approx_equal(quantum_and(tensor(one, one)), one));
}

TEST(QuantumAnd, BellPairGivesOneHalf) {
    EXPECT_NEAR(winning_probability(quantum_and(bell())), 0.5, 1e-12);
}

TEST(QuantumAnd, MatchesHandChannelOnEntangledInputs) {
    RandomStream rng(21);
    for (int i = 0; i < 30; ++i) {
        const auto joint = random_density(2, rng);
        EXPECT_LE((quantum_and(joint).matrix() - oracle::and_channel(joint.matrix())).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((quantum_or(joint).matrix() - oracle::or_channel(joint.matrix())).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(QuantumAnd, WrongArity) {
    try {
        quantum_and(DensityOperator::maximally_mixed(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::shape);
    }
    EXPECT_THROW(quantum_and(one), Error);
}

TEST(QuantumAnd, Multiplicativity) {
    const auto pop = population(201, 22);
    for (std::size_t i = 0; i + 1 < pop.size(); ++i) {
        const double x = winning_probability(pop[i]);
        const double y = winning_probability(pop[i + 1]);
        EXPECT_NEAR(winning_probability(quantum_and(tensor(pop[i], pop[i + 1]))), x * y, 1e-9);
    }
}

TEST(QuantumAnd, OffDiagonalTermsContributeNothing) {
    // Linear extension of the channel to |a><b| ⊗ sigma, a != b.
    RandomStream rng(23);
    for (int i = 0; i < 20; ++i) {
        const Matrix sigma = random_density(1, rng).matrix();
        for (int a = 0; a < 2; ++a) {
            Matrix ket_bra = Matrix::Zero(2, 2);
            ket_bra(a, 1 - a) = 1.0;
            const Matrix out = oracle::and_channel(oracle::kron(ket_bra, sigma));
            EXPECT_LE(std::abs(out(1, 1)), 1e-9);
        }
    }
}

TEST(QuantumNot, Examples) {
    EXPECT_TRUE(approx_equal(quantum_not(zero), one));
    EXPECT_NEAR(winning_probability(quantum_not(theta(0.6))), 0.4, 1e-12);
    RandomStream rng(24);
    for (int i = 0; i < 20; ++i) {
        const auto rho = random_density(1, rng);
        EXPECT_TRUE(approx_equal(quantum_not(quantum_not(rho)), rho, 1e-12));
    }
}

TEST(QuantumNot, Complement) {
    for (const auto& rho : population(200, 25)) {
        EXPECT_NEAR(winning_probability(quantum_not(rho)), 1.0 - winning_probability(rho), 1e-9);
    }
}

TEST(QuantumNot, Arity) {
    try {
        quantum_not(DensityOperator::maximally_mixed(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::arity);
    }
}

TEST(QuantumOr, Examples) {
    EXPECT_TRUE(approx_equal(quantum_or(tensor(zero, zero)), zero));
    for (const auto& sigma : population(20, 26)) {
        EXPECT_NEAR(winning_probability(quantum_or(tensor(one, sigma))), 1.0, 1e-12);
    }
    EXPECT_NEAR(winning_probability(quantum_or(bell())), 0.5, 1e-12);
    EXPECT_THROW(quantum_or(one), Error);
}

TEST(QuantumOr, InclusionExclusion) {
    const auto pop = population(201, 27);
    for (std::size_t i = 0; i + 1 < pop.size(); ++i) {
        const double x = winning_probability(pop[i]);
        const double y = winning_probability(pop[i + 1]);
        EXPECT_NEAR(winning_probability(quantum_or(pop[i], pop[i + 1])), x + y - x * y, 1e-9);
    }
}

TEST(QuantumOr, IsDeMorganDualOnProducts) {
    for (const auto& rho : population(10, 28)) {
        const auto sigma = theta(0.35);
        const auto dual = quantum_not(quantum_and(tensor(quantum_not(rho), quantum_not(sigma))));
        EXPECT_TRUE(approx_equal(quantum_or(tensor(rho, sigma)), dual, 1e-12));
    }
}

TEST(AndFold, SingleOperandIsIdentity) {
    const auto rho = theta(0.3);
    const std::vector<DensityOperator> ops{rho};
    EXPECT_TRUE(approx_equal(and_fold(ops), rho));
    EXPECT_TRUE(approx_equal(or_fold(ops), rho));
}

TEST(AndFold, Examples) {
    const std::vector<DensityOperator> vetoed{theta(0.6), theta(0.6), zero};
    EXPECT_NEAR(winning_probability(and_fold(vetoed)), 0.0, 1e-12);
    const std::vector<DensityOperator> pair{theta(0.6), theta(0.6)};
    EXPECT_NEAR(winning_probability(and_fold(pair)), 0.36, 1e-12);
}

TEST(AndFold, EmptyIsArityError) {
    const std::vector<DensityOperator> none;
    try {
        and_fold(none);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::arity);
    }
    EXPECT_THROW(or_fold(none), Error);
}

TEST(AndFold, EqualsExplicitLeftNesting) {
    const auto pop = population(4, 29);
    const auto nested = quantum_and(tensor(quantum_and(tensor(quantum_and(tensor(pop[0], pop[1])), pop[2])), pop[3]));
    EXPECT_TRUE(approx_equal(and_fold(pop), nested, 1e-12));
}

TEST(AndFold, LeftAndRightFoldsAgree) {
    RandomStream rng(30);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DensityOperator> ops;
        const int len = 2 + trial % 5;
        for (int i = 0; i < len; ++i) ops.push_back(random_density(1, rng));
        DensityOperator right = ops.back();
        for (int i = len - 2; i >= 0; --i) right = quantum_and(tensor(ops[static_cast<std::size_t>(i)], right));
        EXPECT_NEAR(winning_probability(and_fold(ops)), winning_probability(right), 1e-9);
        // The channel output is diagonal, so the operators agree too.
        EXPECT_TRUE(approx_equal(and_fold(ops), right, 1e-9));
    }
}

TEST(OrFold, Examples) {
    const std::vector<DensityOperator> halves{theta(0.5), theta(0.5)};
    EXPECT_NEAR(winning_probability(or_fold(halves)), 0.75, 1e-12);
    const std::vector<DensityOperator> nominated{zero, zero, one};
    EXPECT_NEAR(winning_probability(or_fold(nominated)), 1.0, 1e-12);
}

TEST(Folds, VetoAndNominationTheorems) {
    RandomStream rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 2 + rng.next_u64() % 5;
        std::vector<DensityOperator> ops;
        for (std::size_t i = 0; i < len; ++i) ops.push_back(random_density(1, rng));
        const bool plant = trial % 2 == 1;
        const std::size_t at = rng.next_u64() % len;
        auto veto = ops;
        auto nom = ops;
        if (plant) {
            veto[at] = zero;
            nom[at] = one;
        }
        EXPECT_EQ(winning_probability(and_fold(veto)) <= 1e-9, plant);
        EXPECT_EQ(winning_probability(or_fold(nom)) >= 1.0 - 1e-9, plant);
    }
}

TEST(Folds, JointOperandConsumesContiguousSlots) {
    // [theta, bell] = AND(AND(theta ⊗ q1) ⊗ q2) with q1, q2 entangled.
    const auto t = theta(0.8);
    const std::vector<DensityOperator> ops{t, bell()};
    FoldStats stats;
    const auto out = and_fold(ops, &stats);
    const auto manual = [&] {
        const auto joint = tensor(t, bell());
        const int targets[] = {0, 1, 3};
        const auto widened = tensor(joint, DensityOperator::basis(1, 0));
        const auto gated = apply_unitary(widened, expand_gate(toffoli_gate(), targets, 4));
        const auto first = partial_trace(gated, {0, 1});  // qubits: bell-2, acc
        return quantum_and(permute_qubits(first, std::vector<int>{1, 0}));
    }();
    EXPECT_TRUE(approx_equal(out, manual, 1e-12));
    // acc(1) + bell(2) + ancilla at most.
    EXPECT_LE(stats.peak_live_qubits, 4);
}

TEST(Folds, NonAdjacentJointSlots) {
    // Voters 1 and 3 share a Bell pair, voter 2 is classical 1: AND over 1,2,3.
    FoldOperand pair{bell(), {0, 2}};
    FoldOperand middle{one, {1}};
    const std::vector<FoldOperand> ops{pair, middle};
    EXPECT_NEAR(winning_probability(and_fold(ops)), 0.5, 1e-12);
    const std::vector<FoldOperand> ops_zero{pair, FoldOperand{zero, {1}}};
    EXPECT_NEAR(winning_probability(and_fold(ops_zero)), 0.0, 1e-12);
    EXPECT_NEAR(winning_probability(or_fold(ops_zero)), 0.5, 1e-12);
}

TEST(Folds, WorkspaceStaysSmallForLongProductFolds) {
    const std::vector<DensityOperator> ops(12, theta(0.9));
    FoldStats stats;
    const auto out = and_fold(ops, &stats);
    EXPECT_NEAR(winning_probability(out), std::pow(0.9, 12), 1e-12);
    EXPECT_LE(stats.peak_live_qubits, 3);
}

TEST(Folds, RejectsBadSlotMaps) {
    const std::vector<FoldOperand> overlap{FoldOperand{one, {0}}, FoldOperand{zero, {0}}};
    EXPECT_THROW(and_fold(overlap), Error);
    const std::vector<FoldOperand> wrong_size{FoldOperand{bell(), {0}}};
    EXPECT_THROW(and_fold(wrong_size), Error);
}
