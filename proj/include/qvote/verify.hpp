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

// Named checks of the voting-rule properties: probability lemmas of the
// connectives, the veto and nomination theorems, the worked rule examples,
// the entangled-ballot observations, and end-to-end protocol behaviour.

#ifndef QVOTE_VERIFY_HPP
#define QVOTE_VERIFY_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qvote/ballots.hpp"
#include "qvote/density.hpp"
#include "qvote/protocol.hpp"
#include "qvote/qlogic.hpp"
#include "qvote/rule.hpp"

namespace qvote {

enum class CheckStatus { pass, fail, discrepancy };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::discrepancy: return "DISCREPANCY";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    std::string group;
    CheckStatus status = CheckStatus::fail;
    std::string detail;
};

namespace verify {

inline constexpr std::uint64_t kSeed = 20220817;

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

inline CheckResult make(std::string name, std::string group, bool ok, std::string detail) {
    return {std::move(name), std::move(group), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

/// Single-qubit population: random mixed states plus the basis states.
inline std::vector<DensityOperator> single_qubit_population(std::size_t count, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<DensityOperator> out{DensityOperator::basis(1, 0), DensityOperator::basis(1, 1)};
    while (out.size() < count) {
        if (out.size() % 3 == 0) {
            out.push_back(pure_to_density(random_pure(1, rng)));
        } else {
            out.push_back(random_density(1, rng));
        }
    }
    return out;
}

/// Tr((I ⊗ I ⊗ P1) T (a ⊗ b ⊗ |0><0|) T†) by explicit 8x8 arithmetic, on raw
/// matrices that need not be density operators.
inline Complex toffoli_and_probability(const Matrix& a, const Matrix& b) {
    Matrix ancilla = Matrix::Zero(2, 2);
    ancilla(0, 0) = 1.0;
    Matrix joint = Matrix::Zero(8, 8);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            joint(r, c) = a(r >> 2, c >> 2) * b((r >> 1) & 1, (c >> 1) & 1) * ancilla(r & 1, c & 1);
        }
    }
    Matrix t = Matrix::Zero(8, 8);
    for (int x = 0; x < 8; ++x) {
        const int x1 = x >> 2, x2 = (x >> 1) & 1, x3 = x & 1;
        t((x1 << 2) | (x2 << 1) | ((x1 & x2) ^ x3), x) = 1.0;
    }
    const Matrix out = t * joint * t.adjoint();
    Complex sum(0.0, 0.0);
    for (int i = 0; i < 8; ++i) {
        if (i & 1) sum += out(i, i);
    }
    return sum;
}

inline std::vector<CheckResult> lemmas() {
    std::vector<CheckResult> out;
    const auto pop = single_qubit_population(201, kSeed);
    double worst_and = 0.0, worst_not = 0.0, worst_or = 0.0;
    for (std::size_t i = 0; i + 1 < pop.size(); ++i) {
        const auto& rho = pop[i];
        const auto& sigma = pop[i + 1];
        const double x = winning_probability(rho);
        const double y = winning_probability(sigma);
        worst_and = std::max(worst_and, std::abs(winning_probability(quantum_and(tensor(rho, sigma))) - x * y));
        worst_not = std::max(worst_not, std::abs(winning_probability(quantum_not(rho)) - (1.0 - x)));
        worst_or = std::max(worst_or,
                            std::abs(winning_probability(quantum_or(tensor(rho, sigma))) - (x + y - x * y)));
    }
    out.push_back(make("and-multiplicativity", "lemmas", worst_and <= 1e-9,
                       "max |WP(AND) - WP*WP| = " + fmt(worst_and) + " over 200 pairs"));
    out.push_back(make("not-complement", "lemmas", worst_not <= 1e-9,
                       "max |WP(NOT) - (1 - WP)| = " + fmt(worst_not)));
    out.push_back(make("or-inclusion-exclusion", "lemmas", worst_or <= 1e-9,
                       "max |WP(OR) - (x + y - xy)| = " + fmt(worst_or)));

    bool basis_ok = true;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double wp = winning_probability(
                quantum_and(tensor(DensityOperator::basis(1, static_cast<std::size_t>(a)),
                                   DensityOperator::basis(1, static_cast<std::size_t>(b)))));
            basis_ok = basis_ok && std::abs(wp - a * b) <= 1e-12;
        }
    }
    out.push_back(make("and-basis-cases", "lemmas", basis_ok, "AND on |ab> gives WP = a*b for all four basis pairs"));

    double worst_offdiag = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
        for (int a = 0; a < 2; ++a) {
            Matrix ket_bra = Matrix::Zero(2, 2);
            ket_bra(a, 1 - a) = 1.0;
            worst_offdiag = std::max(worst_offdiag, std::abs(toffoli_and_probability(ket_bra, pop[i].matrix())));
        }
    }
    out.push_back(make("and-off-diagonal-annihilation", "lemmas", worst_offdiag <= 1e-9,
                       "max |contribution of |a><b| ⊗ sigma| = " + fmt(worst_offdiag)));

    double worst_sum = 0.0;
    for (const auto& rho : pop) {
        worst_sum = std::max(worst_sum, std::abs(projector_probability(rho, Projector::p0()) +
                                                 projector_probability(rho, Projector::p1()) - 1.0));
    }
    out.push_back(make("projector-completeness", "lemmas", worst_sum <= 1e-9,
                       "max |Tr(P0 rho) + Tr(P1 rho) - 1| = " + fmt(worst_sum)));
    return out;
}

inline std::vector<CheckResult> theorems() {
    std::vector<CheckResult> out;
    RandomStream rng(kSeed + 1);
    int veto_bad = 0, nomination_bad = 0;
    double worst_assoc = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 2 + rng.next_u64() % 5;
        std::vector<DensityOperator> ballots;
        for (std::size_t i = 0; i < len; ++i) ballots.push_back(random_density(1, rng));
        const bool plant = trial % 2 == 0;
        const std::size_t where = rng.next_u64() % len;

        auto veto = ballots;
        if (plant) veto[where] = DensityOperator::basis(1, 0);
        const bool zero = std::abs(winning_probability(and_fold(veto))) <= 1e-9;
        bool has_zero = false;
        for (const auto& b : veto) has_zero = has_zero || winning_probability(b) <= 1e-9;
        veto_bad += zero != has_zero;

        auto nom = ballots;
        if (plant) nom[where] = DensityOperator::basis(1, 1);
        const bool one = std::abs(winning_probability(or_fold(nom)) - 1.0) <= 1e-9;
        bool has_one = false;
        for (const auto& b : nom) has_one = has_one || winning_probability(b) >= 1.0 - 1e-9;
        nomination_bad += one != has_one;

        // Right fold: rho1 AND (rho2 AND (... AND rhon)).
        DensityOperator right = ballots.back();
        for (std::size_t i = len - 1; i-- > 0;) right = quantum_and(tensor(ballots[i], right));
        worst_assoc = std::max(worst_assoc,
                               std::abs(winning_probability(and_fold(ballots)) - winning_probability(right)));
    }
    out.push_back(make("veto-theorem", "theorems", veto_bad == 0,
                       std::to_string(veto_bad) + " of 100 lists violate WP(AND fold) = 0 <=> some WP = 0"));
    out.push_back(make("nomination-theorem", "theorems", nomination_bad == 0,
                       std::to_string(nomination_bad) + " of 100 lists violate WP(OR fold) = 1 <=> some WP = 1"));
    out.push_back(make("and-fold-associativity", "theorems", worst_assoc <= 1e-9,
                       "max |WP(left fold) - WP(right fold)| = " + fmt(worst_assoc)));
    return out;
}

inline std::vector<CheckResult> examples() {
    std::vector<CheckResult> out;
    const RuleAst majority = parse_rule("OR(AND(v1,v2), AND(v2,v3), AND(v1,v3))");
    const RuleAst role = parse_rule("OR(v1, AND(v2, v3))");

    const auto mixed = realize({mixed_preference(0.6), mixed_preference(0.6), BallotSpec::classical(0)}, 3);
    const auto pure = realize({BallotSpec::probabilistic(0.6), BallotSpec::probabilistic(0.6),
                               BallotSpec::classical(0)}, 3);
    const double d_mixed = winning_probability(evaluate_density(majority, mixed));
    const double d_pure = winning_probability(evaluate_density(majority, pure));
    const std::vector<double> probs{0.6, 0.6, 0.0};
    const double alg = evaluate_algebraic(majority, probs);
    out.push_back(make("majority-example", "examples",
                       std::abs(d_mixed - 0.36) <= 1e-12 && std::abs(d_pure - 0.36) <= 1e-12 &&
                           std::abs(alg - 0.36) <= 1e-12,
                       "density (mixed) " + fmt(d_mixed) + ", density (canonical) " + fmt(d_pure) +
                           ", algebraic " + fmt(alg) + "; expected 0.36"));

    bool role_ok = true;
    for (int p1 = 0; p1 < 2; ++p1) {
        for (int p2 = 0; p2 < 2; ++p2) {
            for (int p3 = 0; p3 < 2; ++p3) {
                const auto b = realize({BallotSpec::classical(p1), BallotSpec::classical(p2),
                                        BallotSpec::classical(p3)}, 3);
                const double wp = winning_probability(evaluate_density(role, b));
                const double want = (p1 == 1 || (p2 == 1 && p3 == 1)) ? 1.0 : 0.0;
                role_ok = role_ok && std::abs(wp - want) <= 1e-12;
            }
        }
    }
    out.push_back(make("role-weighted-example", "examples", role_ok,
                       "OR(v1, AND(v2, v3)) agrees iff v1 agrees or both v2 and v3 agree"));

    bool majority_classical = true;
    for (int bits = 0; bits < 8; ++bits) {
        const int a = bits >> 2, b = (bits >> 1) & 1, c = bits & 1;
        const auto ballots = realize({BallotSpec::classical(a), BallotSpec::classical(b), BallotSpec::classical(c)}, 3);
        const double wp = winning_probability(evaluate_density(majority, ballots));
        majority_classical = majority_classical && std::abs(wp - ((a + b + c) >= 2 ? 1.0 : 0.0)) <= 1e-12;
    }
    out.push_back(make("majority-classical-inputs", "examples", majority_classical,
                       "majority formula on classical ballots agrees iff at least two agree"));

    double worst_grid = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double r = i / 100.0;
        worst_grid = std::max(worst_grid, std::abs(winning_probability(canonical_ballot(r)) - r));
    }
    out.push_back(make("canonical-embedding", "examples", worst_grid <= 1e-12,
                       "max |WP(Theta_r) - r| over r = 0, 0.01, ..., 1: " + fmt(worst_grid)));
    return out;
}

inline std::vector<CheckResult> observations() {
    std::vector<CheckResult> out;
    const auto bell = realize({bell_ballot()}, 2);
    const DensityOperator& joint = bell.groups().front().state;
    const double wp_and = winning_probability(quantum_and(joint));
    const double wp_or = winning_probability(quantum_or(joint));
    out.push_back(make("entangled-ballot-probability", "observations",
                       std::abs(wp_and - 0.5) <= 1e-12 && std::abs(wp_or - 0.5) <= 1e-12,
                       "Bell ballot: WP(AND) = " + fmt(wp_and) + ", WP(OR) = " + fmt(wp_or) + "; expected 0.5"));

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        for (int j = 0; j <= 1000; ++j) {
            const double y = j / 1000.0;
            best = std::min(best, std::abs(x * y - 0.5) + std::abs(x + y - x * y - 0.5));
        }
    }
    const double discriminant = 1.0 - 4.0 * 0.5;  // x^2 - x + 1/2
    out.push_back(make("no-probabilistic-equivalent", "observations", best > 0.01 && discriminant == -1.0,
                       "min residual over the 1e-3 grid = " + fmt(best) + ", discriminant = " + fmt(discriminant)));

    // Product pair (1+i)/2|0> + (1-i)/2|1> and its conjugate. Both routes
    // follow the multiplicativity lemma: AND 1/4, OR 3/4, not the 1/2 of the
    // Bell ballot.
    const Complex a(0.5, 0.5), b(0.5, -0.5);
    const auto pair = realize({BallotSpec::pure(a, b), BallotSpec::pure(b, a)}, 2);
    const auto& r1 = pair.state_of(1);
    const auto& r2 = pair.state_of(2);
    const double ch_and = winning_probability(quantum_and(tensor(r1, r2)));
    const double ch_or = winning_probability(quantum_or(tensor(r1, r2)));
    const Matrix x = pauli_x();
    const double or_and = toffoli_and_probability(x * r1.matrix() * x, x * r2.matrix() * x).real();
    const double br_and = toffoli_and_probability(r1.matrix(), r2.matrix()).real();
    const double br_or = 1.0 - or_and;
    const bool routes_agree = std::abs(ch_and - br_and) <= 1e-12 && std::abs(ch_or - br_or) <= 1e-12;
    const bool lemma_values = std::abs(ch_and - 0.25) <= 1e-12 && std::abs(ch_or - 0.75) <= 1e-12;
    CheckResult pair_check{"product-pair-claim", "observations", CheckStatus::fail,
                           "channel AND " + fmt(ch_and) + ", OR " + fmt(ch_or) + "; brute-force AND " + fmt(br_and) +
                               ", OR " + fmt(br_or)};
    if (routes_agree && lemma_values) {
        pair_check.status = CheckStatus::discrepancy;
        pair_check.detail += "; the text claims both equal the Bell ballot's 0.5";
    }
    out.push_back(pair_check);
    return out;
}

inline std::vector<CheckResult> protocol() {
    std::vector<CheckResult> out;
    ElectionConfig mc;
    mc.rule = ElectionRule::veto();
    mc.voters = 3;
    mc.machines = 100;
    mc.ballots = {BallotSpec::probabilistic(0.6), BallotSpec::probabilistic(0.6), BallotSpec::probabilistic(0.5)};
    mc.seed = kSeed;
    const WpEstimate est = estimate_wp(mc, 100);
    const double bound = 4.0 * std::sqrt(0.18 * 0.82 / static_cast<double>(est.samples));
    out.push_back(make("monte-carlo-soundness", "protocol",
                       std::abs(est.analytic_wp - 0.18) <= 1e-12 && std::abs(est.empirical_mean - 0.18) <= bound,
                       "empirical " + fmt(est.empirical_mean) + " over " + std::to_string(est.samples) +
                           " samples, analytic " + fmt(est.analytic_wp) + ", bound ±" + fmt(bound)));

    int veto_ok = 0, nom_ok = 0;
    bool views_agree = true;
    RandomStream rng(kSeed + 2);
    for (int run = 0; run < 100; ++run) {
        ElectionConfig c;
        c.voters = 2 + rng.next_u64() % 4;
        c.machines = 1 + rng.next_u64() % 7;
        c.seed = rng.next_u64();
        const std::size_t planted = rng.next_u64() % c.voters;
        for (std::size_t v = 0; v < c.voters; ++v) c.ballots.push_back(BallotSpec::probabilistic(rng.uniform()));

        c.rule = ElectionRule::veto();
        c.ballots[planted] = BallotSpec::classical(0);
        const auto veto = run_election(c);
        veto_ok += veto.decision == Decision::disagree && veto.ones_fraction == 0.0;

        c.rule = ElectionRule::nomination();
        c.ballots[planted] = BallotSpec::classical(1);
        const auto nom = run_election(c);
        nom_ok += nom.decision == Decision::agree && nom.ones_fraction == 1.0;

        for (const auto* o : {&veto, &nom}) {
            for (const auto d : o->machine_decisions) views_agree = views_agree && d == o->decision;
        }
    }
    out.push_back(make("veto-end-to-end", "protocol", veto_ok == 100,
                       std::to_string(veto_ok) + "/100 runs with a classical 0 ballot decided Disagree"));
    out.push_back(make("nomination-end-to-end", "protocol", nom_ok == 100,
                       std::to_string(nom_ok) + "/100 runs with a classical 1 ballot decided Agree"));
    out.push_back(make("record-view-agreement", "protocol", views_agree,
                       "every machine reached the same decision in every run"));
    return out;
}

inline const std::vector<std::string>& groups() {
    static const std::vector<std::string> names{"lemmas", "theorems", "examples", "observations", "protocol"};
    return names;
}

}  // namespace verify

/// Runs every check group, or only `filter` when non-empty.
inline std::vector<CheckResult> run_verification(const std::string& filter = {}) {
    using Group = std::vector<CheckResult> (*)();
    const std::vector<std::pair<std::string, Group>> table{{"lemmas", verify::lemmas},
                                                           {"theorems", verify::theorems},
                                                           {"examples", verify::examples},
                                                           {"observations", verify::observations},
                                                           {"protocol", verify::protocol}};
    std::vector<CheckResult> out;
    bool matched = filter.empty();
    for (const auto& [name, run] : table) {
        if (!filter.empty() && filter != name) continue;
        matched = true;
        auto part = run();
        out.insert(out.end(), part.begin(), part.end());
    }
    if (!matched) throw Error(ErrorKind::config, "unknown check group \"" + filter + "\"");
    return out;
}

}  // namespace qvote

#endif  // QVOTE_VERIFY_HPP
