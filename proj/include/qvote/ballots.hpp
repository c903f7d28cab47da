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

#ifndef QVOTE_BALLOTS_HPP
#define QVOTE_BALLOTS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qvote/density.hpp"
#include "qvote/qlogic.hpp"

namespace qvote {

struct ClassicalBallot {
    int bit = 0;
};

/// Preference r encoded as the canonical pure state sqrt(1-r)|0> + sqrt(r)|1>.
struct ProbabilisticBallot {
    double r = 0.0;
};

struct PureBallot {
    std::array<Complex, 2> amplitudes{};
};

struct MixedComponent {
    double weight = 0.0;
    std::array<Complex, 2> amplitudes{};
};

struct MixedBallot {
    std::vector<MixedComponent> components;
};

/// One pure state shared by several voters. `slots` are 1-based voter
/// indices; slot i is qubit i of `amplitudes`.
struct JointBallot {
    std::vector<std::size_t> slots;
    std::vector<Complex> amplitudes;
};

/// Declarative ballot. Single-voter kinds may pin a voter index; unpinned ones
/// take the lowest voter not claimed elsewhere, in list order.
struct BallotSpec {
    using Kind = std::variant<ClassicalBallot, ProbabilisticBallot, PureBallot, MixedBallot, JointBallot>;

    Kind kind;
    std::optional<std::size_t> voter;

    static BallotSpec classical(int bit) { return {ClassicalBallot{bit}, std::nullopt}; }
    static BallotSpec probabilistic(double r) { return {ProbabilisticBallot{r}, std::nullopt}; }
    static BallotSpec pure(Complex zero, Complex one) { return {PureBallot{{zero, one}}, std::nullopt}; }
    static BallotSpec mixed(std::vector<MixedComponent> components) {
        return {MixedBallot{std::move(components)}, std::nullopt};
    }
    static BallotSpec joint(std::vector<std::size_t> slots, std::vector<Complex> amplitudes) {
        return {JointBallot{std::move(slots), std::move(amplitudes)}, std::nullopt};
    }

    BallotSpec& for_voter(std::size_t v) {
        voter = v;
        return *this;
    }

    bool is_joint() const { return std::holds_alternative<JointBallot>(kind); }
};

/// Theta_r = |theta_r><theta_r|, |theta_r> = sqrt(1-r)|0> + sqrt(r)|1>.
inline DensityOperator canonical_ballot(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorKind::domain, "preference r must lie in [0, 1], got " + std::to_string(r));
    }
    const std::array<Complex, 2> amps{Complex(std::sqrt(1.0 - r), 0.0), Complex(std::sqrt(r), 0.0)};
    return pure_to_density(PureState::from_amplitudes(amps));
}

/// The mixture (1-r)|0><0| + r|1><1|, the other encoding of preference r.
inline BallotSpec mixed_preference(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorKind::domain, "preference r must lie in [0, 1], got " + std::to_string(r));
    }
    return BallotSpec::mixed({{1.0 - r, {Complex(1.0), Complex(0.0)}}, {r, {Complex(0.0), Complex(1.0)}}});
}

/// (|00> + |11>)/sqrt(2) over voters `first` and `second`.
inline BallotSpec bell_ballot(std::size_t first = 1, std::size_t second = 2) {
    const double h = 1.0 / std::sqrt(2.0);
    return BallotSpec::joint({first, second}, {Complex(h), Complex(0.0), Complex(0.0), Complex(h)});
}

namespace detail {

inline DensityOperator materialize(const ClassicalBallot& b) {
    if (b.bit != 0 && b.bit != 1) throw Error(ErrorKind::validation, "classical ballot bit must be 0 or 1");
    return DensityOperator::basis(1, static_cast<std::size_t>(b.bit));
}

inline DensityOperator materialize(const ProbabilisticBallot& b) { return canonical_ballot(b.r); }

inline DensityOperator materialize(const PureBallot& b) {
    return pure_to_density(PureState::from_amplitudes(b.amplitudes));
}

inline DensityOperator materialize(const MixedBallot& b) {
    if (b.components.empty()) throw Error(ErrorKind::validation, "mixed ballot has no components");
    Matrix sum = Matrix::Zero(2, 2);
    double total = 0.0;
    for (const auto& c : b.components) {
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
            throw Error(ErrorKind::validation, "mixed ballot weights must be nonnegative");
        }
        total += c.weight;
        sum += c.weight * pure_to_density(PureState::from_amplitudes(c.amplitudes)).matrix();
    }
    if (std::abs(total - 1.0) > tolerance::structural) {
        throw Error(ErrorKind::validation, "mixed ballot weights sum to " + std::to_string(total));
    }
    return DensityOperator::from_matrix(std::move(sum));
}

inline DensityOperator materialize(const JointBallot& b) {
    const PureState psi = PureState::from_amplitudes(b.amplitudes);
    if (static_cast<std::size_t>(psi.num_qubits()) != b.slots.size()) {
        throw Error(ErrorKind::shape, "joint ballot has " + std::to_string(b.slots.size()) +
                                          " slots but " + std::to_string(b.amplitudes.size()) +
                                          " amplitudes");
    }
    return pure_to_density(psi);
}

}  // namespace detail

inline DensityOperator materialize(const BallotSpec& spec) {
    return std::visit([](const auto& b) { return detail::materialize(b); }, spec.kind);
}

/// A realized operator and the voters (1-based) whose ballots it carries.
struct BallotGroup {
    std::vector<std::size_t> voters;
    DensityOperator state;

    bool is_joint() const { return voters.size() > 1; }
};

class BallotAssignment {
public:
    BallotAssignment(std::size_t voter_count, std::vector<BallotGroup> groups)
        : voter_count_(voter_count), groups_(std::move(groups)), group_of_(voter_count), qubit_of_(voter_count) {
        std::vector<bool> seen(voter_count, false);
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const auto& group = groups_[g];
            if (group.voters.size() != static_cast<std::size_t>(group.state.num_qubits())) {
                throw Error(ErrorKind::shape, "ballot group voter list does not match its qubit count");
            }
            for (std::size_t q = 0; q < group.voters.size(); ++q) {
                const std::size_t v = group.voters[q];
                if (v < 1 || v > voter_count || seen[v - 1]) {
                    throw Error(ErrorKind::config, "voter " + std::to_string(v) + " is out of range or assigned twice");
                }
                seen[v - 1] = true;
                group_of_[v - 1] = g;
                qubit_of_[v - 1] = q;
            }
        }
        for (std::size_t v = 0; v < voter_count; ++v) {
            if (!seen[v]) throw Error(ErrorKind::config, "voter " + std::to_string(v + 1) + " has no ballot");
        }
    }

    std::size_t voter_count() const noexcept { return voter_count_; }
    const std::vector<BallotGroup>& groups() const noexcept { return groups_; }

    const BallotGroup& group_of(std::size_t voter) const { return groups_[group_of_.at(voter - 1)]; }
    std::size_t group_index_of(std::size_t voter) const { return group_of_.at(voter - 1); }
    std::size_t qubit_of(std::size_t voter) const { return qubit_of_.at(voter - 1); }

    bool is_joint(std::size_t voter) const { return group_of(voter).is_joint(); }

    bool has_joint() const {
        for (const auto& g : groups_) {
            if (g.is_joint()) return true;
        }
        return false;
    }

    /// Single-qubit state of an unentangled voter.
    const DensityOperator& state_of(std::size_t voter) const {
        const auto& g = group_of(voter);
        if (g.is_joint()) {
            throw Error(ErrorKind::unsupported_input,
                        "voter " + std::to_string(voter) + " holds part of a joint ballot");
        }
        return g.state;
    }

    /// Reduced single-qubit state of any voter.
    DensityOperator reduced_state_of(std::size_t voter) const {
        const auto& g = group_of(voter);
        if (!g.is_joint()) return g.state;
        std::vector<int> traced;
        const auto keep = static_cast<int>(qubit_of(voter));
        for (int q = 0; q < g.state.num_qubits(); ++q) {
            if (q != keep) traced.push_back(q);
        }
        return partial_trace(g.state, traced);
    }

    /// Fold operands over voters 1..m in voter order (slot = voter - 1).
    std::vector<FoldOperand> voter_order_operands() const {
        std::vector<FoldOperand> ops;
        ops.reserve(groups_.size());
        for (const auto& g : groups_) {
            FoldOperand op{g.state, {}};
            for (std::size_t v : g.voters) op.slots.push_back(v - 1);
            ops.push_back(std::move(op));
        }
        return ops;
    }

private:
    std::size_t voter_count_;
    std::vector<BallotGroup> groups_;
    std::vector<std::size_t> group_of_;
    std::vector<std::size_t> qubit_of_;
};

/// Materializes specs for voters 1..m. Joint specs and pinned single specs
/// claim their voters first; the remaining specs fill the free voters in order.
inline BallotAssignment realize(const std::vector<BallotSpec>& specs, std::size_t voter_count) {
    if (voter_count < 1) throw Error(ErrorKind::config, "an election needs at least one voter");
    std::vector<bool> claimed(voter_count, false);
    const auto claim = [&](std::size_t v) {
        if (v < 1 || v > voter_count) {
            throw Error(ErrorKind::config, "ballot names voter " + std::to_string(v) + " but there are only " +
                                               std::to_string(voter_count) + " voters");
        }
        if (claimed[v - 1]) throw Error(ErrorKind::config, "voter " + std::to_string(v) + " has two ballots");
        claimed[v - 1] = true;
    };
    for (const auto& spec : specs) {
        if (const auto* joint = std::get_if<JointBallot>(&spec.kind)) {
            if (joint->slots.empty()) throw Error(ErrorKind::config, "joint ballot has no slots");
            for (std::size_t v : joint->slots) claim(v);
        } else if (spec.voter) {
            claim(*spec.voter);
        }
    }

    std::vector<BallotGroup> groups;
    groups.reserve(specs.size());
    std::size_t next_free = 0;
    for (const auto& spec : specs) {
        if (const auto* joint = std::get_if<JointBallot>(&spec.kind)) {
            groups.push_back({joint->slots, materialize(spec)});
            continue;
        }
        std::size_t voter = 0;
        if (spec.voter) {
            voter = *spec.voter;
        } else {
            while (next_free < voter_count && claimed[next_free]) ++next_free;
            if (next_free == voter_count) {
                throw Error(ErrorKind::config, "more ballots than voters (" + std::to_string(voter_count) + ")");
            }
            claimed[next_free] = true;
            voter = next_free + 1;
        }
        groups.push_back({{voter}, materialize(spec)});
    }
    for (std::size_t v = 0; v < voter_count; ++v) {
        if (!claimed[v]) throw Error(ErrorKind::config, "voter " + std::to_string(v + 1) + " has no ballot");
    }
    return BallotAssignment(voter_count, std::move(groups));
}

}  // namespace qvote

#endif  // QVOTE_BALLOTS_HPP
