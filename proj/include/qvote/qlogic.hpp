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

// Quantum logical connectives as channels on density operators.
//
//   AND(rho) = Tr_{1,2}( T (rho ⊗ |0><0|) T† )    T = Toffoli, ancilla last
//   NOT(rho) = X rho X
//   OR(rho)  = NOT(AND((X ⊗ X) rho (X ⊗ X)))
//
// The binary forms accept any 2-qubit state, product or entangled. Folds are
// left folds over an ordered list of slots; a multi-qubit operand occupies
// several slots and is tensored into the workspace when its first slot comes up.

#ifndef QVOTE_QLOGIC_HPP
#define QVOTE_QLOGIC_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qvote/density.hpp"

namespace qvote {

enum class Connective { conjunction, disjunction };

/// T|x1,x2,x3> = |x1,x2,x1·x2 ⊕ x3>.
inline Matrix toffoli_gate() {
    Matrix t = Matrix::Zero(8, 8);
    for (unsigned x = 0; x < 8; ++x) {
        const unsigned x1 = (x >> 2) & 1U;
        const unsigned x2 = (x >> 1) & 1U;
        const unsigned x3 = x & 1U;
        const unsigned y = (x1 << 2) | (x2 << 1) | ((x1 & x2) ^ x3);
        t(y, x) = 1.0;
    }
    return t;
}

inline Matrix pauli_x() {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    return x;
}

namespace detail {

inline Matrix x_on(int qubit, int num_qubits) {
    const int target[] = {qubit};
    return expand_gate(pauli_x(), target, num_qubits);
}

/// AND on qubits a and b of a k-qubit state. The result qubit is placed first;
/// the untouched qubits follow in their original order.
inline DensityOperator conjoin_qubits(const DensityOperator& rho, int a, int b) {
    const int k = rho.num_qubits();
    const DensityOperator widened = tensor(rho, DensityOperator::basis(1, 0));
    const int targets[] = {a, b, k};
    const DensityOperator gated = apply_unitary(widened, expand_gate(toffoli_gate(), targets, k + 1));
    const int traced[] = {a, b};
    const DensityOperator reduced = partial_trace(gated, traced);
    const int remaining = reduced.num_qubits();
    if (remaining == 1) return reduced;
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(remaining));
    order.push_back(remaining - 1);
    for (int q = 0; q + 1 < remaining; ++q) order.push_back(q);
    return permute_qubits(reduced, order);
}

inline DensityOperator combine_qubits(const DensityOperator& rho, int a, int b, Connective c) {
    if (a == b || a < 0 || b < 0 || a >= rho.num_qubits() || b >= rho.num_qubits()) {
        throw Error(ErrorKind::shape, "connective operands must be two distinct qubits of the state");
    }
    if (c == Connective::conjunction) return conjoin_qubits(rho, a, b);
    const int k = rho.num_qubits();
    const int targets[] = {a, b};
    Matrix xx = Matrix::Zero(4, 4);
    xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1.0;
    const DensityOperator flipped = apply_unitary(rho, expand_gate(xx, targets, k));
    const DensityOperator conj = conjoin_qubits(flipped, a, b);
    return apply_unitary(conj, x_on(0, conj.num_qubits()));
}

inline void require_qubits(const DensityOperator& rho, int expected, const char* what) {
    if (rho.num_qubits() != expected) {
        throw Error(ErrorKind::arity, std::string(what) + " takes a " + std::to_string(expected) +
                                          "-qubit state, got " + std::to_string(rho.num_qubits()));
    }
}

}  // namespace detail

/// Quantum AND of a 2-qubit state (product or entangled).
inline DensityOperator quantum_and(const DensityOperator& joint) {
    if (joint.num_qubits() != 2) {
        throw Error(ErrorKind::shape, "quantum AND takes a 2-qubit state, got " +
                                          std::to_string(joint.num_qubits()));
    }
    return detail::conjoin_qubits(joint, 0, 1);
}

inline DensityOperator quantum_not(const DensityOperator& rho) {
    detail::require_qubits(rho, 1, "quantum NOT");
    return apply_unitary(rho, pauli_x());
}

/// Quantum OR via De Morgan: X⊗X conjugation, AND, then NOT.
inline DensityOperator quantum_or(const DensityOperator& joint) {
    detail::require_qubits(joint, 2, "quantum OR");
    return detail::combine_qubits(joint, 0, 1, Connective::disjunction);
}

inline DensityOperator quantum_and(const DensityOperator& a, const DensityOperator& b) {
    detail::require_qubits(a, 1, "quantum AND operand");
    detail::require_qubits(b, 1, "quantum AND operand");
    return quantum_and(tensor(a, b));
}

inline DensityOperator quantum_or(const DensityOperator& a, const DensityOperator& b) {
    detail::require_qubits(a, 1, "quantum OR operand");
    detail::require_qubits(b, 1, "quantum OR operand");
    return quantum_or(tensor(a, b));
}

/// One fold input: `state` qubit i occupies fold slot `slots[i]`.
struct FoldOperand {
    DensityOperator state;
    std::vector<std::size_t> slots;
};

struct FoldStats {
    int peak_live_qubits = 0;
};

/// Left fold of a connective over slots 0..N-1, where the operands' slot
/// lists partition 0..N-1. Entangled operands may span non-adjacent slots.
inline DensityOperator fold(std::span<const FoldOperand> operands, Connective connective,
                            FoldStats* stats = nullptr) {
    if (operands.empty()) throw Error(ErrorKind::arity, "fold needs at least one operand");
    std::size_t total = 0;
    for (const auto& op : operands) {
        if (op.slots.size() != static_cast<std::size_t>(op.state.num_qubits())) {
            throw Error(ErrorKind::shape, "operand slot list does not match its qubit count");
        }
        total += op.slots.size();
    }
    std::vector<std::ptrdiff_t> owner(total, -1);
    for (std::size_t i = 0; i < operands.size(); ++i) {
        for (std::size_t s : operands[i].slots) {
            if (s >= total || owner[s] != -1) {
                throw Error(ErrorKind::shape, "operand slots must partition the fold positions");
            }
            owner[s] = static_cast<std::ptrdiff_t>(i);
        }
    }

    constexpr std::ptrdiff_t kAccumulator = -1;
    std::optional<DensityOperator> workspace;
    std::vector<std::ptrdiff_t> labels;  // per workspace qubit: slot or kAccumulator
    int peak = 0;

    const auto find = [&](std::ptrdiff_t label) -> int {
        const auto it = std::find(labels.begin(), labels.end(), label);
        return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
    };

    for (std::size_t slot = 0; slot < total; ++slot) {
        const auto label = static_cast<std::ptrdiff_t>(slot);
        if (find(label) < 0) {
            const FoldOperand& op = operands[static_cast<std::size_t>(owner[slot])];
            workspace = workspace ? tensor(*workspace, op.state) : op.state;
            for (std::size_t s : op.slots) labels.push_back(static_cast<std::ptrdiff_t>(s));
            peak = std::max(peak, workspace->num_qubits());
        }
        const int q = find(label);
        const int acc = find(kAccumulator);
        if (acc < 0) {
            labels[static_cast<std::size_t>(q)] = kAccumulator;
            continue;
        }
        peak = std::max(peak, workspace->num_qubits() + 1);
        workspace = detail::combine_qubits(*workspace, acc, q, connective);
        std::vector<std::ptrdiff_t> next{kAccumulator};
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (static_cast<int>(i) != acc && static_cast<int>(i) != q) next.push_back(labels[i]);
        }
        labels = std::move(next);
    }
    if (stats) stats->peak_live_qubits = peak;
    return *workspace;
}

/// Each operand of k qubits consumes the next k slots in order.
inline std::vector<FoldOperand> contiguous_operands(std::span<const DensityOperator> operands) {
    std::vector<FoldOperand> out;
    out.reserve(operands.size());
    std::size_t next = 0;
    for (const auto& op : operands) {
        FoldOperand f{op, {}};
        for (int q = 0; q < op.num_qubits(); ++q) f.slots.push_back(next++);
        out.push_back(std::move(f));
    }
    return out;
}

/// AND(... AND(AND(rho1 ⊗ rho2) ⊗ rho3) ... ⊗ rhon).
inline DensityOperator and_fold(std::span<const DensityOperator> operands, FoldStats* stats = nullptr) {
    if (operands.empty()) throw Error(ErrorKind::arity, "AND fold needs at least one operand");
    const auto ops = contiguous_operands(operands);
    return fold(ops, Connective::conjunction, stats);
}

inline DensityOperator and_fold(std::span<const FoldOperand> operands, FoldStats* stats = nullptr) {
    return fold(operands, Connective::conjunction, stats);
}

inline DensityOperator or_fold(std::span<const DensityOperator> operands, FoldStats* stats = nullptr) {
    if (operands.empty()) throw Error(ErrorKind::arity, "OR fold needs at least one operand");
    const auto ops = contiguous_operands(operands);
    return fold(ops, Connective::disjunction, stats);
}

inline DensityOperator or_fold(std::span<const FoldOperand> operands, FoldStats* stats = nullptr) {
    return fold(operands, Connective::disjunction, stats);
}

}  // namespace qvote

#endif  // QVOTE_QLOGIC_HPP
