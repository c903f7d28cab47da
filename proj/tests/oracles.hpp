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

// Test-only oracles. Each takes a separate route from the library code it
// checks: explicit index loops instead of the library's tensor, gate expansion
// and partial trace, and exact enumeration for rule probabilities.

#ifndef QVOTE_TESTS_ORACLES_HPP
#define QVOTE_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qvote/density.hpp"
#include "qvote/rule.hpp"

namespace oracle {

using qvote::Complex;
using qvote::Matrix;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return out;
}

/// Sums the diagonal blocks: traces out the leading `lead` dimensions.
inline Matrix trace_leading(const Matrix& m, Eigen::Index lead) {
    const Eigen::Index rest = m.rows() / lead;
    Matrix out = Matrix::Zero(rest, rest);
    for (Eigen::Index t = 0; t < lead; ++t) out += m.block(t * rest, t * rest, rest, rest);
    return out;
}

/// Traces out the trailing `tail` dimensions.
inline Matrix trace_trailing(const Matrix& m, Eigen::Index tail) {
    const Eigen::Index rest = m.rows() / tail;
    Matrix out = Matrix::Zero(rest, rest);
    for (Eigen::Index i = 0; i < rest; ++i) {
        for (Eigen::Index j = 0; j < rest; ++j) {
            for (Eigen::Index t = 0; t < tail; ++t) out(i, j) += m(i * tail + t, j * tail + t);
        }
    }
    return out;
}

inline Matrix toffoli() {
    Matrix t = Matrix::Zero(8, 8);
    const int images[8] = {0, 1, 2, 3, 4, 5, 7, 6};
    for (int x = 0; x < 8; ++x) t(images[x], x) = 1.0;
    return t;
}

inline Matrix pauli_x() {
    Matrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    return x;
}

/// AND channel by hand: ancilla, Toffoli, sum out the two leading qubits.
inline Matrix and_channel(const Matrix& joint) {
    Matrix ancilla = Matrix::Zero(2, 2);
    ancilla(0, 0) = 1.0;
    const Matrix t = toffoli();
    return trace_leading(t * kron(joint, ancilla) * t.adjoint(), 4);
}

inline Matrix or_channel(const Matrix& joint) {
    const Matrix xx = kron(pauli_x(), pauli_x());
    const Matrix x = pauli_x();
    return x * and_channel(xx * joint * xx) * x;
}

inline double wp(const Matrix& rho) { return rho(1, 1).real(); }

/// Exact probability that a rule evaluates to 1 when every atom occurrence
/// is an independent Bernoulli(probs[voter - 1]) draw. Enumerates all
/// occurrence assignments.
inline double enumerate_rule(const qvote::RuleAst& ast, const std::vector<double>& probs) {
    std::vector<std::size_t> voters;
    std::function<void(const qvote::RuleAst&)> collect = [&](const qvote::RuleAst& n) {
        if (n.op == qvote::RuleAst::Op::atom) voters.push_back(n.voter);
        for (const auto& c : n.children) collect(c);
    };
    collect(ast);

    double total = 0.0;
    const std::size_t count = voters.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
        double weight = 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double p = probs[voters[i] - 1];
            weight *= ((mask >> i) & 1U) ? p : 1.0 - p;
        }
        if (weight == 0.0) continue;
        std::size_t next = 0;
        std::function<bool(const qvote::RuleAst&)> eval = [&](const qvote::RuleAst& n) -> bool {
            switch (n.op) {
                case qvote::RuleAst::Op::atom: return ((mask >> next++) & 1U) != 0;
                case qvote::RuleAst::Op::negation: return !eval(n.children[0]);
                case qvote::RuleAst::Op::conjunction: {
                    bool all = true;
                    for (const auto& c : n.children) all = eval(c) && all;
                    return all;
                }
                case qvote::RuleAst::Op::disjunction: {
                    bool any = false;
                    for (const auto& c : n.children) any = eval(c) || any;
                    return any;
                }
            }
            return false;
        };
        if (eval(ast)) total += weight;
    }
    return total;
}

}  // namespace oracle

#endif  // QVOTE_TESTS_ORACLES_HPP
