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

// Dense density-operator algebra over a handful of qubits.
//
// Basis ordering: |x1 x2 ... xk> with x1 the most significant bit of the row
// index. Qubit arguments are 0-based; user-facing messages print them 1-based.

#ifndef QVOTE_DENSITY_HPP
#define QVOTE_DENSITY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qvote/errors.hpp"
#include "qvote/random.hpp"

namespace qvote {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tolerance {
inline constexpr double structural = 1e-9;
inline constexpr double psd = 1e-8;
inline constexpr double corruption = 1e-6;
}  // namespace tolerance

inline constexpr int kDefaultQubitCap = 12;

namespace detail {

inline int qubit_cap_from_env() {
    if (const char* env = std::getenv("QVOTE_QUBIT_CAP")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1 && value <= 30) {
            return static_cast<int>(value);
        }
    }
    return kDefaultQubitCap;
}

inline std::atomic<int>& qubit_cap_storage() {
    static std::atomic<int> cap{qubit_cap_from_env()};
    return cap;
}

inline std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

inline int qubits_of_dimension(Eigen::Index dim) {
    if (dim <= 1) return -1;
    int k = 0;
    Eigen::Index d = dim;
    while ((d & 1) == 0) {
        d >>= 1;
        ++k;
    }
    return d == 1 ? k : -1;
}

inline bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
        }
    }
    return true;
}

inline double hermitian_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline void check_cap(int num_qubits) {
    const int cap = qubit_cap_storage().load();
    if (num_qubits > cap) {
        throw Error(ErrorKind::capacity, std::to_string(num_qubits) +
                                             " qubits exceeds the configured cap of " +
                                             std::to_string(cap));
    }
}

}  // namespace detail

/// Current qubit cap. Defaults to 12, overridable with QVOTE_QUBIT_CAP.
inline int qubit_cap() { return detail::qubit_cap_storage().load(); }

inline void set_qubit_cap(int cap) {
    if (cap < 1 || cap > 30) throw Error(ErrorKind::domain, "qubit cap must be in [1, 30]");
    detail::qubit_cap_storage().store(cap);
}

/// Bit of `qubit` (0 = most significant) within basis index `index`.
inline unsigned qubit_bit(std::size_t index, int qubit, int num_qubits) {
    return static_cast<unsigned>((index >> (num_qubits - 1 - qubit)) & 1U);
}

class PureState {
public:
    static PureState from_amplitudes(std::span<const Complex> amplitudes) {
        const int k = detail::qubits_of_dimension(static_cast<Eigen::Index>(amplitudes.size()));
        if (k < 1) {
            throw Error(ErrorKind::shape, "pure state needs 2^k amplitudes with k >= 1, got " +
                                              std::to_string(amplitudes.size()));
        }
        detail::check_cap(k);
        Vector v(static_cast<Eigen::Index>(amplitudes.size()));
        for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes[i];
        return PureState(k, std::move(v));
    }

    static PureState from_vector(Vector v) {
        const int k = detail::qubits_of_dimension(v.size());
        if (k < 1) throw Error(ErrorKind::shape, "pure state dimension must be 2^k with k >= 1");
        detail::check_cap(k);
        return PureState(k, std::move(v));
    }

    static PureState basis(int num_qubits, std::size_t index) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(detail::dim_of(num_qubits)));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(num_qubits, std::move(v));
    }

    int num_qubits() const noexcept { return num_qubits_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }

private:
    PureState(int k, Vector v) : num_qubits_(k), amplitudes_(std::move(v)) {
        for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
            if (!std::isfinite(amplitudes_(i).real()) || !std::isfinite(amplitudes_(i).imag())) {
                throw Error(ErrorKind::validation, "amplitudes must be finite");
            }
        }
        const double norm2 = amplitudes_.squaredNorm();
        if (std::abs(norm2 - 1.0) > tolerance::structural) {
            throw Error(ErrorKind::normalization,
                        "squared norm " + std::to_string(norm2) + " differs from 1");
        }
    }

    int num_qubits_;
    Vector amplitudes_;
};

/// Trace-one Hermitian operator on 2^k dimensions. Immutable once built.
class DensityOperator {
public:
    /// Validates Hermiticity and unit trace at 1e-9. Positivity is checked
    /// separately by `verify_valid` because it needs an eigendecomposition.
    static DensityOperator from_matrix(Matrix m) {
        const int k = check_shape(m);
        if (!detail::all_finite(m)) throw Error(ErrorKind::validation, "entries must be finite");
        if (detail::hermitian_defect(m) > tolerance::structural) {
            throw Error(ErrorKind::validation, "matrix is not Hermitian");
        }
        const Complex tr = m.trace();
        if (std::abs(tr - Complex(1.0, 0.0)) > tolerance::structural) {
            throw Error(ErrorKind::validation, "trace is not 1");
        }
        return DensityOperator(k, std::move(m));
    }

    /// Wraps the result of a trace-preserving map: re-Hermitizes and aborts
    /// on drift past the corruption threshold.
    static DensityOperator from_channel_output(Matrix m) {
        const int k = check_shape(m);
        if (!detail::all_finite(m)) {
            throw Error(ErrorKind::numeric_corruption, "non-finite entries in channel output");
        }
        if (detail::hermitian_defect(m) > tolerance::corruption ||
            std::abs(m.trace() - Complex(1.0, 0.0)) > tolerance::corruption) {
            throw Error(ErrorKind::numeric_corruption, "channel output drifted from a density operator");
        }
        Matrix h = (m + m.adjoint()) * 0.5;
        return DensityOperator(k, std::move(h));
    }

    static DensityOperator basis(int num_qubits, std::size_t index) {
        detail::check_cap(num_qubits);
        const auto d = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
        Matrix m = Matrix::Zero(d, d);
        m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
        return DensityOperator(num_qubits, std::move(m));
    }

    static DensityOperator maximally_mixed(int num_qubits) {
        detail::check_cap(num_qubits);
        const auto d = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
        Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
        return DensityOperator(num_qubits, std::move(m));
    }

    int num_qubits() const noexcept { return num_qubits_; }
    Eigen::Index dimension() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    friend bool approx_equal(const DensityOperator& a, const DensityOperator& b,
                             double tol = tolerance::structural) {
        return a.num_qubits_ == b.num_qubits_ && (a.entries_ - b.entries_).cwiseAbs().maxCoeff() <= tol;
    }

private:
    DensityOperator(int k, Matrix m) : num_qubits_(k), entries_(std::move(m)) {}

    static int check_shape(const Matrix& m) {
        if (m.rows() != m.cols()) throw Error(ErrorKind::shape, "density matrix must be square");
        const int k = detail::qubits_of_dimension(m.rows());
        if (k < 1) throw Error(ErrorKind::shape, "density matrix dimension must be 2^k with k >= 1");
        detail::check_cap(k);
        return k;
    }

    int num_qubits_;
    Matrix entries_;
};

class Projector {
public:
    static Projector from_matrix(Matrix m) {
        if (m.rows() != m.cols()) throw Error(ErrorKind::shape, "projector must be square");
        const int k = detail::qubits_of_dimension(m.rows());
        if (k < 1) throw Error(ErrorKind::shape, "projector dimension must be 2^k with k >= 1");
        if (detail::hermitian_defect(m) > tolerance::structural) {
            throw Error(ErrorKind::validation, "projector is not Hermitian");
        }
        if ((m * m - m).cwiseAbs().maxCoeff() > tolerance::structural) {
            throw Error(ErrorKind::validation, "projector is not idempotent");
        }
        return Projector(k, std::move(m));
    }

    /// |index><index| on `num_qubits` qubits.
    static Projector basis(int num_qubits, std::size_t index) {
        const auto d = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
        Matrix m = Matrix::Zero(d, d);
        m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
        return Projector(num_qubits, std::move(m));
    }

    /// P0 = |0><0| on one qubit.
    static Projector p0() { return basis(1, 0); }
    /// P1 = |1><1| on one qubit: the "agree" outcome.
    static Projector p1() { return basis(1, 1); }

    int num_qubits() const noexcept { return num_qubits_; }
    const Matrix& matrix() const noexcept { return entries_; }

private:
    Projector(int k, Matrix m) : num_qubits_(k), entries_(std::move(m)) {}

    int num_qubits_;
    Matrix entries_;
};

inline DensityOperator pure_to_density(const PureState& psi) {
    Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityOperator::from_channel_output(std::move(m));
}

/// Kronecker product a ⊗ b; a's qubits come first.
inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    detail::check_cap(a.num_qubits() + b.num_qubits());
    const Matrix& ma = a.matrix();
    const Matrix& mb = b.matrix();
    const Eigen::Index db = mb.rows();
    Matrix out(ma.rows() * db, ma.cols() * db);
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * db, j * db, db, db) = ma(i, j) * mb;
        }
    }
    return DensityOperator::from_channel_output(std::move(out));
}

inline bool is_unitary(const Matrix& u, double tol = tolerance::structural) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// U rho U†, re-Hermitized.
inline DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u) {
    if (u.rows() != u.cols() || u.rows() != rho.dimension()) {
        throw Error(ErrorKind::shape, "unitary is " + std::to_string(u.rows()) + "x" +
                                          std::to_string(u.cols()) + " but the state has dimension " +
                                          std::to_string(rho.dimension()));
    }
    if (!detail::all_finite(u) || !is_unitary(u)) {
        throw Error(ErrorKind::validation, "operator is not unitary");
    }
    Matrix out = u * rho.matrix() * u.adjoint();
    return DensityOperator::from_channel_output(std::move(out));
}

/// Lifts a gate acting on `targets` (in gate-local order, first target most
/// significant) to the full `num_qubits` register.
inline Matrix expand_gate(const Matrix& gate, std::span<const int> targets, int num_qubits) {
    const int g = detail::qubits_of_dimension(gate.rows());
    if (gate.rows() != gate.cols() || g < 1 || static_cast<std::size_t>(g) != targets.size()) {
        throw Error(ErrorKind::shape, "gate size does not match its target list");
    }
    std::vector<bool> used(static_cast<std::size_t>(num_qubits), false);
    for (int t : targets) {
        if (t < 0 || t >= num_qubits || used[static_cast<std::size_t>(t)]) {
            throw Error(ErrorKind::shape, "gate target qubit " + std::to_string(t + 1) + " is invalid");
        }
        used[static_cast<std::size_t>(t)] = true;
    }
    const std::size_t dim = detail::dim_of(num_qubits);
    const auto local = [&](std::size_t index) {
        std::size_t l = 0;
        for (int t : targets) l = (l << 1) | qubit_bit(index, t, num_qubits);
        return l;
    };
    std::size_t target_mask = 0;
    for (int t : targets) target_mask |= std::size_t{1} << (num_qubits - 1 - t);

    Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t rest = col & ~target_mask;
        const std::size_t lc = local(col);
        for (std::size_t lr = 0; lr < static_cast<std::size_t>(gate.rows()); ++lr) {
            const Complex amp = gate(static_cast<Eigen::Index>(lr), static_cast<Eigen::Index>(lc));
            if (amp == Complex(0.0, 0.0)) continue;
            std::size_t row = rest;
            for (std::size_t i = 0; i < targets.size(); ++i) {
                const std::size_t bit = (lr >> (targets.size() - 1 - i)) & 1U;
                row |= bit << (num_qubits - 1 - targets[i]);
            }
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
        }
    }
    return full;
}

/// Traces out `traced` (0-based). The remaining qubits keep their relative order.
inline DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> traced) {
    const int k = rho.num_qubits();
    std::vector<bool> drop(static_cast<std::size_t>(k), false);
    for (int q : traced) {
        if (q < 0 || q >= k) {
            throw Error(ErrorKind::shape, "qubit " + std::to_string(q + 1) + " is out of range for a " +
                                              std::to_string(k) + "-qubit state");
        }
        drop[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> kept;
    std::vector<int> gone;
    for (int q = 0; q < k; ++q) (drop[static_cast<std::size_t>(q)] ? gone : kept).push_back(q);
    if (kept.empty()) throw Error(ErrorKind::shape, "cannot trace out every qubit");
    if (gone.empty()) return rho;

    const auto compose = [&](std::size_t kept_bits, std::size_t gone_bits) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const std::size_t bit = (kept_bits >> (kept.size() - 1 - i)) & 1U;
            index |= bit << (k - 1 - kept[i]);
        }
        for (std::size_t i = 0; i < gone.size(); ++i) {
            const std::size_t bit = (gone_bits >> (gone.size() - 1 - i)) & 1U;
            index |= bit << (k - 1 - gone[i]);
        }
        return static_cast<Eigen::Index>(index);
    };
    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t dg = std::size_t{1} << gone.size();
    const Matrix& m = rho.matrix();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            Complex sum(0.0, 0.0);
            for (std::size_t t = 0; t < dg; ++t) sum += m(compose(r, t), compose(c, t));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return DensityOperator::from_channel_output(std::move(out));
}

inline DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> traced) {
    return partial_trace(rho, std::span<const int>(traced.begin(), traced.size()));
}

/// Reorders qubits: new qubit i is old qubit order[i].
inline DensityOperator permute_qubits(const DensityOperator& rho, std::span<const int> order) {
    const int k = rho.num_qubits();
    if (static_cast<int>(order.size()) != k) throw Error(ErrorKind::shape, "permutation has wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int q : order) {
        if (q < 0 || q >= k || seen[static_cast<std::size_t>(q)]) {
            throw Error(ErrorKind::shape, "not a qubit permutation");
        }
        seen[static_cast<std::size_t>(q)] = true;
    }
    const std::size_t dim = detail::dim_of(k);
    std::vector<Eigen::Index> old_of_new(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        std::size_t old = 0;
        for (int i = 0; i < k; ++i) {
            old |= static_cast<std::size_t>(qubit_bit(n, i, k)) << (k - 1 - order[static_cast<std::size_t>(i)]);
        }
        old_of_new[n] = static_cast<Eigen::Index>(old);
    }
    const Matrix& m = rho.matrix();
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(old_of_new[r], old_of_new[c]);
        }
    }
    return DensityOperator::from_channel_output(std::move(out));
}

/// Tr(P rho), clamped to [0, 1].
inline double projector_probability(const DensityOperator& rho, const Projector& p) {
    if (rho.num_qubits() != p.num_qubits()) {
        throw Error(ErrorKind::shape, "projector and state act on different qubit counts");
    }
    const Complex value = (p.matrix() * rho.matrix()).trace();
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
        std::abs(value.imag()) > tolerance::corruption) {
        throw Error(ErrorKind::numeric_corruption, "probability has an imaginary residue of " +
                                                       std::to_string(value.imag()));
    }
    return std::clamp(value.real(), 0.0, 1.0);
}

/// Winning probability Tr(P1 rho) of a single-qubit state.
inline double winning_probability(const DensityOperator& rho) {
    return projector_probability(rho, Projector::p1());
}

/// One projective measurement: 1 with probability Tr(P rho).
inline int sample_outcome(const DensityOperator& rho, const Projector& p, RandomStream& rng) {
    const double prob = projector_probability(rho, p);
    return rng.uniform() < prob ? 1 : 0;
}

inline double min_eigenvalue(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

inline Eigen::VectorXd eigenvalues(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

/// Full invariant check including positivity. Throws a validation error.
inline void verify_valid(const DensityOperator& rho) {
    const Matrix& m = rho.matrix();
    if (!detail::all_finite(m)) throw Error(ErrorKind::validation, "non-finite entries");
    if (detail::hermitian_defect(m) > tolerance::structural) {
        throw Error(ErrorKind::validation, "not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tolerance::structural) {
        throw Error(ErrorKind::validation, "trace is not 1");
    }
    if (min_eigenvalue(rho) < -tolerance::psd) {
        throw Error(ErrorKind::validation, "not positive semidefinite");
    }
}

inline bool is_valid(const DensityOperator& rho) {
    try {
        verify_valid(rho);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// Random states for property checks. Reproducible from the stream.

/// Haar-style unitary: QR of a complex Gaussian matrix with phase-fixed R.
inline Matrix random_unitary(Eigen::Index dim, RandomStream& rng) {
    Matrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

/// U diag(p) U† with p a random probability vector.
inline DensityOperator random_density(int num_qubits, RandomStream& rng) {
    detail::check_cap(num_qubits);
    const auto dim = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
    Eigen::VectorXd p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) p(i) = -std::log(1.0 - rng.uniform());
    p /= p.sum();
    const Matrix u = random_unitary(dim, rng);
    Matrix m = u * p.cast<Complex>().asDiagonal() * u.adjoint();
    return DensityOperator::from_channel_output(std::move(m));
}

inline PureState random_pure(int num_qubits, RandomStream& rng) {
    const auto dim = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
    v.normalize();
    return PureState::from_vector(std::move(v));
}

}  // namespace qvote

#endif  // QVOTE_DENSITY_HPP
