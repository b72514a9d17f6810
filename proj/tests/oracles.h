// Copyright 2026 The ibench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used as independent oracles in tests. Nothing
// here calls into the library.

#ifndef IBENCH_TESTS_ORACLES_H
#define IBENCH_TESTS_ORACLES_H

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

inline Eigen::Matrix2cd pauli1(int k) {
    Eigen::Matrix2cd m;
    switch (k) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); i++) {
        for (int j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Pauli basis element with index 4*q0 + q1, qubit 0 the left tensor factor.
inline Eigen::MatrixXcd pauli_basis(int index, int qubits) {
    if (qubits == 1) {
        return pauli1(index);
    }
    return kron(pauli1(index / 4), pauli1(index % 4));
}

/// R_ij = Tr(P_i E(P_j)) / d.
template <typename Map>
Eigen::MatrixXd ptm_of(const Map &apply, int dim) {
    int n = dim * dim;
    int qubits = dim == 2 ? 1 : 2;
    Eigen::MatrixXd r(n, n);
    for (int j = 0; j < n; j++) {
        Eigen::MatrixXcd out = apply(pauli_basis(j, qubits));
        for (int i = 0; i < n; i++) {
            r(i, j) = (pauli_basis(i, qubits) * out).trace().real() / dim;
        }
    }
    return r;
}

inline Eigen::MatrixXd unitary_ptm(const Eigen::MatrixXcd &u) {
    return ptm_of([&](const Eigen::MatrixXcd &x) -> Eigen::MatrixXcd { return u * x * u.adjoint(); },
                  static_cast<int>(u.rows()));
}

inline Eigen::MatrixXd kraus_ptm(const std::vector<Eigen::MatrixXcd> &ks) {
    return ptm_of(
        [&](const Eigen::MatrixXcd &x) -> Eigen::MatrixXcd {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
            for (const auto &k : ks) {
                out += k * x * k.adjoint();
            }
            return out;
        },
        static_cast<int>(ks.front().rows()));
}

/// Entanglement fidelity |Tr U|^2 / d^2 of a unitary error.
inline double unitary_process_fidelity(const Eigen::MatrixXcd &u) {
    double d = static_cast<double>(u.rows());
    return std::norm(u.trace()) / (d * d);
}

/// Haar unitary from the QR decomposition of a Ginibre matrix with phase fix.
inline Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            z(i, j) = cd(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; i++) {
        q.col(i) *= r(i, i) / std::abs(r(i, i));
    }
    return q;
}

/// Random CPTP map as Kraus operators from a Haar isometry.
inline std::vector<Eigen::MatrixXcd> random_kraus(int dim, int rank, std::mt19937_64 &rng) {
    Eigen::MatrixXcd v = haar_unitary(dim * rank, rng).leftCols(dim);
    std::vector<Eigen::MatrixXcd> ks;
    for (int k = 0; k < rank; k++) {
        ks.push_back(v.block(k * dim, 0, dim, dim));
    }
    return ks;
}

/// exp(i theta G) for an involutory G.
inline Eigen::MatrixXcd exp_involution(const Eigen::MatrixXcd &g, double theta) {
    return std::cos(theta) * Eigen::MatrixXcd::Identity(g.rows(), g.cols()) + cd(0, std::sin(theta)) * g;
}

/// Matrix power through the eigendecomposition, eigenphases in (-pi, pi].
inline Eigen::MatrixXcd unitary_power(const Eigen::MatrixXcd &u, double t) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
    Eigen::VectorXcd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); i++) {
        ev(i) = std::exp(cd(0, t * std::arg(ev(i))));
    }
    Eigen::MatrixXcd v = es.eigenvectors();
    return v * ev.asDiagonal() * v.inverse();
}

inline Eigen::Matrix4cd cnot01() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

/// Lower and upper systematic bounds on the interleaved infidelity.
inline std::pair<double, double> systematic_interval(double e_ef, double e_e) {
    double c = e_ef + e_e - 2 * e_ef * e_e;
    double r = 2 * std::sqrt((1 - e_ef) * (1 - e_e) * e_ef * e_e);
    return {c - r, c + r};
}

inline bool equal_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    cd overlap = (b.adjoint() * a).trace();
    if (std::abs(overlap) < 1e-12) {
        return false;
    }
    return (a - (overlap / std::abs(overlap)) * b).cwiseAbs().maxCoeff() < tol;
}

}  // namespace oracle

#endif
