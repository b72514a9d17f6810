// Copyright 2026 The ibench Authors
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

#include "ibench/channels.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "ibench/errors.h"

namespace ibench {

namespace {

// Each Pauli matrix has exactly one non-zero per row; store (column, value).
struct SparsePauli {
    std::array<int, 4> col{};
    std::array<cdouble, 4> val{};
};

const std::vector<SparsePauli> &sparse_basis(int dim) {
    auto build = [](int d) {
        std::vector<SparsePauli> out;
        for (const auto &p : pauli_basis(d)) {
            SparsePauli s;
            for (int r = 0; r < d; r++) {
                for (int c = 0; c < d; c++) {
                    if (std::abs(p(r, c)) > 0.5) {
                        s.col[r] = c;
                        s.val[r] = p(r, c);
                    }
                }
            }
            out.push_back(s);
        }
        return out;
    };
    static const std::vector<SparsePauli> one = build(2);
    static const std::vector<SparsePauli> two = build(4);
    return qubits_for_dim(dim) == 1 ? one : two;
}

// Tr(P_i A).
cdouble pauli_trace(const SparsePauli &p, const Eigen::MatrixXcd &a) {
    cdouble t = 0;
    for (int r = 0; r < a.rows(); r++) {
        t += p.val[r] * a(p.col[r], r);
    }
    return t;
}

// P_j * A.
Eigen::MatrixXcd pauli_times(const SparsePauli &p, const Eigen::MatrixXcd &a) {
    Eigen::MatrixXcd out(a.rows(), a.cols());
    for (int r = 0; r < a.rows(); r++) {
        out.row(r) = p.val[r] * a.row(p.col[r]);
    }
    return out;
}

int dim_from_ptm_size(Eigen::Index n) {
    if (n == 4) {
        return 2;
    }
    if (n == 16) {
        return 4;
    }
    throw InvalidInput("PTM must be 4x4 or 16x16, got size " + std::to_string(n));
}

void require_same_dim(int a, int b, const char *what) {
    if (a != b) {
        throw InvalidInput(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                           std::to_string(b) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidInput("unitary must be square");
    }
    qubits_for_dim(static_cast<int>(m_.rows()));
    if (unitarity_defect() > tol) {
        throw InvalidInput("matrix is not unitary (defect " + std::to_string(unitarity_defect()) + ")");
    }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
    qubits_for_dim(dim);
    return unchecked(Eigen::MatrixXcd::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::unchecked(Eigen::MatrixXcd m) {
    UnitaryMatrix u;
    u.m_ = std::move(m);
    return u;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return unchecked(m_.adjoint());
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &rhs) const {
    require_same_dim(dim(), rhs.dim(), "unitary product");
    return unchecked(m_ * rhs.m_);
}

double UnitaryMatrix::unitarity_defect() const {
    return (m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

UnitaryMatrix exp_pauli(const PauliString &generator, double theta) {
    generator.sign();  // Hermitian generators only.
    Eigen::MatrixXcd g = generator.matrix();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    return UnitaryMatrix::unchecked(std::cos(theta) * id + cdouble(0, std::sin(theta)) * g);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++) {
        for (Eigen::Index c = 0; c < a.cols(); c++) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

UnitaryMatrix kron(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw InvalidInput("kron of unitaries is only defined for two single-qubit factors");
    }
    return UnitaryMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

bool equal_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) < 1e-12 || std::abs(a(r, c)) < 1e-12) {
        return false;
    }
    cdouble phase = a(r, c) / b(r, c);
    phase /= std::abs(phase);
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// PauliTransferMatrix

PauliTransferMatrix::PauliTransferMatrix(Eigen::MatrixXd m) : dim_(0), m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidInput("PTM must be square");
    }
    dim_ = dim_from_ptm_size(m_.rows());
}

PauliTransferMatrix PauliTransferMatrix::identity(int dim) {
    qubits_for_dim(dim);
    return PauliTransferMatrix(Eigen::MatrixXd::Identity(dim * dim, dim * dim));
}

PauliTransferMatrix PauliTransferMatrix::from_unitary(const UnitaryMatrix &u) {
    int d = u.dim();
    int n = d * d;
    const auto &basis = sparse_basis(d);
    const Eigen::MatrixXcd &um = u.matrix();
    Eigen::MatrixXcd udag = um.adjoint();
    Eigen::MatrixXd r(n, n);
    for (int j = 0; j < n; j++) {
        Eigen::MatrixXcd a = um * pauli_times(basis[j], udag);
        for (int i = 0; i < n; i++) {
            r(i, j) = pauli_trace(basis[i], a).real() / d;
        }
    }
    return PauliTransferMatrix(std::move(r));
}

PauliTransferMatrix PauliTransferMatrix::depolarizing(int dim, double p) {
    qubits_for_dim(dim);
    Eigen::MatrixXd r = p * Eigen::MatrixXd::Identity(dim * dim, dim * dim);
    r(0, 0) = 1.0;
    return PauliTransferMatrix(std::move(r));
}

bool PauliTransferMatrix::is_trace_preserving(double tol) const {
    if (std::abs(m_(0, 0) - 1.0) > tol) {
        return false;
    }
    return m_.row(0).tail(m_.cols() - 1).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXd PauliTransferMatrix::unital_block() const {
    return m_.bottomRightCorner(m_.rows() - 1, m_.cols() - 1);
}

PauliTransferMatrix PauliTransferMatrix::transpose() const {
    return PauliTransferMatrix(m_.transpose());
}

PauliTransferMatrix compose(const PauliTransferMatrix &a, const PauliTransferMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "compose");
    return PauliTransferMatrix(a.matrix() * b.matrix());
}

PauliTransferMatrix tensor(const PauliTransferMatrix &a, const PauliTransferMatrix &b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw InvalidInput("tensor: both factors must be single-qubit PTMs");
    }
    Eigen::MatrixXd out(16, 16);
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            out.block<4, 4>(4 * r, 4 * c) = a(r, c) * b.matrix();
        }
    }
    return PauliTransferMatrix(std::move(out));
}

PauliTransferMatrix unitary_to_ptm(const UnitaryMatrix &u) {
    return PauliTransferMatrix::from_unitary(u);
}

double process_fidelity(const PauliTransferMatrix &ptm) {
    double d2 = static_cast<double>(ptm.dim()) * ptm.dim();
    return ptm.matrix().trace() / d2;
}

double process_infidelity(const PauliTransferMatrix &ptm) {
    return 1.0 - process_fidelity(ptm);
}

double unitarity(const PauliTransferMatrix &ptm) {
    double d2 = static_cast<double>(ptm.dim()) * ptm.dim();
    Eigen::MatrixXd block = ptm.unital_block();
    return (block.transpose() * block).trace() / (d2 - 1.0);
}

double depolarizing_parameter_from_infidelity(double eps, int dim) {
    qubits_for_dim(dim);
    double d2 = static_cast<double>(dim) * dim;
    return 1.0 - d2 / (d2 - 1.0) * eps;
}

double infidelity_from_depolarizing_parameter(double p, int dim) {
    qubits_for_dim(dim);
    double d2 = static_cast<double>(dim) * dim;
    return (d2 - 1.0) / d2 * (1.0 - p);
}

// ---------------------------------------------------------------------------
// Choi / Kraus

ChoiMatrix::ChoiMatrix(Eigen::MatrixXcd m) : dim_(0), m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidChannel("Choi matrix must be square");
    }
    dim_ = dim_from_ptm_size(m_.rows());
    double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) {
        throw InvalidChannel("Choi matrix is not Hermitian (defect " + std::to_string(herm) + ")");
    }
}

Eigen::VectorXd ChoiMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double ChoiMatrix::min_eigenvalue() const {
    return eigenvalues()(0);
}

double KrausSet::completeness_defect() const {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &k : operators) {
        sum += k.adjoint() * k;
    }
    return (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

ChoiMatrix ptm_to_choi(const PauliTransferMatrix &ptm) {
    int d = ptm.dim();
    int n = d * d;
    const auto &basis = pauli_basis(d);
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            double r = ptm(a, b);
            if (r != 0.0) {
                j += r * kron(basis[b].transpose(), basis[a]);
            }
        }
    }
    j /= static_cast<double>(n);
    // Remove rounding asymmetry so the Hermiticity check sees an exact adjoint.
    Eigen::MatrixXcd herm = 0.5 * (j + j.adjoint());
    return ChoiMatrix(std::move(herm));
}

PauliTransferMatrix choi_to_ptm(const ChoiMatrix &choi) {
    int d = choi.dim();
    int n = d * d;
    const auto &basis = pauli_basis(d);
    Eigen::MatrixXd r(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            r(a, b) = (choi.matrix() * kron(basis[b].transpose(), basis[a])).trace().real();
        }
    }
    return PauliTransferMatrix(std::move(r));
}

namespace {

Eigen::MatrixXcd unvec_kraus(const Eigen::VectorXcd &v, double weight, int d) {
    Eigen::MatrixXcd k(d, d);
    double scale = std::sqrt(d * weight);
    for (int in = 0; in < d; in++) {
        for (int out = 0; out < d; out++) {
            k(out, in) = scale * v(in * d + out);
        }
    }
    return k;
}

}  // namespace

KrausSet choi_to_kraus(const ChoiMatrix &choi, double cp_tolerance) {
    int d = choi.dim();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(choi.matrix());
    const Eigen::VectorXd &evals = solver.eigenvalues();
    if (evals(0) < -cp_tolerance) {
        throw InvalidChannel("channel is not completely positive (Choi eigenvalue " + std::to_string(evals(0)) +
                             ")");
    }
    KrausSet out;
    out.dim = d;
    for (Eigen::Index k = evals.size() - 1; k >= 0; k--) {
        if (evals(k) <= cp_tolerance) {
            continue;
        }
        out.operators.push_back(unvec_kraus(solver.eigenvectors().col(k), evals(k), d));
        out.weights.push_back(evals(k));
    }
    return out;
}

std::pair<Eigen::MatrixXcd, double> leading_kraus(const ChoiMatrix &choi) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(choi.matrix());
    Eigen::Index top = solver.eigenvalues().size() - 1;
    double w = solver.eigenvalues()(top);
    return {unvec_kraus(solver.eigenvectors().col(top), std::max(w, 0.0), choi.dim()), w};
}

PauliTransferMatrix kraus_to_ptm(const std::vector<Eigen::MatrixXcd> &operators) {
    if (operators.empty()) {
        throw InvalidInput("empty Kraus set");
    }
    int d = static_cast<int>(operators.front().rows());
    int n = d * d;
    const auto &basis = sparse_basis(d);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (const auto &k : operators) {
        require_same_dim(d, static_cast<int>(k.rows()), "kraus_to_ptm");
        Eigen::MatrixXcd kdag = k.adjoint();
        for (int j = 0; j < n; j++) {
            Eigen::MatrixXcd a = k * pauli_times(basis[j], kdag);
            for (int i = 0; i < n; i++) {
                r(i, j) += pauli_trace(basis[i], a).real() / d;
            }
        }
    }
    return PauliTransferMatrix(std::move(r));
}

PauliTransferMatrix kraus_to_ptm(const KrausSet &kraus) {
    return kraus_to_ptm(kraus.operators);
}

// ---------------------------------------------------------------------------
// States

Eigen::VectorXd to_pauli_vector(const Eigen::MatrixXcd &rho) {
    int d = static_cast<int>(rho.rows());
    const auto &basis = sparse_basis(d);
    Eigen::VectorXd v(d * d);
    double norm = std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d * d; i++) {
        v(i) = pauli_trace(basis[i], rho).real() / norm;
    }
    return v;
}

Eigen::MatrixXcd from_pauli_vector(const Eigen::VectorXd &v) {
    int d = v.size() == 4 ? 2 : v.size() == 16 ? 4 : 0;
    if (d == 0) {
        throw InvalidInput("Pauli vector must have length 4 or 16");
    }
    const auto &basis = pauli_basis(d);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d * d; i++) {
        rho += v(i) * basis[i];
    }
    return rho / std::sqrt(static_cast<double>(d));
}

DensityState::DensityState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) {
        throw InvalidInput("density matrix must be square");
    }
    qubits_for_dim(static_cast<int>(rho_.rows()));
    if (std::abs(rho_.trace() - cdouble(1, 0)) > 1e-10) {
        throw InvalidInput("density matrix trace is not 1");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidInput("density matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()(0) < -1e-10) {
        throw InvalidInput("density matrix has a negative eigenvalue");
    }
}

DensityState DensityState::pure(const Eigen::VectorXcd &psi) {
    Eigen::VectorXcd n = psi / psi.norm();
    return DensityState(n * n.adjoint());
}

DensityState DensityState::basis_state(int dim, int index) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(index) = 1.0;
    return pure(psi);
}

DensityState DensityState::maximally_mixed(int dim) {
    return DensityState(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityState DensityState::from_pauli_vector(const Eigen::VectorXd &v) {
    return DensityState(ibench::from_pauli_vector(v));
}

Eigen::VectorXd DensityState::pauli_vector() const {
    return to_pauli_vector(rho_);
}

Eigen::VectorXd DensityState::bloch_vector() const {
    Eigen::VectorXd v = pauli_vector() * std::sqrt(static_cast<double>(dim()));
    return v.tail(v.size() - 1);
}

double purity(const DensityState &rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

// ---------------------------------------------------------------------------
// Channel

Channel Channel::unitary(UnitaryMatrix u) {
    Channel c;
    c.unitary_ = std::move(u);
    return c;
}

Channel Channel::general(PauliTransferMatrix ptm) {
    Channel c;
    c.ptm_ = std::move(ptm);
    return c;
}

Channel Channel::identity(int dim) {
    return unitary(UnitaryMatrix::identity(dim));
}

int Channel::dim() const {
    return unitary_ ? unitary_->dim() : ptm_->dim();
}

const UnitaryMatrix &Channel::as_unitary() const {
    if (!unitary_) {
        throw InvalidInput("channel is not unitary");
    }
    return *unitary_;
}

PauliTransferMatrix Channel::ptm() const {
    return unitary_ ? PauliTransferMatrix::from_unitary(*unitary_) : *ptm_;
}

void Channel::apply(Eigen::MatrixXcd &rho) const {
    if (unitary_) {
        rho = unitary_->matrix() * rho * unitary_->matrix().adjoint();
        return;
    }
    rho = ibench::from_pauli_vector(ptm_->matrix() * to_pauli_vector(rho));
}

Channel compose(const Channel &after, const Channel &before) {
    require_same_dim(after.dim(), before.dim(), "compose");
    if (after.is_unitary() && before.is_unitary()) {
        return Channel::unitary(after.as_unitary() * before.as_unitary());
    }
    return Channel::general(compose(after.ptm(), before.ptm()));
}

Channel tensor(const Channel &a, const Channel &b) {
    if (a.is_unitary() && b.is_unitary()) {
        return Channel::unitary(kron(a.as_unitary(), b.as_unitary()));
    }
    return Channel::general(tensor(a.ptm(), b.ptm()));
}

}  // namespace ibench
