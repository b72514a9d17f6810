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

// Channel algebra for one and two qubits.
//
// Every channel is ultimately exchanged as a PauliTransferMatrix: the real
// Liouville matrix R_ij = Tr(P_i E(P_j)) / d in the normalized Pauli basis
// {P / sqrt(d)}, ordered as in pauli_basis(). Choi matrices use the
// input (x) output ordering J = (1/d) sum_kl |k><l| (x) E(|k><l|), trace 1.

#ifndef IBENCH_CHANNELS_H
#define IBENCH_CHANNELS_H

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ibench/pauli.h"

namespace ibench {

class UnitaryMatrix {
   public:
    /// Validates U^dagger U = I to `tol`; throws InvalidInput otherwise.
    explicit UnitaryMatrix(Eigen::MatrixXcd m, double tol = 1e-9);
    static UnitaryMatrix identity(int dim);
    /// Skips validation; for hot paths where unitarity holds by construction.
    static UnitaryMatrix unchecked(Eigen::MatrixXcd m);

    int dim() const {
        return static_cast<int>(m_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix &rhs) const;
    /// max |U^dagger U - I|.
    double unitarity_defect() const;

   private:
    UnitaryMatrix() = default;
    Eigen::MatrixXcd m_;
};

/// exp(i * theta * G) for a Hermitian Pauli generator G.
UnitaryMatrix exp_pauli(const PauliString &generator, double theta);
UnitaryMatrix kron(const UnitaryMatrix &a, const UnitaryMatrix &b);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
/// True when a and b agree up to a global phase, to `tol` in max-norm.
bool equal_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol = 1e-10);

class PauliTransferMatrix {
   public:
    /// `m` must be 4x4 (one qubit) or 16x16 (two qubits).
    explicit PauliTransferMatrix(Eigen::MatrixXd m);

    static PauliTransferMatrix identity(int dim);
    static PauliTransferMatrix from_unitary(const UnitaryMatrix &u);
    /// E(rho) = p rho + (1 - p) Tr(rho) I / d.
    static PauliTransferMatrix depolarizing(int dim, double p);

    int dim() const {
        return dim_;
    }
    const Eigen::MatrixXd &matrix() const {
        return m_;
    }
    double operator()(int row, int col) const {
        return m_(row, col);
    }
    bool is_trace_preserving(double tol = 1e-12) const;
    /// The (d^2-1) x (d^2-1) block acting on traceless operators.
    Eigen::MatrixXd unital_block() const;
    PauliTransferMatrix transpose() const;

   private:
    int dim_;
    Eigen::MatrixXd m_;
};

/// a after b.
PauliTransferMatrix compose(const PauliTransferMatrix &a, const PauliTransferMatrix &b);
/// Channel acting as a on qubit 0 and b on qubit 1.
PauliTransferMatrix tensor(const PauliTransferMatrix &a, const PauliTransferMatrix &b);
PauliTransferMatrix unitary_to_ptm(const UnitaryMatrix &u);

/// Tr[ptm] / d^2; not clamped, fitted channels may be unphysical.
double process_fidelity(const PauliTransferMatrix &ptm);
/// 1 - Tr[ptm] / d^2.
double process_infidelity(const PauliTransferMatrix &ptm);
/// Tr[E_u^T E_u] / (d^2 - 1) over the unital block.
double unitarity(const PauliTransferMatrix &ptm);

/// p = 1 - d^2 / (d^2 - 1) * eps.
double depolarizing_parameter_from_infidelity(double eps, int dim);
/// eps = (d^2 - 1) / d^2 * (1 - p).
double infidelity_from_depolarizing_parameter(double p, int dim);

class ChoiMatrix {
   public:
    /// Checks shape and Hermiticity (1e-10); throws InvalidChannel.
    explicit ChoiMatrix(Eigen::MatrixXcd m);
    int dim() const {
        return dim_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    /// Eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const;
    double min_eigenvalue() const;

   private:
    int dim_;
    Eigen::MatrixXcd m_;
};

struct KrausSet {
    int dim = 0;
    /// Sorted by decreasing weight.
    std::vector<Eigen::MatrixXcd> operators;
    /// Choi eigenvalues; sum to Tr(J) = 1 for trace-preserving maps.
    std::vector<double> weights;

    /// max |sum K^dagger K - I|.
    double completeness_defect() const;
};

ChoiMatrix ptm_to_choi(const PauliTransferMatrix &ptm);
PauliTransferMatrix choi_to_ptm(const ChoiMatrix &choi);
/// Throws InvalidChannel if any Choi eigenvalue is below -cp_tolerance.
KrausSet choi_to_kraus(const ChoiMatrix &choi, double cp_tolerance = 1e-10);
/// Leading eigenpair of the Choi matrix as a Kraus operator, no CP check.
std::pair<Eigen::MatrixXcd, double> leading_kraus(const ChoiMatrix &choi);
PauliTransferMatrix kraus_to_ptm(const std::vector<Eigen::MatrixXcd> &operators);
PauliTransferMatrix kraus_to_ptm(const KrausSet &kraus);

class DensityState {
   public:
    /// Validates trace 1, Hermiticity and eigenvalues >= -1e-10.
    explicit DensityState(Eigen::MatrixXcd rho);
    static DensityState pure(const Eigen::VectorXcd &psi);
    static DensityState basis_state(int dim, int index);
    static DensityState maximally_mixed(int dim);
    /// rho = sum_i v_i P_i / sqrt(d).
    static DensityState from_pauli_vector(const Eigen::VectorXd &v);

    int dim() const {
        return static_cast<int>(rho_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return rho_;
    }
    /// v_i = Tr(P_i rho) / sqrt(d).
    Eigen::VectorXd pauli_vector() const;
    /// Generalized Bloch vector n_i = Tr(P_i rho), i >= 1.
    Eigen::VectorXd bloch_vector() const;

   private:
    Eigen::MatrixXcd rho_;
};

double purity(const DensityState &rho);

/// A channel held either as a unitary (cheap to compose and apply) or as a PTM.
class Channel {
   public:
    static Channel unitary(UnitaryMatrix u);
    static Channel general(PauliTransferMatrix ptm);
    static Channel identity(int dim);

    int dim() const;
    bool is_unitary() const {
        return unitary_.has_value();
    }
    const UnitaryMatrix &as_unitary() const;
    PauliTransferMatrix ptm() const;
    /// rho -> E(rho), in place.
    void apply(Eigen::MatrixXcd &rho) const;

   private:
    std::optional<UnitaryMatrix> unitary_;
    std::optional<PauliTransferMatrix> ptm_;
};

/// after o before.
Channel compose(const Channel &after, const Channel &before);
Channel tensor(const Channel &a, const Channel &b);

/// Pauli vector v_i = Tr(P_i rho) / sqrt(d) of an arbitrary operator.
Eigen::VectorXd to_pauli_vector(const Eigen::MatrixXcd &rho);
Eigen::MatrixXcd from_pauli_vector(const Eigen::VectorXd &v);

}  // namespace ibench

#endif
