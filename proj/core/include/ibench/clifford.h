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

#ifndef IBENCH_CLIFFORD_H
#define IBENCH_CLIFFORD_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ibench/channels.h"
#include "ibench/pauli.h"

namespace ibench {

/// Stabilizer tableau of a one- or two-qubit Clifford: the signed images
/// U X_q U^dagger and U Z_q U^dagger of the Pauli generators.
class CliffordTableau {
   public:
    static CliffordTableau identity(int num_qubits);
    /// Throws UnsupportedCombination if `u` does not map Paulis to signed Paulis.
    static CliffordTableau from_unitary(const Eigen::MatrixXcd &u);
    /// Conjugation by a Pauli operator: only signs change.
    static CliffordTableau from_pauli(const PauliString &p);
    static bool is_clifford(const Eigen::MatrixXcd &u);

    int num_qubits() const {
        return num_qubits_;
    }
    const PauliString &x_image(int q) const {
        return images_[2 * q];
    }
    const PauliString &z_image(int q) const {
        return images_[2 * q + 1];
    }

    /// U P U^dagger, exact.
    PauliString conjugate(const PauliString &p) const;
    /// Tableau of (next . this), i.e. this applied first.
    CliffordTableau then(const CliffordTableau &next) const;
    CliffordTableau inverse() const;

    /// 2n x 2n binary matrix; column k holds the (x | z) bits of generator k's image.
    Eigen::MatrixXi symplectic_matrix() const;
    bool preserves_symplectic_form() const;
    /// Compact identity of the element modulo global phase.
    uint32_t key() const;

    bool operator==(const CliffordTableau &rhs) const = default;

   private:
    int num_qubits_ = 0;
    std::array<PauliString, 4> images_{};
};

struct PrimitiveGate {
    enum class Kind { Single, Cnot };
    Kind kind = Kind::Single;
    /// Target of a single-qubit gate, or control of a CNOT.
    int qubit = 0;
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();

    Eigen::MatrixXcd matrix(int num_qubits) const;
};

/// Clifford group element with its synthesized circuit.
///
/// Two-qubit elements use the normal form
///   (C1 (x) C1) . R_k,  k < 20,
/// where R_k is the identity, CNOT . (S1 (x) S1), CNOT . (X/-2 (x) Y/2) . CNOT . (S1 (x) S1)
/// or SWAP (three CNOTs), and S1 = {I, SH, (SH)^2}. Index layout:
/// [0, 576) local, [576, 5760) one CNOT, [5760, 10944) two CNOTs, [10944, 11520) SWAP.
class CliffordElement {
   public:
    static constexpr int kSingleQubitOrder = 24;
    static constexpr int kTwoQubitOrder = 11520;

    static CliffordElement single_qubit(int index);
    static CliffordElement two_qubit(int index);
    /// Normal-form element with the given tableau.
    static CliffordElement from_tableau(const CliffordTableau &t);
    static int group_order(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    int index() const {
        return index_;
    }
    const CliffordTableau &tableau() const {
        return tableau_;
    }
    const UnitaryMatrix &unitary() const {
        return unitary_;
    }
    /// Gates in application order.
    const std::vector<PrimitiveGate> &synthesis() const {
        return synthesis_;
    }
    int cnot_count() const;

   private:
    CliffordElement(int num_qubits, int index, std::vector<PrimitiveGate> synthesis);

    int num_qubits_;
    int index_;
    std::vector<PrimitiveGate> synthesis_;
    UnitaryMatrix unitary_;
    CliffordTableau tableau_;
};

/// The 24 single-qubit Cliffords in a fixed breadth-first order from {H, S}.
const std::vector<Eigen::Matrix2cd> &single_qubit_cliffords();
/// Index of the single-qubit Clifford with the given tableau.
int single_qubit_clifford_index(const CliffordTableau &t);

}  // namespace ibench

#endif
