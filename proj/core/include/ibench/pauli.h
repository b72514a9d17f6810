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

#ifndef IBENCH_PAULI_H
#define IBENCH_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ibench {

using cdouble = std::complex<double>;

/// Single-qubit Pauli in lexicographic basis order.
enum class Pauli1 : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli1 p);
Pauli1 pauli_from_char(char c);
const Eigen::Matrix2cd &pauli_matrix(Pauli1 p);

/// Number of qubits for a Hilbert dimension (2 -> 1, 4 -> 2). Throws InvalidInput otherwise.
int qubits_for_dim(int dim);

/// Unnormalized Pauli basis {P_0, ..., P_{d^2-1}} for dimension d in {2, 4}.
///
/// Two-qubit elements are ordered lexicographically with qubit 0 as the most
/// significant tensor factor: index = 4 * label(q0) + label(q1).
const std::vector<Eigen::MatrixXcd> &pauli_basis(int dim);

/// Signed multi-qubit Pauli operator i^phase * (sigma_0 (x) sigma_1 ...), n <= 2.
///
/// Qubit q is described by bits (x_q, z_q) with (1,1) meaning Y, so Hermitian
/// operators have even phase.
class PauliString {
   public:
    PauliString() = default;
    PauliString(int num_qubits, uint8_t xs, uint8_t zs, uint8_t phase = 0);

    static PauliString identity(int num_qubits);
    /// Parses "XZ", "+XZ", "-YY", "iZ" style labels.
    static PauliString from_str(std::string_view label);
    /// Unsigned Pauli with the given lexicographic basis index.
    static PauliString from_index(int index, int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    uint8_t xs() const {
        return xs_;
    }
    uint8_t zs() const {
        return zs_;
    }
    /// Power of i, in [0, 4).
    uint8_t phase() const {
        return phase_;
    }
    Pauli1 qubit(int q) const;
    /// Lexicographic index of the unsigned operator in pauli_basis().
    int basis_index() const;
    bool is_identity() const {
        return xs_ == 0 && zs_ == 0;
    }
    /// +1 or -1 for Hermitian operators; throws for phases of +-i.
    int sign() const;
    PauliString unsigned_part() const;
    PauliString negated() const;
    bool commutes_with(const PauliString &other) const;
    /// Mask of qubits acted on non-trivially.
    uint8_t support() const {
        return xs_ | zs_;
    }

    Eigen::MatrixXcd matrix() const;
    std::string str() const;

    PauliString operator*(const PauliString &rhs) const;
    bool operator==(const PauliString &rhs) const = default;

   private:
    int num_qubits_ = 0;
    uint8_t xs_ = 0;
    uint8_t zs_ = 0;
    uint8_t phase_ = 0;
};

}  // namespace ibench

#endif
