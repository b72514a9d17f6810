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

#include "ibench/pauli.h"

#include <array>

#include "ibench/errors.h"

namespace ibench {

namespace {

// Exponent e with sigma(x1,z1) * sigma(x2,z2) = i^e sigma(x1^x2, z1^z2).
int product_phase(int x1, int z1, int x2, int z2) {
    if (x1 == 0 && z1 == 0) {
        return 0;
    }
    if (x1 == 1 && z1 == 1) {
        return z2 - x2;
    }
    if (x1 == 1) {
        return z2 * (2 * x2 - 1);
    }
    return x2 * (1 - 2 * z2);
}

constexpr std::array<std::pair<int, int>, 4> kBits{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

Pauli1 from_bits(int x, int z) {
    if (x == 0) {
        return z ? Pauli1::Z : Pauli1::I;
    }
    return z ? Pauli1::Y : Pauli1::X;
}

}  // namespace

char pauli_char(Pauli1 p) {
    return "IXYZ"[static_cast<int>(p)];
}

Pauli1 pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli1::I;
        case 'X':
            return Pauli1::X;
        case 'Y':
            return Pauli1::Y;
        case 'Z':
            return Pauli1::Z;
        default:
            throw InvalidInput(std::string("not a Pauli character: '") + c + "'");
    }
}

const Eigen::Matrix2cd &pauli_matrix(Pauli1 p) {
    static const std::array<Eigen::Matrix2cd, 4> mats = [] {
        std::array<Eigen::Matrix2cd, 4> m;
        const cdouble i{0, 1};
        m[0] << 1, 0, 0, 1;
        m[1] << 0, 1, 1, 0;
        m[2] << 0, -i, i, 0;
        m[3] << 1, 0, 0, -1;
        return m;
    }();
    return mats[static_cast<int>(p)];
}

int qubits_for_dim(int dim) {
    if (dim == 2) {
        return 1;
    }
    if (dim == 4) {
        return 2;
    }
    throw InvalidInput("unsupported Hilbert dimension " + std::to_string(dim) + " (expected 2 or 4)");
}

const std::vector<Eigen::MatrixXcd> &pauli_basis(int dim) {
    static const std::vector<Eigen::MatrixXcd> one = [] {
        std::vector<Eigen::MatrixXcd> v;
        for (int k = 0; k < 4; k++) {
            v.emplace_back(pauli_matrix(static_cast<Pauli1>(k)));
        }
        return v;
    }();
    static const std::vector<Eigen::MatrixXcd> two = [] {
        std::vector<Eigen::MatrixXcd> v;
        for (int a = 0; a < 4; a++) {
            for (int b = 0; b < 4; b++) {
                Eigen::MatrixXcd m(4, 4);
                const auto &pa = pauli_matrix(static_cast<Pauli1>(a));
                const auto &pb = pauli_matrix(static_cast<Pauli1>(b));
                for (int r = 0; r < 2; r++) {
                    for (int c = 0; c < 2; c++) {
                        m.block<2, 2>(2 * r, 2 * c) = pa(r, c) * pb;
                    }
                }
                v.push_back(std::move(m));
            }
        }
        return v;
    }();
    return qubits_for_dim(dim) == 1 ? one : two;
}

PauliString::PauliString(int num_qubits, uint8_t xs, uint8_t zs, uint8_t phase)
    : num_qubits_(num_qubits), xs_(xs), zs_(zs), phase_(phase & 3) {
    if (num_qubits < 1 || num_qubits > 2) {
        throw InvalidInput("PauliString supports 1 or 2 qubits");
    }
    uint8_t mask = static_cast<uint8_t>((1 << num_qubits) - 1);
    if ((xs & ~mask) || (zs & ~mask)) {
        throw InvalidInput("PauliString bits out of range");
    }
}

PauliString PauliString::identity(int num_qubits) {
    return PauliString(num_qubits, 0, 0, 0);
}

PauliString PauliString::from_str(std::string_view label) {
    uint8_t phase = 0;
    if (!label.empty() && (label.front() == '+' || label.front() == '-')) {
        phase = label.front() == '-' ? 2 : 0;
        label.remove_prefix(1);
    }
    if (!label.empty() && label.front() == 'i') {
        phase = static_cast<uint8_t>(phase + 1);
        label.remove_prefix(1);
    }
    if (label.empty() || label.size() > 2) {
        throw InvalidInput("Pauli label must name 1 or 2 qubits: '" + std::string(label) + "'");
    }
    uint8_t xs = 0;
    uint8_t zs = 0;
    for (size_t q = 0; q < label.size(); q++) {
        auto [x, z] = kBits[static_cast<int>(pauli_from_char(label[q]))];
        xs |= static_cast<uint8_t>(x << q);
        zs |= static_cast<uint8_t>(z << q);
    }
    return PauliString(static_cast<int>(label.size()), xs, zs, phase);
}

PauliString PauliString::from_index(int index, int num_qubits) {
    int n = 1 << (2 * num_qubits);
    if (index < 0 || index >= n) {
        throw InvalidInput("Pauli index out of range");
    }
    uint8_t xs = 0;
    uint8_t zs = 0;
    for (int q = num_qubits - 1; q >= 0; q--) {
        auto [x, z] = kBits[index & 3];
        xs |= static_cast<uint8_t>(x << q);
        zs |= static_cast<uint8_t>(z << q);
        index >>= 2;
    }
    return PauliString(num_qubits, xs, zs, 0);
}

Pauli1 PauliString::qubit(int q) const {
    return from_bits((xs_ >> q) & 1, (zs_ >> q) & 1);
}

int PauliString::basis_index() const {
    int index = 0;
    for (int q = 0; q < num_qubits_; q++) {
        index = 4 * index + static_cast<int>(qubit(q));
    }
    return index;
}

int PauliString::sign() const {
    if (phase_ == 0) {
        return 1;
    }
    if (phase_ == 2) {
        return -1;
    }
    throw InvalidInput("Pauli operator " + str() + " is not Hermitian");
}

PauliString PauliString::unsigned_part() const {
    return PauliString(num_qubits_, xs_, zs_, 0);
}

PauliString PauliString::negated() const {
    return PauliString(num_qubits_, xs_, zs_, static_cast<uint8_t>(phase_ + 2));
}

bool PauliString::commutes_with(const PauliString &other) const {
    int anti = 0;
    for (int q = 0; q < num_qubits_; q++) {
        anti += (((xs_ >> q) & 1) & ((other.zs_ >> q) & 1)) ^ (((zs_ >> q) & 1) & ((other.xs_ >> q) & 1));
    }
    return anti % 2 == 0;
}

Eigen::MatrixXcd PauliString::matrix() const {
    static const std::array<cdouble, 4> powers{cdouble{1, 0}, cdouble{0, 1}, cdouble{-1, 0}, cdouble{0, -1}};
    int dim = 1 << num_qubits_;
    return powers[phase_] * pauli_basis(dim)[basis_index()];
}

std::string PauliString::str() const {
    static const char *prefix[] = {"+", "+i", "-", "-i"};
    std::string s = prefix[phase_];
    for (int q = 0; q < num_qubits_; q++) {
        s += pauli_char(qubit(q));
    }
    return s;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    if (num_qubits_ != rhs.num_qubits_) {
        throw InvalidInput("Pauli product qubit-count mismatch");
    }
    int phase = phase_ + rhs.phase_;
    for (int q = 0; q < num_qubits_; q++) {
        phase += product_phase((xs_ >> q) & 1, (zs_ >> q) & 1, (rhs.xs_ >> q) & 1, (rhs.zs_ >> q) & 1);
    }
    return PauliString(num_qubits_, xs_ ^ rhs.xs_, zs_ ^ rhs.zs_, static_cast<uint8_t>(((phase % 4) + 4) % 4));
}

}  // namespace ibench
