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

#include "ibench/clifford.h"

#include <cmath>
#include <deque>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "ibench/errors.h"
#include "ibench/gates.h"

namespace ibench {

namespace {

PauliString generator(int num_qubits, int q, bool is_z) {
    uint8_t bit = static_cast<uint8_t>(1 << q);
    return PauliString(num_qubits, is_z ? 0 : bit, is_z ? bit : 0, 0);
}

std::optional<PauliString> signed_pauli_image(const Eigen::MatrixXcd &u, const PauliString &p) {
    int d = static_cast<int>(u.rows());
    int n = qubits_for_dim(d);
    Eigen::MatrixXcd a = u * p.matrix() * u.adjoint();
    const auto &basis = pauli_basis(d);
    for (int k = 0; k < d * d; k++) {
        cdouble c = (basis[k] * a).trace() / static_cast<double>(d);
        if (std::abs(c) > 0.5) {
            if (std::abs(std::abs(c.real()) - 1.0) > 1e-8 || std::abs(c.imag()) > 1e-8) {
                return std::nullopt;
            }
            PauliString img = PauliString::from_index(k, n);
            return c.real() > 0 ? img : img.negated();
        }
    }
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// CliffordTableau

CliffordTableau CliffordTableau::identity(int num_qubits) {
    CliffordTableau t;
    t.num_qubits_ = num_qubits;
    for (int q = 0; q < num_qubits; q++) {
        t.images_[2 * q] = generator(num_qubits, q, false);
        t.images_[2 * q + 1] = generator(num_qubits, q, true);
    }
    return t;
}

CliffordTableau CliffordTableau::from_unitary(const Eigen::MatrixXcd &u) {
    CliffordTableau t;
    t.num_qubits_ = qubits_for_dim(static_cast<int>(u.rows()));
    for (int q = 0; q < t.num_qubits_; q++) {
        for (int z = 0; z < 2; z++) {
            auto img = signed_pauli_image(u, generator(t.num_qubits_, q, z == 1));
            if (!img) {
                throw UnsupportedCombination("gate is not a Clifford operation");
            }
            t.images_[2 * q + z] = *img;
        }
    }
    return t;
}

CliffordTableau CliffordTableau::from_pauli(const PauliString &p) {
    CliffordTableau t = identity(p.num_qubits());
    for (auto &img : t.images_) {
        if (img.num_qubits() != 0 && !img.commutes_with(p)) {
            img = img.negated();
        }
    }
    return t;
}

bool CliffordTableau::is_clifford(const Eigen::MatrixXcd &u) {
    int n = qubits_for_dim(static_cast<int>(u.rows()));
    for (int q = 0; q < n; q++) {
        for (int z = 0; z < 2; z++) {
            if (!signed_pauli_image(u, generator(n, q, z == 1))) {
                return false;
            }
        }
    }
    return true;
}

PauliString CliffordTableau::conjugate(const PauliString &p) const {
    if (p.num_qubits() != num_qubits_) {
        throw InvalidInput("tableau/Pauli qubit-count mismatch");
    }
    PauliString out(num_qubits_, 0, 0, p.phase());
    const PauliString i_phase(num_qubits_, 0, 0, 1);
    for (int q = 0; q < num_qubits_; q++) {
        switch (p.qubit(q)) {
            case Pauli1::I:
                break;
            case Pauli1::X:
                out = out * x_image(q);
                break;
            case Pauli1::Z:
                out = out * z_image(q);
                break;
            case Pauli1::Y:
                out = out * i_phase * x_image(q) * z_image(q);
                break;
        }
    }
    return out;
}

CliffordTableau CliffordTableau::then(const CliffordTableau &next) const {
    if (next.num_qubits_ != num_qubits_) {
        throw InvalidInput("tableau composition qubit-count mismatch");
    }
    CliffordTableau t;
    t.num_qubits_ = num_qubits_;
    for (int k = 0; k < 2 * num_qubits_; k++) {
        t.images_[k] = next.conjugate(images_[k]);
    }
    return t;
}

CliffordTableau CliffordTableau::inverse() const {
    CliffordTableau t;
    t.num_qubits_ = num_qubits_;
    int n = 1 << (2 * num_qubits_);
    for (int q = 0; q < num_qubits_; q++) {
        for (int z = 0; z < 2; z++) {
            PauliString target = generator(num_qubits_, q, z == 1);
            for (int k = 1; k < n; k++) {
                PauliString candidate = PauliString::from_index(k, num_qubits_);
                PauliString img = conjugate(candidate);
                if (img.unsigned_part() == target) {
                    t.images_[2 * q + z] = img.sign() > 0 ? candidate : candidate.negated();
                    break;
                }
            }
        }
    }
    return t;
}

Eigen::MatrixXi CliffordTableau::symplectic_matrix() const {
    int n = num_qubits_;
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(2 * n, 2 * n);
    for (int q = 0; q < n; q++) {
        for (int z = 0; z < 2; z++) {
            const PauliString &img = images_[2 * q + z];
            int col = z * n + q;
            for (int r = 0; r < n; r++) {
                m(r, col) = (img.xs() >> r) & 1;
                m(n + r, col) = (img.zs() >> r) & 1;
            }
        }
    }
    return m;
}

bool CliffordTableau::preserves_symplectic_form() const {
    int n = num_qubits_;
    Eigen::MatrixXi omega = Eigen::MatrixXi::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXi::Identity(n, n);
    omega.bottomLeftCorner(n, n) = Eigen::MatrixXi::Identity(n, n);
    Eigen::MatrixXi m = symplectic_matrix();
    Eigen::MatrixXi lhs = m.transpose() * omega * m;
    for (Eigen::Index r = 0; r < lhs.rows(); r++) {
        for (Eigen::Index c = 0; c < lhs.cols(); c++) {
            if ((lhs(r, c) & 1) != omega(r, c)) {
                return false;
            }
        }
    }
    return true;
}

uint32_t CliffordTableau::key() const {
    uint32_t k = static_cast<uint32_t>(num_qubits_);
    for (int i = 0; i < 2 * num_qubits_; i++) {
        const PauliString &img = images_[i];
        uint32_t bits = static_cast<uint32_t>(img.xs()) | (static_cast<uint32_t>(img.zs()) << 2) |
                        (static_cast<uint32_t>(img.phase() == 2) << 4);
        k |= bits << (2 + 5 * i);
    }
    return k;
}

// ---------------------------------------------------------------------------
// Synthesis

Eigen::MatrixXcd PrimitiveGate::matrix(int num_qubits) const {
    if (num_qubits == 1) {
        if (kind != Kind::Single) {
            throw InvalidInput("CNOT in a single-qubit synthesis");
        }
        return u;
    }
    if (kind == Kind::Cnot) {
        return gates::cnot(qubit);
    }
    return gates::embed(u, qubit);
}

const std::vector<Eigen::Matrix2cd> &single_qubit_cliffords() {
    static const std::vector<Eigen::Matrix2cd> group = [] {
        std::vector<Eigen::Matrix2cd> out;
        std::unordered_map<uint32_t, int> seen;
        std::deque<Eigen::Matrix2cd> frontier{Eigen::Matrix2cd::Identity()};
        const std::array<Eigen::Matrix2cd, 2> gens{gates::hadamard(), gates::phase_s()};
        while (!frontier.empty()) {
            Eigen::Matrix2cd u = frontier.front();
            frontier.pop_front();
            uint32_t key = CliffordTableau::from_unitary(u).key();
            if (seen.count(key)) {
                continue;
            }
            seen[key] = static_cast<int>(out.size());
            out.push_back(u);
            for (const auto &g : gens) {
                frontier.push_back(g * u);
            }
        }
        return out;
    }();
    return group;
}

int single_qubit_clifford_index(const CliffordTableau &t) {
    static const std::unordered_map<uint32_t, int> index = [] {
        std::unordered_map<uint32_t, int> m;
        const auto &group = single_qubit_cliffords();
        for (int k = 0; k < static_cast<int>(group.size()); k++) {
            m[CliffordTableau::from_unitary(group[k]).key()] = k;
        }
        return m;
    }();
    auto it = index.find(t.key());
    if (it == index.end()) {
        throw InvalidInput("not a single-qubit Clifford tableau");
    }
    return it->second;
}

namespace {

Eigen::Matrix2cd s1_element(int k) {
    Eigen::Matrix2cd w = gates::phase_s() * gates::hadamard();
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
    for (int i = 0; i < k; i++) {
        out = w * out;
    }
    return out;
}

PrimitiveGate single(int qubit, const Eigen::Matrix2cd &u) {
    return PrimitiveGate{PrimitiveGate::Kind::Single, qubit, u};
}

PrimitiveGate cnot_gate(int control) {
    return PrimitiveGate{PrimitiveGate::Kind::Cnot, control, Eigen::Matrix2cd::Identity()};
}

std::vector<PrimitiveGate> two_qubit_synthesis(int index) {
    if (index < 0 || index >= CliffordElement::kTwoQubitOrder) {
        throw InvalidInput("two-qubit Clifford index out of range");
    }
    const auto &c1 = single_qubit_cliffords();
    constexpr int kLocal = 576;
    constexpr int kOneCnot = kLocal * 9;
    std::vector<PrimitiveGate> ops;
    int local = 0;
    if (index < kLocal) {
        local = index;
    } else if (index < kLocal + kOneCnot) {
        int r = index - kLocal;
        local = r / 9;
        ops.push_back(single(0, s1_element((r % 9) / 3)));
        ops.push_back(single(1, s1_element(r % 3)));
        ops.push_back(cnot_gate(0));
    } else if (index < kLocal + 2 * kOneCnot) {
        int r = index - kLocal - kOneCnot;
        local = r / 9;
        ops.push_back(single(0, s1_element((r % 9) / 3)));
        ops.push_back(single(1, s1_element(r % 3)));
        ops.push_back(cnot_gate(0));
        ops.push_back(single(1, gates::ry(std::numbers::pi / 2)));
        ops.push_back(single(0, gates::rx(-std::numbers::pi / 2)));
        ops.push_back(cnot_gate(0));
    } else {
        local = index - kLocal - 2 * kOneCnot;
        ops.push_back(cnot_gate(0));
        ops.push_back(cnot_gate(1));
        ops.push_back(cnot_gate(0));
    }
    ops.push_back(single(0, c1[local / 24]));
    ops.push_back(single(1, c1[local % 24]));
    return ops;
}

Eigen::MatrixXcd product(const std::vector<PrimitiveGate> &ops, int num_qubits) {
    int d = 1 << num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    for (const auto &op : ops) {
        u = op.matrix(num_qubits) * u;
    }
    return u;
}

}  // namespace

CliffordElement::CliffordElement(int num_qubits, int index, std::vector<PrimitiveGate> synthesis)
    : num_qubits_(num_qubits),
      index_(index),
      synthesis_(std::move(synthesis)),
      unitary_(UnitaryMatrix::unchecked(product(synthesis_, num_qubits))),
      tableau_(CliffordTableau::from_unitary(unitary_.matrix())) {
}

CliffordElement CliffordElement::single_qubit(int index) {
    if (index < 0 || index >= kSingleQubitOrder) {
        throw InvalidInput("single-qubit Clifford index out of range");
    }
    return CliffordElement(1, index, {single(0, single_qubit_cliffords()[index])});
}

CliffordElement CliffordElement::two_qubit(int index) {
    return CliffordElement(2, index, two_qubit_synthesis(index));
}

CliffordElement CliffordElement::from_tableau(const CliffordTableau &t) {
    if (t.num_qubits() == 1) {
        return single_qubit(single_qubit_clifford_index(t));
    }
    static std::once_flag once;
    static std::unordered_map<uint32_t, int> lookup;
    std::call_once(once, [] {
        lookup.reserve(kTwoQubitOrder);
        for (int k = 0; k < kTwoQubitOrder; k++) {
            lookup.emplace(CliffordTableau::from_unitary(product(two_qubit_synthesis(k), 2)).key(), k);
        }
    });
    auto it = lookup.find(t.key());
    if (it == lookup.end()) {
        throw InvalidInput("tableau is not in the two-qubit Clifford normal form table");
    }
    return two_qubit(it->second);
}

int CliffordElement::group_order(int num_qubits) {
    if (num_qubits != 1 && num_qubits != 2) {
        throw InvalidInput("only one- and two-qubit Clifford groups are supported");
    }
    return num_qubits == 1 ? kSingleQubitOrder : kTwoQubitOrder;
}

int CliffordElement::cnot_count() const {
    int n = 0;
    for (const auto &op : synthesis_) {
        n += op.kind == PrimitiveGate::Kind::Cnot;
    }
    return n;
}

}  // namespace ibench
