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

// Standard gate matrices. Rotations follow R_P(t) = exp(-i t P / 2).

#ifndef IBENCH_GATES_H
#define IBENCH_GATES_H

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace ibench::gates {

inline Eigen::Matrix2cd rx(double t) {
    Eigen::Matrix2cd m;
    const std::complex<double> s(0, -std::sin(t / 2));
    m << std::cos(t / 2), s, s, std::cos(t / 2);
    return m;
}

inline Eigen::Matrix2cd ry(double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
}

inline Eigen::Matrix2cd rz(double t) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2);
    return m;
}

inline Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

inline Eigen::Matrix2cd phase_s() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, std::complex<double>(0, 1);
    return m;
}

/// CNOT with the given control qubit (0 or 1); qubit 0 is the most significant factor.
inline Eigen::Matrix4cd cnot(int control = 0) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    if (control == 0) {
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else {
        m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1;
    }
    return m;
}

inline Eigen::Matrix4cd swap() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    return m;
}

/// Single-qubit gate u acting on `qubit` of a two-qubit register.
inline Eigen::Matrix4cd embed(const Eigen::Matrix2cd &u, int qubit) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd &a = qubit == 0 ? u : id;
    const Eigen::Matrix2cd &b = qubit == 0 ? id : u;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
        }
    }
    return m;
}

inline Eigen::Matrix4cd local(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd m;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
        }
    }
    return m;
}

}  // namespace ibench::gates

#endif
