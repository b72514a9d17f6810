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


#include "ibench/groups.h"

#include <cmath>
#include <numbers>

#include "ibench/errors.h"
#include "ibench/gates.h"

namespace ibench {

namespace {

constexpr double kPi = std::numbers::pi;

const Eigen::Matrix4cd &magic_basis() {
    static const Eigen::Matrix4cd m = [] {
        const cdouble i(0, 1);
        Eigen::Matrix4cd b;
        b << 1, 0, 0, i, 0, i, 1, 0, 0, i, -1, 0, 1, 0, 0, -i;
        return Eigen::Matrix4cd(b / std::sqrt(2.0));
    }();
    return m;
}

/// Splits a 4x4 product operator into a (x) b; both factors come out unitary.
std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> split_local(const Eigen::Matrix4cd &k) {
    int best_r = 0;
    int best_c = 0;
    double best = -1;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            double n = k.block<2, 2>(2 * r, 2 * c).norm();
            if (n > best) {
                best = n;
                best_r = r;
                best_c = c;
            }
        }
    }
    Eigen::Matrix2cd b = k.block<2, 2>(2 * best_r, 2 * best_c);
    b /= std::sqrt(b.determinant());
    Eigen::Matrix2cd a;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            a(r, c) = (k.block<2, 2>(2 * r, 2 * c) * b.adjoint()).trace() / 2.0;
        }
    }
    return {a, b};
}

Eigen::Matrix4cd interaction(const std::array<double, 3> &c) {
    static const Eigen::Matrix4cd m = magic_basis();
    // XX, YY and ZZ are simultaneously diagonal in the magic basis.
    static const std::array<Eigen::Vector4d, 3> diag = [] {
        std::array<Eigen::Vector4d, 3> out;
        const char *labels[3] = {"XX", "YY", "ZZ"};
        for (int j = 0; j < 3; j++) {
            Eigen::Matrix4cd d = m.adjoint() * PauliString::from_str(labels[j]).matrix() * m;
            out[j] = d.diagonal().real();
        }
        return out;
    }();
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; k++) {
        phases(k) = std::polar(1.0, c[0] * diag[0](k) + c[1] * diag[1](k) + c[2] * diag[2](k));
    }
    return m * phases.asDiagonal() * m.adjoint();
}

/// Three-CNOT circuit realizing L . exp(i (c0 XX + c1 YY + c2 ZZ)) . (I (x) Rz(-pi/2)).
std::vector<GateLayer> three_cnot_core(const std::array<double, 3> &c) {
    double t1 = kPi / 2 - 2 * c[2];
    double t2 = kPi / 2 - 2 * c[0];
    double t3 = kPi / 2 + 2 * c[1];
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    return {
        GateLayer{GateLayer::Kind::Cnot, id, id, 1},
        GateLayer{GateLayer::Kind::Local, gates::rz(t1), gates::ry(t2), 0},
        GateLayer{GateLayer::Kind::Cnot, id, id, 0},
        GateLayer{GateLayer::Kind::Local, id, gates::ry(t3), 0},
        GateLayer{GateLayer::Kind::Cnot, id, id, 1},
    };
}

}  // namespace

std::string to_string(TwirlGroupKind kind) {
    switch (kind) {
        case TwirlGroupKind::Haar:
            return "haar";
        case TwirlGroupKind::Clifford2:
            return "clifford";
        case TwirlGroupKind::LocalClifford:
            return "local_clifford";
        case TwirlGroupKind::Pauli:
            return "pauli";
    }
    return "?";
}

TwirlGroupKind twirl_group_from_string(std::string_view name) {
    for (auto kind : kAllGroups) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InvalidInput("unknown twirl group '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Single-qubit compilation

Eigen::Matrix2cd x_half_pulse() {
    return gates::rx(kPi / 2);
}

Eigen::Matrix2cd CompiledSingleQubitGate::reconstruct(const Eigen::Matrix2cd &pulse) const {
    return gates::rz(theta) * pulse * gates::rz(omega) * pulse * gates::rz(phi);
}

Eigen::Matrix2cd CompiledSingleQubitGate::reconstruct() const {
    return reconstruct(x_half_pulse());
}

CompiledSingleQubitGate compile_single_qubit(const Eigen::Matrix2cd &u) {
    if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
        throw InvalidInput("compile_single_qubit: gate is not unitary");
    }
    Eigen::Matrix2cd v = u / std::sqrt(u.determinant());
    // v = Rz(alpha) Ry(beta) Rz(gamma).
    cdouble a = v(0, 0);
    cdouble b = v(1, 0);
    double beta = 2 * std::atan2(std::abs(b), std::abs(a));
    double sum = std::abs(a) > 1e-12 ? -2 * std::arg(a) : 0.0;
    double diff = std::abs(b) > 1e-12 ? 2 * std::arg(b) : 0.0;
    double alpha = (sum + diff) / 2;
    double gamma = (sum - diff) / 2;
    // X(pi/2) Rz(beta + pi) X(pi/2) equals Rz(-pi) Ry(beta) up to phase.
    CompiledSingleQubitGate g;
    g.phi = gamma;
    g.omega = beta + kPi;
    g.theta = alpha + kPi;
    return g;
}

// ---------------------------------------------------------------------------
// KAK

std::optional<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> factor_local(const Eigen::Matrix4cd &u) {
    auto ab = split_local(u);
    if ((gates::local(ab.first, ab.second) - u).cwiseAbs().maxCoeff() > 1e-9) {
        return std::nullopt;
    }
    return ab;
}

Eigen::Matrix4cd KakDecomposition::reconstruct() const {
    return phase * gates::local(a1, b1) * interaction(c) * gates::local(a0, b0);
}

KakDecomposition kak_decompose(const Eigen::Matrix4cd &u) {
    if ((u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
        throw InvalidInput("kak_decompose: gate is not unitary");
    }
    const Eigen::Matrix4cd &m = magic_basis();
    cdouble det_root = std::pow(u.determinant(), 0.25);
    Eigen::Matrix4cd v = u / det_root;
    Eigen::Matrix4cd up = m.adjoint() * v * m;
    Eigen::Matrix4cd w = up.transpose() * up;

    // Re(w) and Im(w) commute; diagonalize a generic real combination of them.
    Eigen::Matrix4d p;
    bool found = false;
    for (double k : {0.6180339887, 1.4142135623, -0.318309886, 2.7182818284, 0.1234567}) {
        Eigen::Matrix4d a = w.real() + k * w.imag();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(a);
        p = es.eigenvectors();
        Eigen::Matrix4cd d = p.transpose() * w * p;
        Eigen::Matrix4cd off = d;
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() < 1e-9) {
            found = true;
            break;
        }
    }
    if (!found) {
        throw SimulationIntegrity("kak_decompose: simultaneous diagonalization failed");
    }
    if (p.determinant() < 0) {
        p.col(0) = -p.col(0);
    }
    Eigen::Vector4cd d = (p.transpose() * w * p).diagonal();
    for (int k = 0; k < 4; k++) {
        d(k) = std::sqrt(d(k));
    }
    Eigen::Matrix4cd o1 = up * p * d.cwiseInverse().asDiagonal();
    if (o1.real().determinant() < 0) {
        d(0) = -d(0);
        o1.col(0) = -o1.col(0);
    }
    Eigen::Matrix4cd k1 = m * Eigen::Matrix4cd(o1.real().cast<cdouble>()) * m.adjoint();
    Eigen::Matrix4cd k2 = m * Eigen::Matrix4cd(p.transpose().cast<cdouble>()) * m.adjoint();

    // arg d_k = g + sum_j c_j diag_j(k); solve the 4x4 sign system.
    Eigen::Matrix4d sys;
    const char *labels[3] = {"XX", "YY", "ZZ"};
    for (int j = 0; j < 3; j++) {
        Eigen::Matrix4cd dj = m.adjoint() * PauliString::from_str(labels[j]).matrix() * m;
        sys.col(j) = dj.diagonal().real();
    }
    sys.col(3).setOnes();
    Eigen::Vector4d args;
    for (int k = 0; k < 4; k++) {
        args(k) = std::arg(d(k));
    }
    Eigen::Vector4d sol = sys.partialPivLu().solve(args);

    KakDecomposition out;
    std::tie(out.a1, out.b1) = split_local(k1);
    std::tie(out.a0, out.b0) = split_local(k2);
    out.c = {sol(0), sol(1), sol(2)};
    Eigen::Matrix4cd bare = gates::local(out.a1, out.b1) * interaction(out.c) * gates::local(out.a0, out.b0);
    out.phase = (bare.adjoint() * u).trace() / 4.0;
    out.phase /= std::abs(out.phase);
    if ((out.reconstruct() - u).cwiseAbs().maxCoeff() > 1e-8) {
        throw SimulationIntegrity("kak_decompose: reconstruction mismatch");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Two-qubit circuits

Eigen::Matrix4cd GateLayer::matrix() const {
    return kind == Kind::Cnot ? gates::cnot(control) : gates::local(a, b);
}

Eigen::Matrix4cd layers_product(const std::vector<GateLayer> &layers) {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (const auto &layer : layers) {
        u = layer.matrix() * u;
    }
    return u;
}

std::vector<GateLayer> synthesize_two_qubit(const Eigen::Matrix4cd &u) {
    static const std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> frame = [] {
        Eigen::Matrix4cd r = gates::local(Eigen::Matrix2cd::Identity(), gates::rz(-kPi / 2));
        Eigen::Matrix4cd l = layers_product(three_cnot_core({0, 0, 0})) * r.adjoint();
        return split_local(l);
    }();
    KakDecomposition kak = kak_decompose(u);
    std::vector<GateLayer> out;
    out.push_back(GateLayer{GateLayer::Kind::Local, kak.a0, gates::rz(kPi / 2) * kak.b0, 0});
    for (const auto &layer : three_cnot_core(kak.c)) {
        out.push_back(layer);
    }
    out.push_back(GateLayer{GateLayer::Kind::Local, kak.a1 * frame.first.adjoint(),
                            kak.b1 * frame.second.adjoint(), 0});
    if (!equal_up_to_phase(layers_product(out), u, 1e-8)) {
        throw SimulationIntegrity("synthesize_two_qubit: circuit does not reproduce the target");
    }
    return out;
}

std::vector<GateLayer> clifford_layers(const CliffordElement &c) {
    if (c.num_qubits() != 2) {
        throw InvalidInput("clifford_layers: expected a two-qubit Clifford");
    }
    std::vector<GateLayer> out;
    GateLayer pending;
    bool has_pending = false;
    for (const auto &op : c.synthesis()) {
        if (op.kind == PrimitiveGate::Kind::Cnot) {
            if (has_pending) {
                out.push_back(pending);
                pending = GateLayer{};
                has_pending = false;
            }
            out.push_back(GateLayer{GateLayer::Kind::Cnot, Eigen::Matrix2cd::Identity(),
                                    Eigen::Matrix2cd::Identity(), op.qubit});
        } else {
            Eigen::Matrix2cd &target = op.qubit == 0 ? pending.a : pending.b;
            target = op.u * target;
            has_pending = true;
        }
    }
    if (has_pending) {
        out.push_back(pending);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Samplers

UnitaryMatrix sample_haar_su4(RandomStream &rng) {
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            g(r, c) = cdouble(rng.normal(), rng.normal()) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    Eigen::Matrix4cd q = qr.householderQ();
    Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < 4; k++) {
        cdouble d = r(k, k);
        q.col(k) *= d / std::abs(d);
    }
    q /= std::pow(q.determinant(), 0.25);
    return UnitaryMatrix(q);
}

CliffordElement sample_clifford2(RandomStream &rng) {
    return CliffordElement::two_qubit(rng.uniform_int(CliffordElement::kTwoQubitOrder));
}

std::pair<CliffordElement, CliffordElement> sample_local_clifford(RandomStream &rng) {
    int a = rng.uniform_int(CliffordElement::kSingleQubitOrder);
    int b = rng.uniform_int(CliffordElement::kSingleQubitOrder);
    return {CliffordElement::single_qubit(a), CliffordElement::single_qubit(b)};
}

std::pair<Pauli1, Pauli1> sample_pauli_layer(RandomStream &rng) {
    int a = rng.uniform_int(4);
    int b = rng.uniform_int(4);
    return {static_cast<Pauli1>(a), static_cast<Pauli1>(b)};
}

UnitaryMatrix invert_sequence(const std::vector<UnitaryMatrix> &ideal_gates) {
    if (ideal_gates.empty()) {
        throw InvalidInput("invert_sequence: empty sequence");
    }
    int d = ideal_gates.front().dim();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    for (const auto &g : ideal_gates) {
        if (g.dim() != d) {
            throw InvalidInput("invert_sequence: mixed dimensions");
        }
        u = g.matrix() * u;
    }
    return UnitaryMatrix::unchecked(u.adjoint());
}

}  // namespace ibench
