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


// Twirling groups, their samplers, and the gate-level circuits used to
// attach pulse-level noise.

#ifndef IBENCH_GROUPS_H
#define IBENCH_GROUPS_H

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ibench/channels.h"
#include "ibench/clifford.h"
#include "ibench/pauli.h"
#include "ibench/rng.h"

namespace ibench {

/// Ordered by decreasing group size.
enum class TwirlGroupKind { Haar = 0, Clifford2 = 1, LocalClifford = 2, Pauli = 3 };

constexpr std::array<TwirlGroupKind, 4> kAllGroups{
    TwirlGroupKind::Haar, TwirlGroupKind::Clifford2, TwirlGroupKind::LocalClifford, TwirlGroupKind::Pauli};

std::string to_string(TwirlGroupKind kind);
/// Accepts "haar", "clifford", "local_clifford", "pauli". Throws InvalidInput.
TwirlGroupKind twirl_group_from_string(std::string_view name);

/// Z(theta) X(pi/2) Z(omega) X(pi/2) Z(phi), applied right to left.
///
/// Z rotations are virtual; only the two X(pi/2) pulses are physical.
struct CompiledSingleQubitGate {
    static constexpr int kPulses = 2;
    double phi = 0;
    double omega = 0;
    double theta = 0;

    /// Product of the five factors, with `pulse` standing in for each X(pi/2).
    Eigen::Matrix2cd reconstruct(const Eigen::Matrix2cd &pulse) const;
    Eigen::Matrix2cd reconstruct() const;
};

/// The physical pulse X(pi/2) = exp(-i pi X / 4).
Eigen::Matrix2cd x_half_pulse();

/// Throws InvalidInput for non-unitary or non-2x2 input.
CompiledSingleQubitGate compile_single_qubit(const Eigen::Matrix2cd &u);

/// u = phase * (a1 (x) b1) . exp(i (c0 XX + c1 YY + c2 ZZ)) . (a0 (x) b0).
struct KakDecomposition {
    Eigen::Matrix2cd a0, b0, a1, b1;
    std::array<double, 3> c{};
    std::complex<double> phase{1, 0};

    Eigen::Matrix4cd reconstruct() const;
};

/// Factors u = a (x) b with unitary factors when u is a product operator.
std::optional<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> factor_local(const Eigen::Matrix4cd &u);

/// Throws InvalidInput for non-unitary input.
KakDecomposition kak_decompose(const Eigen::Matrix4cd &u);

/// One step of a two-qubit gate circuit: a layer of single-qubit gates or a CNOT.
struct GateLayer {
    enum class Kind { Local, Cnot };
    Kind kind = Kind::Local;
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd b = Eigen::Matrix2cd::Identity();
    int control = 0;

    Eigen::Matrix4cd matrix() const;
};

/// Circuit of CNOTs and local layers (application order) whose product is `u` up to phase.
///
/// Clifford elements reuse their normal-form synthesis; other unitaries use a
/// three-CNOT circuit built from the KAK decomposition.
std::vector<GateLayer> synthesize_two_qubit(const Eigen::Matrix4cd &u);
std::vector<GateLayer> clifford_layers(const CliffordElement &c);
Eigen::Matrix4cd layers_product(const std::vector<GateLayer> &layers);

/// Ginibre matrix, QR, phase-corrected R diagonal, then determinant phase removed.
UnitaryMatrix sample_haar_su4(RandomStream &rng);
CliffordElement sample_clifford2(RandomStream &rng);
std::pair<CliffordElement, CliffordElement> sample_local_clifford(RandomStream &rng);
std::pair<Pauli1, Pauli1> sample_pauli_layer(RandomStream &rng);

/// (G_m ... G_1)^dagger for gates listed in application order. Throws InvalidInput if empty.
UnitaryMatrix invert_sequence(const std::vector<UnitaryMatrix> &ideal_gates);

}  // namespace ibench

#endif
