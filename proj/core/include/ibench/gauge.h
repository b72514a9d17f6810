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


#ifndef IBENCH_GAUGE_H
#define IBENCH_GAUGE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ibench/channels.h"
#include "ibench/groups.h"
#include "ibench/noise.h"

namespace ibench {

/// One member of a benchmarked gate set: ideal and noisy PTMs with an averaging weight.
struct GateSetElement {
    Eigen::MatrixXd ideal;
    Eigen::MatrixXd noisy;
    double weight = 1;
};

struct GateSet {
    std::vector<GateSetElement> elements;
    /// True when the elements enumerate the whole group.
    bool exact = false;
};

struct GateSetOptions {
    /// Sample count for groups that are not enumerated.
    int samples = 10000;
    uint64_t seed = 0;
    /// Enumerate Pauli and local-Clifford layers instead of sampling.
    bool enumerate_small_groups = true;
};

/// Twirl gates of `group` as realized under `model`. With `interleaved` each element is
/// the dressed gate (noisy interleaved o noisy twirl).
GateSet twirl_gate_set(TwirlGroupKind group, const ErrorModel &model, const GateSetOptions &options,
                       const std::optional<UnitaryMatrix> &interleaved = std::nullopt);

struct EdgeChannels {
    PauliTransferMatrix L = PauliTransferMatrix::identity(4);
    PauliTransferMatrix R = PauliTransferMatrix::identity(4);
    int samples = 0;
    bool exact = false;
    /// Smallest Choi eigenvalue over L and R.
    double choi_floor = 0;
};

/// L = E[G4^ G3^ G2^ G1^ (G4 G3 G2 G1)^-1], R = E[(G4 G3 G2 G1)^-1 G4^ G3^ G2^ G1^],
/// each averaged over all 4-tuples drawn from the gate set.
EdgeChannels estimate_edge_channels(const GateSet &set);

struct PolarFactors {
    PauliTransferMatrix unitary_part;
    PauliTransferMatrix decoherent_part;
    UnitaryMatrix unitary;
};

/// Choi -> leading Kraus K0 -> K0 = U P -> (U, U^dagger o channel).
///
/// Throws DomainError when no Choi eigenvalue exceeds 0.5.
PolarFactors channel_polar_decompose(const PauliTransferMatrix &ptm);

enum class GaugeOrigin { UR, ULInverse, Identity };

struct GaugeChoice {
    PauliTransferMatrix S;
    GaugeOrigin origin = GaugeOrigin::UR;
};

GaugeChoice choose_gauge(const EdgeChannels &edges, GaugeOrigin origin);

/// E[Tr(S G^ S^-1 G^-1)] / d^2 over the gate set.
double scg_average_fidelity(const GateSet &set, const GaugeChoice &gauge);

struct ScgOptions {
    /// Samples for the edge-channel average.
    int edge_samples = 10000;
    /// Samples for the fidelity average.
    int fidelity_samples = 10000;
    GaugeOrigin origin = GaugeOrigin::UR;
    uint64_t seed = 0;
};

struct ScgSide {
    EdgeChannels edges;
    double infidelity_ur = 0;
    double infidelity_ul_inverse = 0;
    double infidelity_identity = 0;

    double infidelity(GaugeOrigin origin) const;
};

struct ScgReport {
    TwirlGroupKind group = TwirlGroupKind::Clifford2;
    GaugeOrigin origin = GaugeOrigin::UR;
    ScgSide reference;
    std::optional<ScgSide> dressed;
    /// 1 - f(dressed) / f(reference) in the selected gauge; absent without an interleaved gate.
    std::optional<double> interleaved_infidelity;
    std::optional<double> interleaved_infidelity_alternate;
    int edge_samples = 0;
    int fidelity_samples = 0;
};

/// Self-consistent-gauge infidelities of the twirl set and, when given, the interleaved gate.
ScgReport self_consistent_gauge(TwirlGroupKind group, const ErrorModel &model, const ScgOptions &options,
                                const std::optional<UnitaryMatrix> &interleaved = std::nullopt);

std::string to_string(GaugeOrigin o);
GaugeOrigin gauge_origin_from_string(const std::string &s);

}  // namespace ibench

#endif
