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


// Randomized circuits for the reference and interleaved protocols of every
// twirling group, plus purity-decay (XRB) sequences.

#ifndef IBENCH_PROTOCOLS_H
#define IBENCH_PROTOCOLS_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ibench/channels.h"
#include "ibench/groups.h"
#include "ibench/pauli.h"

namespace ibench {

enum class ProtocolKind { Benchmark, Xrb };

struct ProtocolSpec {
    TwirlGroupKind group = TwirlGroupKind::Clifford2;
    ProtocolKind kind = ProtocolKind::Benchmark;
    /// Absent for the reference protocol.
    std::optional<UnitaryMatrix> interleaved;
    std::string interleaved_name;
    std::vector<int> depths;
    /// Total number of single-shot randomizations over all depths.
    int shots = 1500;
    uint64_t seed = 0;

    bool is_interleaved() const {
        return interleaved.has_value();
    }
    /// e.g. "clifford(G)", "pauli(I)", "xrb".
    std::string name() const;
    /// Throws InvalidInput on empty or non-increasing depths, bad shot counts, or
    /// UnsupportedCombination for invalid group / gate pairings.
    void validate() const;
};

/// Depths used when a configuration does not list them.
std::vector<int> default_depths(TwirlGroupKind group, bool interleaved);

/// The 15 non-identity two-qubit Paulis prepared and measured by the Pauli protocol.
const std::vector<PauliString> &pauli_protocol_labels();

enum class StepRole { Twirl, Interleaved, Correction };

struct CircuitStep {
    StepRole role = StepRole::Twirl;
    UnitaryMatrix ideal = UnitaryMatrix::identity(4);
    /// Local steps are realized as two independently compiled single-qubit gates.
    bool local = false;
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd b = Eigen::Matrix2cd::Identity();
    /// Synthesis used in compiled placement; empty means derive from `ideal`.
    std::vector<GateLayer> layers;
    /// Replay description, e.g. "clifford:5123", "local:3,17", "pauli:XY", "haar".
    std::string tag;
};

enum class MeasurementKind {
    /// Probability of returning to |00>.
    Survival,
    /// Per-qubit probability of returning to |0>.
    PerQubitSurvival,
    /// sign * <observable>.
    PauliExpectation,
    /// Sum of squared non-identity Pauli expectations divided by d - 1.
    Tomography,
};

struct CircuitInstance {
    std::string protocol;
    int depth = 0;
    int circuit = 0;
    /// Decay label shared by all circuits of the same input (e.g. "00", "XZ", "purity").
    std::string label;
    Eigen::Matrix4cd initial_state = Eigen::Matrix4cd::Zero();
    std::vector<CircuitStep> steps;
    MeasurementKind measurement = MeasurementKind::Survival;
    /// Measured Pauli (unsigned) for PauliExpectation.
    PauliString observable = PauliString::identity(2);
    int sign = 1;
    double ideal_outcome = 1.0;

    /// Product of ideal step unitaries in application order.
    Eigen::Matrix4cd ideal_unitary() const;
};

/// Builders: one randomized circuit of depth m. `circuit` selects the random stream and,
/// for the Pauli protocol, the prepared Pauli (circuit mod 15).
CircuitInstance build_haar_circuit(const ProtocolSpec &spec, int m, int circuit);
CircuitInstance build_clifford_circuit(const ProtocolSpec &spec, int m, int circuit);
CircuitInstance build_local_clifford_circuit(const ProtocolSpec &spec, int m, int circuit);
CircuitInstance build_pauli_circuit(const ProtocolSpec &spec, int m, int circuit);
CircuitInstance build_xrb_circuit(const ProtocolSpec &spec, int m, int circuit);
/// Dispatches on spec.kind and spec.group.
CircuitInstance build_circuit(const ProtocolSpec &spec, int m, int circuit);

/// (depth, circuit count) pairs; remainders go to the smallest depths.
std::vector<std::pair<int, int>> schedule(const ProtocolSpec &spec);

/// Pure +1 eigenstate of p, with |0> on qubits where p acts trivially.
Eigen::Matrix4cd pauli_eigenstate(const PauliString &p);

}  // namespace ibench

#endif
