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


// Error models and their attachment to ideal gates.
//
// Every noisy operation is error-after-ideal: noisy = E o U. Single-qubit gates
// are always realized as Z X(pi/2) Z X(pi/2) Z with errors on the two X(pi/2)
// pulses only. Two-qubit gates either carry one error per group element
// (monolithic) or are synthesized into CNOTs and pulses that carry errors
// individually (compiled).

#ifndef IBENCH_NOISE_H
#define IBENCH_NOISE_H

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ibench/channels.h"
#include "ibench/groups.h"
#include "ibench/pauli.h"

namespace ibench {

/// How a generator angle theta enters a coherent error: exp(i theta G) or exp(i theta G / 2).
enum class AngleConvention { Full, Half };
enum class ErrorPlacement { Monolithic, Compiled };
enum class GateClass { OneQubitPulse, TwoQubit, Interleaved };

/// exp(i theta2 G2) on two-qubit gates, exp(i theta1 G1) on every X(pi/2) pulse.
struct FixedCoherent {
    PauliString two_qubit_generator = PauliString::from_str("ZZ");
    double theta2 = 0;
    PauliString single_qubit_generator = PauliString::from_str("Z");
    double theta1 = 0;
};

/// Noisy U is U^(1 + delta).
struct Overrotation {
    double delta2 = 0;
    double delta1 = 0;
};

/// Distinct coherent errors on the interleaved gate and on two-qubit twirl gates;
/// single-qubit gates are error free.
struct Adversarial {
    PauliString interleaved_generator = PauliString::from_str("XZ");
    double interleaved_theta = 0;
    PauliString twirl_generator = PauliString::from_str("YY");
    /// The sign selects constructive or destructive interference.
    double twirl_theta = 0;
};

/// Explicit error channels per gate class; absent entries are error free.
/// An absent interleaved entry falls back to the two-qubit entry.
struct CustomErrors {
    std::optional<PauliTransferMatrix> one_qubit_pulse;
    std::optional<PauliTransferMatrix> two_qubit;
    std::optional<PauliTransferMatrix> interleaved;
};

struct ErrorModel {
    std::variant<FixedCoherent, Overrotation, Adversarial, CustomErrors> kind = FixedCoherent{};
    AngleConvention angle_convention = AngleConvention::Full;
    ErrorPlacement placement = ErrorPlacement::Monolithic;
    /// Independent per-qubit readout bit-flip probability.
    double readout_flip = 0;

    static ErrorModel noiseless();
    /// Throws InvalidInput on non-finite angles, bad probabilities, non-CPTP custom channels
    /// or unsupported placement.
    void validate() const;
    std::string name() const;
};

struct NoisyGate {
    UnitaryMatrix ideal;
    Channel error;
    /// Set when a fractional power hit an eigenvalue at -1.
    bool branch_cut = false;

    /// error o ideal.
    Channel noisy() const;
};

/// U^t with eigenphases taken in (-pi, pi]; eigenphases within 1e-9 of pi are flagged.
UnitaryMatrix fractional_power(const UnitaryMatrix &u, double t, bool *branch_cut = nullptr);

/// Error attached to a gate of the given class.
///
/// For OneQubitPulse the gate must be X(pi/2). Throws InvalidInput on dimension mismatch.
NoisyGate apply_error_model(const ErrorModel &model, const UnitaryMatrix &gate, GateClass cls);

/// The per-pulse error channel (d = 2).
PauliTransferMatrix single_pulse_error(const ErrorModel &model);

/// Noisy realization of an arbitrary single-qubit gate through its two pulses.
Channel noisy_single_qubit_gate(const ErrorModel &model, const Eigen::Matrix2cd &u);
/// Noisy realization of a layer a (x) b.
Channel noisy_local_layer(const ErrorModel &model, const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b);

/// Noisy realization of a two-qubit gate of class TwoQubit or Interleaved.
///
/// `layers` supplies the synthesized circuit in compiled placement; when absent it is
/// derived from `u` (single CNOTs and local gates are kept as one layer).
Channel noisy_two_qubit_gate(const ErrorModel &model, const UnitaryMatrix &u, GateClass cls,
                             const std::vector<GateLayer> *layers = nullptr);

/// Circuit used for `u` in compiled placement when no synthesis is supplied.
std::vector<GateLayer> default_layers(const Eigen::Matrix4cd &u);

/// Error channel of the interleaved gate, noisy o ideal^-1, and its process infidelity.
PauliTransferMatrix interleaved_error_ptm(const ErrorModel &model, const UnitaryMatrix &gate);
double theoretical_infidelity(const ErrorModel &model, const UnitaryMatrix &gate);

std::string to_string(AngleConvention c);
std::string to_string(ErrorPlacement p);

}  // namespace ibench

#endif
