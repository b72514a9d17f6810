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


#include "ibench/noise.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ibench/errors.h"
#include "ibench/gates.h"

namespace ibench {

namespace {

double effective_angle(const ErrorModel &model, double theta) {
    return model.angle_convention == AngleConvention::Half ? theta / 2 : theta;
}

void check_cptp(const PauliTransferMatrix &ptm, int dim, const char *what) {
    if (ptm.dim() != dim) {
        throw InvalidInput(std::string("custom error '") + what + "' has the wrong dimension");
    }
    if (!ptm.is_trace_preserving(1e-9) || ptm_to_choi(ptm).min_eigenvalue() < -1e-10) {
        throw InvalidInput(std::string("custom error '") + what + "' is not CPTP");
    }
}

Channel custom_or_identity(const std::optional<PauliTransferMatrix> &ptm, int dim) {
    return ptm ? Channel::general(*ptm) : Channel::identity(dim);
}

}  // namespace

ErrorModel ErrorModel::noiseless() {
    ErrorModel m;
    m.kind = CustomErrors{};
    return m;
}

void ErrorModel::validate() const {
    if (!(readout_flip >= 0 && readout_flip <= 0.5)) {
        throw InvalidInput("readout_flip must lie in [0, 0.5]");
    }
    std::visit(
        [&](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, FixedCoherent>) {
                if (!std::isfinite(k.theta1) || !std::isfinite(k.theta2)) {
                    throw InvalidInput("error angles must be finite");
                }
                if (k.two_qubit_generator.num_qubits() != 2 || k.single_qubit_generator.num_qubits() != 1) {
                    throw InvalidInput("generator qubit counts must be 2 and 1");
                }
            } else if constexpr (std::is_same_v<T, Overrotation>) {
                if (!std::isfinite(k.delta1) || !std::isfinite(k.delta2)) {
                    throw InvalidInput("overrotation fractions must be finite");
                }
            } else if constexpr (std::is_same_v<T, Adversarial>) {
                if (!std::isfinite(k.interleaved_theta) || !std::isfinite(k.twirl_theta)) {
                    throw InvalidInput("error angles must be finite");
                }
                if (k.interleaved_generator.num_qubits() != 2 || k.twirl_generator.num_qubits() != 2) {
                    throw InvalidInput("adversarial generators must be two-qubit Paulis");
                }
                if (placement == ErrorPlacement::Compiled) {
                    throw UnsupportedCombination("the adversarial model is defined per group element only");
                }
            } else {
                if (k.one_qubit_pulse) {
                    check_cptp(*k.one_qubit_pulse, 2, "one_qubit_pulse");
                }
                if (k.two_qubit) {
                    check_cptp(*k.two_qubit, 4, "two_qubit");
                }
                if (k.interleaved) {
                    check_cptp(*k.interleaved, 4, "interleaved");
                }
            }
        },
        kind);
}

std::string ErrorModel::name() const {
    switch (kind.index()) {
        case 0:
            return "fixed_coherent";
        case 1:
            return "overrotation";
        case 2:
            return "adversarial";
        default:
            return "custom";
    }
}

std::string to_string(AngleConvention c) {
    return c == AngleConvention::Full ? "full" : "half";
}

std::string to_string(ErrorPlacement p) {
    return p == ErrorPlacement::Monolithic ? "monolithic" : "compiled";
}

Channel NoisyGate::noisy() const {
    return compose(error, Channel::unitary(ideal));
}

UnitaryMatrix fractional_power(const UnitaryMatrix &u, double t, bool *branch_cut) {
    // Unitaries are normal, so the complex Schur form is diagonal.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.matrix());
    const Eigen::MatrixXcd &q = schur.matrixU();
    const Eigen::MatrixXcd &tri = schur.matrixT();
    int d = u.dim();
    Eigen::VectorXcd phases(d);
    bool cut = false;
    for (int k = 0; k < d; k++) {
        double phi = std::arg(tri(k, k));
        if (std::abs(std::abs(phi) - std::numbers::pi) < 1e-9) {
            phi = std::numbers::pi;
            cut = true;
        }
        phases(k) = std::polar(1.0, t * phi);
    }
    if (branch_cut != nullptr) {
        *branch_cut = cut;
    }
    return UnitaryMatrix::unchecked(q * phases.asDiagonal() * q.adjoint());
}

NoisyGate apply_error_model(const ErrorModel &model, const UnitaryMatrix &gate, GateClass cls) {
    int want = cls == GateClass::OneQubitPulse ? 2 : 4;
    if (gate.dim() != want) {
        throw InvalidInput("apply_error_model: gate dimension does not match its class");
    }
    bool cut = false;
    Channel error = std::visit(
        [&](const auto &k) -> Channel {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, FixedCoherent>) {
                if (cls == GateClass::OneQubitPulse) {
                    return Channel::unitary(exp_pauli(k.single_qubit_generator, effective_angle(model, k.theta1)));
                }
                return Channel::unitary(exp_pauli(k.two_qubit_generator, effective_angle(model, k.theta2)));
            } else if constexpr (std::is_same_v<T, Overrotation>) {
                double delta = cls == GateClass::OneQubitPulse ? k.delta1 : k.delta2;
                return Channel::unitary(fractional_power(gate, delta, &cut));
            } else if constexpr (std::is_same_v<T, Adversarial>) {
                switch (cls) {
                    case GateClass::OneQubitPulse:
                        return Channel::identity(2);
                    case GateClass::TwoQubit:
                        return Channel::unitary(exp_pauli(k.twirl_generator, effective_angle(model, k.twirl_theta)));
                    case GateClass::Interleaved:
                        return Channel::unitary(
                            exp_pauli(k.interleaved_generator, effective_angle(model, k.interleaved_theta)));
                }
                return Channel::identity(want);
            } else {
                switch (cls) {
                    case GateClass::OneQubitPulse:
                        return custom_or_identity(k.one_qubit_pulse, 2);
                    case GateClass::TwoQubit:
                        return custom_or_identity(k.two_qubit, 4);
                    case GateClass::Interleaved:
                        return custom_or_identity(k.interleaved ? k.interleaved : k.two_qubit, 4);
                }
                return Channel::identity(want);
            }
        },
        model.kind);
    return NoisyGate{gate, std::move(error), cut};
}

PauliTransferMatrix single_pulse_error(const ErrorModel &model) {
    return apply_error_model(model, UnitaryMatrix(x_half_pulse()), GateClass::OneQubitPulse).error.ptm();
}

Channel noisy_single_qubit_gate(const ErrorModel &model, const Eigen::Matrix2cd &u) {
    CompiledSingleQubitGate g = compile_single_qubit(u);
    Channel pulse = apply_error_model(model, UnitaryMatrix::unchecked(x_half_pulse()), GateClass::OneQubitPulse).noisy();
    if (pulse.is_unitary()) {
        return Channel::unitary(UnitaryMatrix::unchecked(g.reconstruct(pulse.as_unitary().matrix())));
    }
    auto z = [](double angle) { return Channel::unitary(UnitaryMatrix::unchecked(gates::rz(angle))); };
    Channel out = z(g.phi);
    out = compose(pulse, out);
    out = compose(z(g.omega), out);
    out = compose(pulse, out);
    return compose(z(g.theta), out);
}

Channel noisy_local_layer(const ErrorModel &model, const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    return tensor(noisy_single_qubit_gate(model, a), noisy_single_qubit_gate(model, b));
}

std::vector<GateLayer> default_layers(const Eigen::Matrix4cd &u) {
    for (int control = 0; control < 2; control++) {
        if (equal_up_to_phase(u, gates::cnot(control), 1e-9)) {
            GateLayer layer;
            layer.kind = GateLayer::Kind::Cnot;
            layer.control = control;
            return {layer};
        }
    }
    if (auto ab = factor_local(u)) {
        return {GateLayer{GateLayer::Kind::Local, ab->first, ab->second, 0}};
    }
    if (CliffordTableau::is_clifford(u)) {
        return clifford_layers(CliffordElement::from_tableau(CliffordTableau::from_unitary(u)));
    }
    return synthesize_two_qubit(u);
}

Channel noisy_two_qubit_gate(const ErrorModel &model, const UnitaryMatrix &u, GateClass cls,
                             const std::vector<GateLayer> *layers) {
    if (cls == GateClass::OneQubitPulse || u.dim() != 4) {
        throw InvalidInput("noisy_two_qubit_gate: expected a two-qubit gate");
    }
    if (model.placement == ErrorPlacement::Monolithic) {
        return apply_error_model(model, u, cls).noisy();
    }
    if (std::holds_alternative<Adversarial>(model.kind)) {
        throw UnsupportedCombination("the adversarial model is defined per group element only");
    }
    std::vector<GateLayer> derived;
    if (layers == nullptr) {
        derived = default_layers(u.matrix());
        layers = &derived;
    }
    Channel out = Channel::identity(4);
    for (const auto &layer : *layers) {
        if (layer.kind == GateLayer::Kind::Local) {
            out = compose(noisy_local_layer(model, layer.a, layer.b), out);
        } else {
            UnitaryMatrix cnot = UnitaryMatrix::unchecked(gates::cnot(layer.control));
            out = compose(apply_error_model(model, cnot, cls).noisy(), out);
        }
    }
    return out;
}

PauliTransferMatrix interleaved_error_ptm(const ErrorModel &model, const UnitaryMatrix &gate) {
    PauliTransferMatrix noisy = noisy_two_qubit_gate(model, gate, GateClass::Interleaved).ptm();
    return compose(noisy, PauliTransferMatrix::from_unitary(gate).transpose());
}

double theoretical_infidelity(const ErrorModel &model, const UnitaryMatrix &gate) {
    return process_infidelity(interleaved_error_ptm(model, gate));
}

}  // namespace ibench
