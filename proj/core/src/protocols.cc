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


#include "ibench/protocols.h"

#include <algorithm>

#include "ibench/errors.h"
#include "ibench/gates.h"
#include "ibench/rng.h"

namespace ibench {

namespace {

constexpr int kPauliLabels = 15;

RandomStream circuit_stream(const ProtocolSpec &spec, int m, int circuit) {
    return RandomStream{spec.seed, fnv1a(spec.name()), static_cast<uint64_t>(m), static_cast<uint64_t>(circuit)};
}

CircuitInstance start(const ProtocolSpec &spec, int m, int circuit) {
    CircuitInstance c;
    c.protocol = spec.name();
    c.depth = m;
    c.circuit = circuit;
    c.initial_state = Eigen::Matrix4cd::Zero();
    c.initial_state(0, 0) = 1;
    c.label = "00";
    return c;
}

CircuitStep interleaved_step(const ProtocolSpec &spec) {
    CircuitStep s;
    s.role = StepRole::Interleaved;
    s.ideal = *spec.interleaved;
    s.tag = spec.interleaved_name.empty() ? "interleaved" : spec.interleaved_name;
    return s;
}

CircuitStep clifford_step(const CliffordElement &c, StepRole role) {
    CircuitStep s;
    s.role = role;
    s.ideal = c.unitary();
    s.layers = clifford_layers(c);
    s.tag = "clifford:" + std::to_string(c.index());
    return s;
}

CircuitStep local_step(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b, StepRole role, std::string tag) {
    CircuitStep s;
    s.role = role;
    s.local = true;
    s.a = a;
    s.b = b;
    s.ideal = UnitaryMatrix::unchecked(gates::local(a, b));
    s.tag = std::move(tag);
    return s;
}

CliffordTableau interleaved_tableau(const ProtocolSpec &spec) {
    return CliffordTableau::from_unitary(spec.interleaved->matrix());
}

}  // namespace

std::string ProtocolSpec::name() const {
    if (kind == ProtocolKind::Xrb) {
        return "xrb";
    }
    return to_string(group) + (is_interleaved() ? "(G)" : "(I)");
}

void ProtocolSpec::validate() const {
    if (depths.empty()) {
        throw InvalidInput("depth list is empty");
    }
    for (size_t k = 0; k < depths.size(); k++) {
        if (depths[k] < 1 || (k > 0 && depths[k] <= depths[k - 1])) {
            throw InvalidInput("depths must be positive and strictly increasing");
        }
    }
    if (shots < static_cast<int>(depths.size())) {
        throw InvalidInput("need at least one shot per depth");
    }
    if (kind == ProtocolKind::Xrb) {
        if (group != TwirlGroupKind::Clifford2 || is_interleaved()) {
            throw UnsupportedCombination("purity decay sequences use the reference Clifford protocol");
        }
        return;
    }
    if (group == TwirlGroupKind::Pauli && shots % kPauliLabels != 0) {
        throw InvalidInput("Pauli protocol shots must be divisible by 15");
    }
    if (is_interleaved()) {
        if (interleaved->dim() != 4) {
            throw InvalidInput("interleaved gate must be a two-qubit unitary");
        }
        if (group != TwirlGroupKind::Haar && !CliffordTableau::is_clifford(interleaved->matrix())) {
            throw UnsupportedCombination(to_string(group) +
                                         " protocol requires a Clifford interleaved gate; use the Haar protocol");
        }
    }
}

std::vector<int> default_depths(TwirlGroupKind group, bool interleaved) {
    switch (group) {
        case TwirlGroupKind::Haar:
        case TwirlGroupKind::Clifford2:
            return {4, 6, 8, 12, 14};
        case TwirlGroupKind::LocalClifford:
        case TwirlGroupKind::Pauli:
            return interleaved ? std::vector<int>{4, 8, 12, 16, 20} : std::vector<int>{4, 8, 12, 20, 30};
    }
    return {};
}

const std::vector<PauliString> &pauli_protocol_labels() {
    static const std::vector<PauliString> labels = [] {
        std::vector<PauliString> out;
        for (int k = 1; k < 16; k++) {
            out.push_back(PauliString::from_index(k, 2));
        }
        return out;
    }();
    return labels;
}

Eigen::Matrix4cd pauli_eigenstate(const PauliString &p) {
    auto factor = [&](int q) -> Eigen::Matrix2cd {
        Pauli1 s = p.qubit(q);
        if (s == Pauli1::I) {
            Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
            z(0, 0) = 1;
            return z;
        }
        return (Eigen::Matrix2cd::Identity() + pauli_matrix(s)) / 2.0;
    };
    if (p.sign() < 0) {
        throw InvalidInput("pauli_eigenstate expects a positive Pauli");
    }
    return gates::local(factor(0), factor(1));
}

Eigen::Matrix4cd CircuitInstance::ideal_unitary() const {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (const auto &s : steps) {
        u = s.ideal.matrix() * u;
    }
    return u;
}

CircuitInstance build_haar_circuit(const ProtocolSpec &spec, int m, int circuit) {
    RandomStream rng = circuit_stream(spec, m, circuit);
    CircuitInstance c = start(spec, m, circuit);
    std::vector<UnitaryMatrix> ideal;
    for (int k = 0; k < m; k++) {
        CircuitStep s;
        s.ideal = sample_haar_su4(rng);
        s.tag = "haar";
        ideal.push_back(s.ideal);
        c.steps.push_back(std::move(s));
        if (spec.is_interleaved()) {
            c.steps.push_back(interleaved_step(spec));
            ideal.push_back(*spec.interleaved);
        }
    }
    CircuitStep closure;
    closure.role = StepRole::Correction;
    closure.ideal = invert_sequence(ideal);
    closure.tag = "haar_inverse";
    c.steps.push_back(std::move(closure));
    return c;
}

CircuitInstance build_clifford_circuit(const ProtocolSpec &spec, int m, int circuit) {
    RandomStream rng = circuit_stream(spec, m, circuit);
    CircuitInstance c = start(spec, m, circuit);
    CliffordTableau total = CliffordTableau::identity(2);
    std::optional<CliffordTableau> g;
    if (spec.is_interleaved()) {
        g = interleaved_tableau(spec);
    }
    for (int k = 0; k < m; k++) {
        CliffordElement e = sample_clifford2(rng);
        total = total.then(e.tableau());
        c.steps.push_back(clifford_step(e, StepRole::Twirl));
        if (g) {
            total = total.then(*g);
            c.steps.push_back(interleaved_step(spec));
        }
    }
    c.steps.push_back(clifford_step(CliffordElement::from_tableau(total.inverse()), StepRole::Correction));
    return c;
}

CircuitInstance build_local_clifford_circuit(const ProtocolSpec &spec, int m, int circuit) {
    RandomStream rng = circuit_stream(spec, m, circuit);
    CircuitInstance c = start(spec, m, circuit);
    CliffordTableau ta = CliffordTableau::identity(1);
    CliffordTableau tb = CliffordTableau::identity(1);
    CliffordTableau total = CliffordTableau::identity(2);
    std::optional<CliffordTableau> g;
    if (spec.is_interleaved()) {
        g = interleaved_tableau(spec);
    }
    for (int k = 0; k < m; k++) {
        auto [ea, eb] = sample_local_clifford(rng);
        CircuitStep s = local_step(ea.unitary().matrix(), eb.unitary().matrix(), StepRole::Twirl,
                                   "local:" + std::to_string(ea.index()) + "," + std::to_string(eb.index()));
        if (g) {
            total = total.then(CliffordTableau::from_unitary(s.ideal.matrix()));
        } else {
            ta = ta.then(ea.tableau());
            tb = tb.then(eb.tableau());
        }
        c.steps.push_back(std::move(s));
        if (g) {
            total = total.then(*g);
            c.steps.push_back(interleaved_step(spec));
        }
    }
    if (g) {
        c.steps.push_back(clifford_step(CliffordElement::from_tableau(total.inverse()), StepRole::Correction));
    } else {
        CliffordElement ca = CliffordElement::from_tableau(ta.inverse());
        CliffordElement cb = CliffordElement::from_tableau(tb.inverse());
        c.steps.push_back(local_step(ca.unitary().matrix(), cb.unitary().matrix(), StepRole::Correction,
                                     "local:" + std::to_string(ca.index()) + "," + std::to_string(cb.index())));
        c.measurement = MeasurementKind::PerQubitSurvival;
        c.label = "local";
    }
    return c;
}

CircuitInstance build_pauli_circuit(const ProtocolSpec &spec, int m, int circuit) {
    RandomStream rng = circuit_stream(spec, m, circuit);
    CircuitInstance c = start(spec, m, circuit);
    const PauliString &p = pauli_protocol_labels()[circuit % kPauliLabels];
    c.label = p.str().substr(1);
    c.initial_state = pauli_eigenstate(p);
    std::optional<CliffordTableau> g;
    if (spec.is_interleaved()) {
        g = interleaved_tableau(spec);
    }
    PauliString tracked = p;
    for (int k = 0; k < m; k++) {
        auto [a, b] = sample_pauli_layer(rng);
        PauliString layer(2, 0, 0, 0);
        std::string name{pauli_char(a), pauli_char(b)};
        layer = PauliString::from_str(name);
        if (!layer.commutes_with(tracked)) {
            tracked = tracked.negated();
        }
        c.steps.push_back(local_step(pauli_matrix(a), pauli_matrix(b), StepRole::Twirl, "pauli:" + name));
        if (g) {
            tracked = g->conjugate(tracked);
            c.steps.push_back(interleaved_step(spec));
        }
    }
    c.measurement = MeasurementKind::PauliExpectation;
    c.observable = tracked.unsigned_part();
    c.sign = tracked.sign();
    return c;
}

CircuitInstance build_xrb_circuit(const ProtocolSpec &spec, int m, int circuit) {
    RandomStream rng = circuit_stream(spec, m, circuit);
    CircuitInstance c = start(spec, m, circuit);
    for (int k = 0; k < m; k++) {
        c.steps.push_back(clifford_step(sample_clifford2(rng), StepRole::Twirl));
    }
    c.measurement = MeasurementKind::Tomography;
    c.label = "purity";
    return c;
}

CircuitInstance build_circuit(const ProtocolSpec &spec, int m, int circuit) {
    if (spec.kind == ProtocolKind::Xrb) {
        return build_xrb_circuit(spec, m, circuit);
    }
    switch (spec.group) {
        case TwirlGroupKind::Haar:
            return build_haar_circuit(spec, m, circuit);
        case TwirlGroupKind::Clifford2:
            return build_clifford_circuit(spec, m, circuit);
        case TwirlGroupKind::LocalClifford:
            return build_local_clifford_circuit(spec, m, circuit);
        case TwirlGroupKind::Pauli:
            return build_pauli_circuit(spec, m, circuit);
    }
    throw InvalidInput("unknown protocol");
}

std::vector<std::pair<int, int>> schedule(const ProtocolSpec &spec) {
    spec.validate();
    int n = static_cast<int>(spec.depths.size());
    int base = spec.shots / n;
    int extra = spec.shots % n;
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k < n; k++) {
        out.emplace_back(spec.depths[k], base + (k < extra ? 1 : 0));
    }
    return out;
}

}  // namespace ibench
