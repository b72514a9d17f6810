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


#include "ibench/gauge.h"

#include <algorithm>

#include "ibench/engine.h"
#include "ibench/errors.h"
#include "ibench/gates.h"
#include "ibench/protocols.h"
#include "ibench/rng.h"

namespace ibench {

namespace {

constexpr int kDim = 4;
constexpr int kTwirlDepth = 4;

Eigen::MatrixXd ideal_ptm(const Eigen::MatrixXcd &u) {
    return unitary_to_ptm(UnitaryMatrix::unchecked(u)).matrix();
}

GateSetElement local_element(const ErrorModel &model, const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    return {ideal_ptm(gates::local(a, b)), noisy_local_layer(model, a, b).ptm().matrix(), 1};
}

GateSetElement two_qubit_element(const ErrorModel &model, const CircuitStep &step) {
    return {ideal_ptm(step.ideal.matrix()), step_channel(model, step).ptm().matrix(), 1};
}

void normalize(GateSet &set) {
    double total = 0;
    for (const auto &e : set.elements) {
        total += e.weight;
    }
    for (auto &e : set.elements) {
        e.weight /= total;
    }
}

/// X -> E[G^ X G^-1].
Eigen::MatrixXd left_twirl(const GateSet &set, const Eigen::MatrixXd &x) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    for (const auto &e : set.elements) {
        out.noalias() += e.weight * (e.noisy * x * e.ideal.transpose());
    }
    return out;
}

/// X -> E[G^-1 X G^].
Eigen::MatrixXd right_twirl(const GateSet &set, const Eigen::MatrixXd &x) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    for (const auto &e : set.elements) {
        out.noalias() += e.weight * (e.ideal.transpose() * x * e.noisy);
    }
    return out;
}

double choi_floor(const PauliTransferMatrix &ptm) {
    return ptm_to_choi(ptm).min_eigenvalue();
}

ScgSide evaluate_side(const GateSet &edge_set, const GateSet &fidelity_set) {
    ScgSide side;
    side.edges = estimate_edge_channels(edge_set);
    side.infidelity_ur = 1 - scg_average_fidelity(fidelity_set, choose_gauge(side.edges, GaugeOrigin::UR));
    side.infidelity_ul_inverse =
        1 - scg_average_fidelity(fidelity_set, choose_gauge(side.edges, GaugeOrigin::ULInverse));
    side.infidelity_identity = 1 - scg_average_fidelity(fidelity_set, choose_gauge(side.edges, GaugeOrigin::Identity));
    return side;
}

}  // namespace

GateSet twirl_gate_set(TwirlGroupKind group, const ErrorModel &model, const GateSetOptions &options,
                       const std::optional<UnitaryMatrix> &interleaved) {
    GateSet set;
    bool enumerate = options.enumerate_small_groups &&
                     (group == TwirlGroupKind::Pauli || group == TwirlGroupKind::LocalClifford);
    if (!enumerate && options.samples < 1) {
        throw InvalidInput("gate set needs at least one sample");
    }
    set.exact = enumerate;
    if (enumerate && group == TwirlGroupKind::Pauli) {
        for (int a = 0; a < 4; a++) {
            for (int b = 0; b < 4; b++) {
                set.elements.push_back(local_element(model, pauli_matrix(Pauli1(a)), pauli_matrix(Pauli1(b))));
            }
        }
    } else if (enumerate) {
        std::vector<Eigen::Matrix2cd> c1;
        for (int k = 0; k < 24; k++) {
            c1.push_back(CliffordElement::single_qubit(k).unitary().matrix());
        }
        for (const auto &a : c1) {
            for (const auto &b : c1) {
                set.elements.push_back(local_element(model, a, b));
            }
        }
    } else {
        uint64_t group_id = fnv1a(to_string(group));
        for (int k = 0; k < options.samples; k++) {
            RandomStream rng{options.seed, fnv1a("gauge"), group_id, static_cast<uint64_t>(k)};
            switch (group) {
                case TwirlGroupKind::Haar: {
                    CircuitStep step;
                    step.ideal = sample_haar_su4(rng);
                    set.elements.push_back(two_qubit_element(model, step));
                    break;
                }
                case TwirlGroupKind::Clifford2: {
                    CliffordElement c = sample_clifford2(rng);
                    CircuitStep step;
                    step.ideal = c.unitary();
                    step.layers = clifford_layers(c);
                    set.elements.push_back(two_qubit_element(model, step));
                    break;
                }
                case TwirlGroupKind::LocalClifford: {
                    auto [a, b] = sample_local_clifford(rng);
                    set.elements.push_back(local_element(model, a.unitary().matrix(), b.unitary().matrix()));
                    break;
                }
                case TwirlGroupKind::Pauli: {
                    auto [a, b] = sample_pauli_layer(rng);
                    set.elements.push_back(local_element(model, pauli_matrix(a), pauli_matrix(b)));
                    break;
                }
            }
        }
    }
    if (interleaved) {
        CircuitStep step;
        step.role = StepRole::Interleaved;
        step.ideal = *interleaved;
        Eigen::MatrixXd noisy = step_channel(model, step).ptm().matrix();
        Eigen::MatrixXd ideal = ideal_ptm(interleaved->matrix());
        for (auto &e : set.elements) {
            e.noisy = noisy * e.noisy;
            e.ideal = ideal * e.ideal;
        }
    }
    normalize(set);
    return set;
}

EdgeChannels estimate_edge_channels(const GateSet &set) {
    if (set.elements.empty()) {
        throw InvalidInput("empty gate set");
    }
    int n = static_cast<int>(set.elements.front().ideal.rows());
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    for (int k = 0; k < kTwirlDepth; k++) {
        l = left_twirl(set, l);
        r = right_twirl(set, r);
    }
    EdgeChannels out;
    out.L = PauliTransferMatrix(l);
    out.R = PauliTransferMatrix(r);
    out.samples = static_cast<int>(set.elements.size());
    out.exact = set.exact;
    out.choi_floor = std::min(choi_floor(out.L), choi_floor(out.R));
    return out;
}

PolarFactors channel_polar_decompose(const PauliTransferMatrix &ptm) {
    auto [k0, weight] = leading_kraus(ptm_to_choi(ptm));
    if (weight <= 0.5) {
        throw DomainError("no leading Kraus operator: largest Choi eigenvalue " + std::to_string(weight));
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k0, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd u = svd.matrixU() * svd.matrixV().adjoint();
    UnitaryMatrix unitary = UnitaryMatrix::unchecked(u);
    PauliTransferMatrix up = unitary_to_ptm(unitary);
    return {up, compose(up.transpose(), ptm), unitary};
}

GaugeChoice choose_gauge(const EdgeChannels &edges, GaugeOrigin origin) {
    switch (origin) {
        case GaugeOrigin::UR:
            return {channel_polar_decompose(edges.R).unitary_part, origin};
        case GaugeOrigin::ULInverse:
            return {channel_polar_decompose(edges.L).unitary_part.transpose(), origin};
        case GaugeOrigin::Identity:
            break;
    }
    return {PauliTransferMatrix::identity(edges.L.dim()), GaugeOrigin::Identity};
}

double scg_average_fidelity(const GateSet &set, const GaugeChoice &gauge) {
    const Eigen::MatrixXd &s = gauge.S.matrix();
    Eigen::MatrixXd s_inv = s.inverse();
    double d2 = static_cast<double>(s.rows());
    double f = 0;
    for (const auto &e : set.elements) {
        f += e.weight * (s * e.noisy * s_inv * e.ideal.transpose()).trace() / d2;
    }
    return f;
}

double ScgSide::infidelity(GaugeOrigin origin) const {
    switch (origin) {
        case GaugeOrigin::UR:
            return infidelity_ur;
        case GaugeOrigin::ULInverse:
            return infidelity_ul_inverse;
        case GaugeOrigin::Identity:
            break;
    }
    return infidelity_identity;
}

ScgReport self_consistent_gauge(TwirlGroupKind group, const ErrorModel &model, const ScgOptions &options,
                                const std::optional<UnitaryMatrix> &interleaved) {
    model.validate();
    GateSetOptions edge_opts{options.edge_samples, stream_key({options.seed, 1}), true};
    GateSetOptions fid_opts{options.fidelity_samples, stream_key({options.seed, 2}), true};
    ScgReport report;
    report.group = group;
    report.origin = options.origin;
    GateSet fidelity_set = twirl_gate_set(group, model, fid_opts);
    report.reference = evaluate_side(twirl_gate_set(group, model, edge_opts), fidelity_set);
    report.edge_samples = report.reference.edges.samples;
    report.fidelity_samples = static_cast<int>(fidelity_set.elements.size());
    if (interleaved) {
        report.dressed = evaluate_side(twirl_gate_set(group, model, edge_opts, interleaved),
                                       twirl_gate_set(group, model, fid_opts, interleaved));
        auto ratio = [&](GaugeOrigin o) {
            return 1 - (1 - report.dressed->infidelity(o)) / (1 - report.reference.infidelity(o));
        };
        GaugeOrigin alternate = options.origin == GaugeOrigin::UR ? GaugeOrigin::ULInverse : GaugeOrigin::UR;
        report.interleaved_infidelity = ratio(options.origin);
        report.interleaved_infidelity_alternate = ratio(alternate);
    }
    return report;
}

std::string to_string(GaugeOrigin o) {
    switch (o) {
        case GaugeOrigin::UR:
            return "U_R";
        case GaugeOrigin::ULInverse:
            return "U_L_inverse";
        case GaugeOrigin::Identity:
            return "identity";
    }
    return "identity";
}

GaugeOrigin gauge_origin_from_string(const std::string &s) {
    for (GaugeOrigin o : {GaugeOrigin::UR, GaugeOrigin::ULInverse, GaugeOrigin::Identity}) {
        if (to_string(o) == s) {
            return o;
        }
    }
    throw InvalidInput("unknown gauge origin '" + s + "' (expected U_R, U_L_inverse or identity)");
}

}  // namespace ibench
