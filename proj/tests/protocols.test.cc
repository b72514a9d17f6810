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

#include <numeric>

#include <gtest/gtest.h>

#include "ibench/engine.h"
#include "ibench/errors.h"
#include "oracles.h"

using namespace ibench;

namespace {

ProtocolSpec spec_for(TwirlGroupKind g, bool interleaved, ProtocolKind kind = ProtocolKind::Benchmark) {
    ProtocolSpec s;
    s.group = g;
    s.kind = kind;
    s.seed = 41;
    s.shots = 1500;
    if (interleaved) {
        s.interleaved = UnitaryMatrix(oracle::cnot01());
        s.interleaved_name = "cnot";
    }
    s.depths = kind == ProtocolKind::Xrb ? std::vector<int>{4, 6, 8, 12, 14} : default_depths(g, interleaved);
    return s;
}

}  // namespace

TEST(protocol_spec, names) {
    EXPECT_EQ(spec_for(TwirlGroupKind::Clifford2, true).name(), "clifford(G)");
    EXPECT_EQ(spec_for(TwirlGroupKind::Pauli, false).name(), "pauli(I)");
}

TEST(protocol_spec, validation) {
    auto s = spec_for(TwirlGroupKind::Clifford2, false);
    s.depths = {};
    EXPECT_THROW(s.validate(), InvalidInput);
    s.depths = {4, 4};
    EXPECT_THROW(s.validate(), InvalidInput);
    auto p = spec_for(TwirlGroupKind::Pauli, true);
    p.shots = 1501;
    EXPECT_THROW(p.validate(), InvalidInput);
    Eigen::Matrix4cd t = Eigen::Matrix4cd::Identity();
    t(3, 3) = std::exp(std::complex<double>(0, M_PI / 4));
    auto c = spec_for(TwirlGroupKind::Clifford2, true);
    c.interleaved = UnitaryMatrix(t);
    EXPECT_THROW(c.validate(), UnsupportedCombination);
    auto h = spec_for(TwirlGroupKind::Haar, true);
    h.interleaved = UnitaryMatrix(t);
    EXPECT_NO_THROW(h.validate());
}

TEST(schedule, splits_shots_over_depths) {
    for (auto g : kAllGroups) {
        auto s = spec_for(g, true);
        auto sched = schedule(s);
        int total = 0;
        for (auto [depth, count] : sched) {
            total += count;
        }
        EXPECT_EQ(total, s.shots);
        EXPECT_EQ(sched.size(), s.depths.size());
    }
}

TEST(build_circuit, ideal_sequences_compose_to_identity) {
    for (auto g : kAllGroups) {
        for (bool inter : {false, true}) {
            auto s = spec_for(g, inter);
            for (int c = 0; c < 5; c++) {
                auto circ = build_circuit(s, s.depths[1], c);
                Eigen::Matrix4cd u = circ.ideal_unitary();
                if (circ.measurement == MeasurementKind::PauliExpectation) {
                    // The net ideal action maps the prepared Pauli to the signed observable.
                    Eigen::MatrixXcd prepared = PauliString::from_str(circ.label).matrix();
                    Eigen::MatrixXcd image = u * prepared * u.adjoint();
                    EXPECT_TRUE(image.isApprox(circ.sign * circ.observable.matrix(), 1e-9)) << s.name();
                } else {
                    EXPECT_TRUE(oracle::equal_up_to_phase(u, Eigen::Matrix4cd::Identity(), 1e-9))
                        << s.name() << " circuit " << c;
                }
            }
        }
    }
}

TEST(build_circuit, deterministic_per_seed) {
    auto s = spec_for(TwirlGroupKind::Clifford2, true);
    auto a = build_circuit(s, 8, 3);
    auto b = build_circuit(s, 8, 3);
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (size_t i = 0; i < a.steps.size(); i++) {
        EXPECT_EQ(a.steps[i].tag, b.steps[i].tag);
    }
    s.seed = 42;
    auto c = build_circuit(s, 8, 3);
    bool differs = false;
    for (size_t i = 0; i < a.steps.size(); i++) {
        differs = differs || a.steps[i].tag != c.steps[i].tag;
    }
    EXPECT_TRUE(differs);
}

TEST(build_circuit, interleaved_gate_appears_once_per_layer) {
    auto s = spec_for(TwirlGroupKind::Haar, true);
    auto circ = build_circuit(s, 6, 0);
    int interleaved = 0;
    for (const auto &st : circ.steps) {
        interleaved += st.role == StepRole::Interleaved;
    }
    EXPECT_EQ(interleaved, 6);
}

TEST(build_circuit, noiseless_survival_is_one) {
    for (auto g : kAllGroups) {
        for (bool inter : {false, true}) {
            auto s = spec_for(g, inter);
            for (int c = 0; c < 3; c++) {
                auto circ = build_circuit(s, s.depths.back(), c);
                for (auto [label, value] : exact_outcomes(circ, ErrorModel::noiseless())) {
                    EXPECT_NEAR(value, 1.0, 1e-9) << s.name() << " " << label;
                }
            }
        }
    }
    auto x = spec_for(TwirlGroupKind::Clifford2, false, ProtocolKind::Xrb);
    auto circ = build_circuit(x, 8, 0);
    EXPECT_EQ(circ.label, "purity");
    EXPECT_NEAR(exact_outcomes(circ, ErrorModel::noiseless())[0].second, 1.0, 1e-9);
}

TEST(pauli_protocol, labels_cover_nonidentity_paulis) {
    const auto &labels = pauli_protocol_labels();
    ASSERT_EQ(labels.size(), 15u);
    EXPECT_EQ(labels.front().str(), "+IX");
    EXPECT_EQ(labels.back().str(), "+ZZ");
}

TEST(pauli_eigenstate, is_plus_one_eigenstate) {
    for (const auto &p : pauli_protocol_labels()) {
        Eigen::Matrix4cd rho = pauli_eigenstate(p);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        EXPECT_NEAR((rho * p.matrix()).trace().real(), 1.0, 1e-12) << p.str();
    }
}
