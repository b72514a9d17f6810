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

#include <gtest/gtest.h>

#include "ibench/errors.h"
#include "oracles.h"

using namespace ibench;

namespace {

UnitaryMatrix cnot() {
    return UnitaryMatrix(oracle::cnot01());
}

ScgOptions small_options() {
    ScgOptions o;
    o.edge_samples = 2000;
    o.fidelity_samples = 2000;
    o.seed = 81;
    return o;
}

}  // namespace

TEST(self_consistent_gauge, noiseless_is_zero_for_all_groups) {
    for (auto g : kAllGroups) {
        auto r = self_consistent_gauge(g, ErrorModel::noiseless(), small_options(), cnot());
        EXPECT_NEAR(r.reference.infidelity(GaugeOrigin::UR), 0, 1e-10) << to_string(g);
        ASSERT_TRUE(r.interleaved_infidelity.has_value());
        EXPECT_NEAR(*r.interleaved_infidelity, 0, 1e-10) << to_string(g);
    }
}

TEST(self_consistent_gauge, gate_independent_depolarizing_is_gauge_free) {
    CustomErrors k;
    k.two_qubit = PauliTransferMatrix::depolarizing(4, 0.97);
    k.interleaved = PauliTransferMatrix::depolarizing(4, 0.95);
    ErrorModel m;
    m.kind = k;
    auto r = self_consistent_gauge(TwirlGroupKind::Clifford2, m, small_options(), cnot());
    EXPECT_NEAR(r.reference.infidelity(GaugeOrigin::UR), 15.0 / 16 * 0.03, 1e-9);
    // Dressed gates carry both depolarizing factors; the interleaved value is their fidelity ratio.
    EXPECT_NEAR(r.dressed->infidelity(GaugeOrigin::UR), 15.0 / 16 * (1 - 0.97 * 0.95), 1e-9);
    EXPECT_NEAR(*r.interleaved_infidelity, 1 - (1 + 15 * 0.97 * 0.95) / (1 + 15 * 0.97), 1e-9);
}

TEST(self_consistent_gauge, pauli_twirl_of_perfect_paulis_gives_error_infidelity) {
    ErrorModel m;
    Adversarial k;
    k.interleaved_theta = 0.15;
    m.kind = k;
    auto r = self_consistent_gauge(TwirlGroupKind::Pauli, m, small_options(), cnot());
    EXPECT_TRUE(r.reference.edges.exact);
    EXPECT_NEAR(*r.interleaved_infidelity, std::pow(std::sin(0.15), 2), 1e-9);
}

TEST(self_consistent_gauge, origins_agree_to_second_order) {
    ErrorModel m;
    FixedCoherent k;
    k.theta2 = 5 * M_PI / 180;
    k.theta1 = 1 * M_PI / 180;
    m.kind = k;
    m.angle_convention = AngleConvention::Half;
    m.placement = ErrorPlacement::Compiled;
    for (auto g : {TwirlGroupKind::LocalClifford, TwirlGroupKind::Clifford2}) {
        auto r = self_consistent_gauge(g, m, small_options(), cnot());
        for (const ScgSide *side : {&r.reference, &*r.dressed}) {
            double a = side->infidelity(GaugeOrigin::UR);
            double b = side->infidelity(GaugeOrigin::ULInverse);
            EXPECT_LE(std::abs(a - b), 5 * a * a + 1e-12) << to_string(g);
        }
    }
}

TEST(channel_polar_decompose, separates_unitary_and_depolarizing) {
    std::mt19937_64 rng(82);
    Eigen::MatrixXcd u = oracle::unitary_power(oracle::haar_unitary(4, rng), 0.2);
    Eigen::MatrixXd ptm = PauliTransferMatrix::depolarizing(4, 0.9).matrix() * oracle::unitary_ptm(u);
    auto f = channel_polar_decompose(PauliTransferMatrix(ptm));
    EXPECT_TRUE(oracle::equal_up_to_phase(f.unitary.matrix(), u, 1e-8));
    EXPECT_TRUE(f.decoherent_part.matrix().isApprox(PauliTransferMatrix::depolarizing(4, 0.9).matrix(), 1e-8));
    EXPECT_THROW(channel_polar_decompose(PauliTransferMatrix::depolarizing(4, 0.0)), DomainError);
}

TEST(estimate_edge_channels, identity_for_noiseless_set) {
    GateSetOptions o;
    o.samples = 500;
    auto set = twirl_gate_set(TwirlGroupKind::LocalClifford, ErrorModel::noiseless(), o);
    EXPECT_TRUE(set.exact);
    EXPECT_EQ(set.elements.size(), 576u);
    auto e = estimate_edge_channels(set);
    EXPECT_TRUE(e.L.matrix().isApprox(Eigen::MatrixXd::Identity(16, 16), 1e-10));
    EXPECT_TRUE(e.R.matrix().isApprox(Eigen::MatrixXd::Identity(16, 16), 1e-10));
}

TEST(gauge_origin, string_round_trip) {
    for (auto o : {GaugeOrigin::UR, GaugeOrigin::ULInverse, GaugeOrigin::Identity}) {
        EXPECT_EQ(gauge_origin_from_string(to_string(o)), o);
    }
    EXPECT_ANY_THROW(gauge_origin_from_string("left"));
}
