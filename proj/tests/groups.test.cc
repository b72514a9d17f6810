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

#include <gtest/gtest.h>

#include "ibench/errors.h"
#include "ibench/rng.h"
#include "oracles.h"

using namespace ibench;

TEST(twirl_group, string_round_trip) {
    for (auto g : kAllGroups) {
        EXPECT_EQ(twirl_group_from_string(to_string(g)), g);
    }
    EXPECT_THROW(twirl_group_from_string("dihedral"), InvalidInput);
}

TEST(compile_single_qubit, reproduces_gate_with_two_pulses) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; trial++) {
        Eigen::Matrix2cd u = oracle::haar_unitary(2, rng);
        auto c = compile_single_qubit(u);
        EXPECT_TRUE(oracle::equal_up_to_phase(c.reconstruct(), u, 1e-10));
    }
    for (int k = 0; k < 24; k++) {
        Eigen::Matrix2cd u = CliffordElement::single_qubit(k).unitary().matrix();
        EXPECT_TRUE(oracle::equal_up_to_phase(compile_single_qubit(u).reconstruct(), u, 1e-10)) << k;
    }
}

TEST(compile_single_qubit, pulse_is_x_half_rotation) {
    Eigen::Matrix2cd expected = oracle::exp_involution(oracle::pauli1(1), -M_PI / 4);
    EXPECT_TRUE(x_half_pulse().isApprox(expected, 1e-14));
}

TEST(kak_decompose, reconstructs_random_unitaries) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; trial++) {
        Eigen::Matrix4cd u = oracle::haar_unitary(4, rng);
        auto k = kak_decompose(u);
        EXPECT_LT((k.reconstruct() - u).cwiseAbs().maxCoeff(), 1e-9) << trial;
    }
}

TEST(synthesize_two_qubit, uses_three_cnots_for_generic_unitaries) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; trial++) {
        Eigen::Matrix4cd u = oracle::haar_unitary(4, rng);
        auto layers = synthesize_two_qubit(u);
        int cnots = 0;
        for (const auto &l : layers) {
            cnots += l.kind == GateLayer::Kind::Cnot;
        }
        EXPECT_EQ(cnots, 3);
        EXPECT_TRUE(oracle::equal_up_to_phase(layers_product(layers), u, 1e-9)) << trial;
    }
}

TEST(synthesize_two_qubit, clifford_layers_match_unitary) {
    for (int k = 0; k < CliffordElement::kTwoQubitOrder; k += 173) {
        auto c = CliffordElement::two_qubit(k);
        EXPECT_TRUE(oracle::equal_up_to_phase(layers_product(clifford_layers(c)), c.unitary().matrix(), 1e-10));
    }
}

TEST(factor_local, detects_product_operators) {
    std::mt19937_64 rng(24);
    Eigen::Matrix2cd a = oracle::haar_unitary(2, rng);
    Eigen::Matrix2cd b = oracle::haar_unitary(2, rng);
    auto f = factor_local(oracle::kron(a, b));
    ASSERT_TRUE(f.has_value());
    EXPECT_TRUE(oracle::equal_up_to_phase(oracle::kron(f->first, f->second), oracle::kron(a, b), 1e-10));
    EXPECT_FALSE(factor_local(oracle::cnot01()).has_value());
}

TEST(sample_haar_su4, second_moment_of_trace) {
    RandomStream rng(25);
    double sum = 0;
    double sum4 = 0;
    const int n = 20000;
    for (int i = 0; i < n; i++) {
        auto u = sample_haar_su4(rng);
        EXPECT_NEAR(std::abs(u.matrix().determinant() - 1.0), 0, 1e-9);
        double t = std::norm(u.matrix().trace());
        sum += t;
        sum4 += t * t;
    }
    // E|Tr U|^2 = 1 and E|Tr U|^4 = 2 for Haar U(d) with d >= 2.
    EXPECT_NEAR(sum / n, 1.0, 0.05);
    EXPECT_NEAR(sum4 / n, 2.0, 0.15);
}

TEST(sample_clifford2, is_uniform_over_cnot_classes) {
    RandomStream rng(26);
    std::array<int, 4> counts{};
    const int n = 40000;
    for (int i = 0; i < n; i++) {
        counts[sample_clifford2(rng).cnot_count()]++;
    }
    std::array<double, 4> expected{576.0 / 11520, 5184.0 / 11520, 5184.0 / 11520, 576.0 / 11520};
    for (int k = 0; k < 4; k++) {
        EXPECT_NEAR(counts[k] / double(n), expected[k], 0.01) << k;
    }
}

TEST(sample_pauli_layer, covers_all_sixteen) {
    RandomStream rng(27);
    std::array<int, 16> counts{};
    for (int i = 0; i < 16000; i++) {
        auto [a, b] = sample_pauli_layer(rng);
        counts[4 * static_cast<int>(a) + static_cast<int>(b)]++;
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 1000, 150);
    }
}

TEST(invert_sequence, returns_inverse_product) {
    std::mt19937_64 rng(28);
    std::vector<UnitaryMatrix> gates;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(4, 4);
    for (int i = 0; i < 5; i++) {
        Eigen::MatrixXcd u = oracle::haar_unitary(4, rng);
        gates.emplace_back(u);
        total = u * total;
    }
    Eigen::MatrixXcd inv = invert_sequence(gates).matrix();
    EXPECT_TRUE((inv * total).isApprox(Eigen::MatrixXcd::Identity(4, 4), 1e-10));
    EXPECT_THROW(invert_sequence({}), InvalidInput);
}
