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

#include "ibench/channels.h"

#include <gtest/gtest.h>

#include "ibench/errors.h"
#include "oracles.h"

using namespace ibench;

namespace {

PauliTransferMatrix ptm_from_kraus_oracle(const std::vector<Eigen::MatrixXcd> &ks) {
    return PauliTransferMatrix(oracle::kraus_ptm(ks));
}

}  // namespace

TEST(unitary_matrix, rejects_non_unitary) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2) * 1.1;
    EXPECT_THROW(UnitaryMatrix{m}, InvalidInput);
}

TEST(unitary_to_ptm, matches_trace_formula) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; trial++) {
        for (int dim : {2, 4}) {
            Eigen::MatrixXcd u = oracle::haar_unitary(dim, rng);
            auto ptm = unitary_to_ptm(UnitaryMatrix(u));
            EXPECT_TRUE(ptm.matrix().isApprox(oracle::unitary_ptm(u), 1e-12));
        }
    }
}

TEST(compose, matches_unitary_product) {
    std::mt19937_64 rng(12);
    Eigen::MatrixXcd a = oracle::haar_unitary(4, rng);
    Eigen::MatrixXcd b = oracle::haar_unitary(4, rng);
    auto c = compose(unitary_to_ptm(UnitaryMatrix(a)), unitary_to_ptm(UnitaryMatrix(b)));
    EXPECT_TRUE(c.matrix().isApprox(oracle::unitary_ptm(a * b), 1e-12));
}

TEST(tensor, matches_kron) {
    std::mt19937_64 rng(13);
    Eigen::MatrixXcd a = oracle::haar_unitary(2, rng);
    Eigen::MatrixXcd b = oracle::haar_unitary(2, rng);
    auto t = tensor(unitary_to_ptm(UnitaryMatrix(a)), unitary_to_ptm(UnitaryMatrix(b)));
    EXPECT_TRUE(t.matrix().isApprox(oracle::unitary_ptm(oracle::kron(a, b)), 1e-12));
}

TEST(process_infidelity, coherent_zz_is_sin_squared) {
    auto zz = PauliString::from_str("ZZ");
    for (int k = 0; k < 20; k++) {
        double theta = -1.2 + 0.13 * k;
        auto ptm = unitary_to_ptm(exp_pauli(zz, theta));
        EXPECT_NEAR(process_infidelity(ptm), std::pow(std::sin(theta), 2), 1e-12);
    }
}

TEST(process_infidelity, matches_trace_overlap_for_unitaries) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; trial++) {
        Eigen::MatrixXcd u = oracle::haar_unitary(4, rng);
        EXPECT_NEAR(process_fidelity(unitary_to_ptm(UnitaryMatrix(u))), oracle::unitary_process_fidelity(u), 1e-12);
    }
}

TEST(exp_pauli, matches_closed_form) {
    for (const char *g : {"XZ", "YY", "ZI"}) {
        auto p = PauliString::from_str(g);
        for (double theta : {0.0, 0.3, -1.1, 2.5}) {
            EXPECT_TRUE(exp_pauli(p, theta).matrix().isApprox(oracle::exp_involution(p.matrix(), theta), 1e-13));
        }
    }
}

TEST(unitarity, unitary_is_one_and_depolarizing_is_p_squared) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; trial++) {
        EXPECT_NEAR(unitarity(unitary_to_ptm(UnitaryMatrix(oracle::haar_unitary(4, rng)))), 1.0, 1e-10);
    }
    for (double p : {0.0, 0.5, 0.93, 1.0}) {
        EXPECT_NEAR(unitarity(PauliTransferMatrix::depolarizing(4, p)), p * p, 1e-10);
        EXPECT_NEAR(unitarity(PauliTransferMatrix::depolarizing(2, p)), p * p, 1e-10);
    }
}

TEST(depolarizing, infidelity_relation) {
    for (double p : {0.9, 0.99}) {
        auto dep = PauliTransferMatrix::depolarizing(4, p);
        double eps = process_infidelity(dep);
        EXPECT_NEAR(eps, 15.0 / 16 * (1 - p), 1e-14);
        EXPECT_NEAR(depolarizing_parameter_from_infidelity(eps, 4), p, 1e-14);
        EXPECT_NEAR(infidelity_from_depolarizing_parameter(p, 4), eps, 1e-14);
    }
}

TEST(choi, round_trips_on_random_channels) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 100; trial++) {
        int dim = trial % 2 == 0 ? 4 : 2;
        auto ks = oracle::random_kraus(dim, 1 + trial % 4, rng);
        auto ptm = ptm_from_kraus_oracle(ks);
        auto choi = ptm_to_choi(ptm);
        EXPECT_NEAR(choi.matrix().trace().real(), 1.0, 1e-10);
        EXPECT_GT(choi.min_eigenvalue(), -1e-10);
        EXPECT_TRUE(choi_to_ptm(choi).matrix().isApprox(ptm.matrix(), 1e-10));
        auto kraus = choi_to_kraus(choi);
        EXPECT_LT(kraus.completeness_defect(), 1e-10);
        EXPECT_LT((kraus_to_ptm(kraus).matrix() - ptm.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(choi, kraus_rank_of_unitary_is_one) {
    std::mt19937_64 rng(17);
    Eigen::MatrixXcd u = oracle::haar_unitary(4, rng);
    auto kraus = choi_to_kraus(ptm_to_choi(unitary_to_ptm(UnitaryMatrix(u))));
    ASSERT_FALSE(kraus.operators.empty());
    EXPECT_NEAR(kraus.weights[0], 1.0, 1e-10);
    EXPECT_TRUE(oracle::equal_up_to_phase(kraus.operators[0], u, 1e-8));
}

TEST(choi, rejects_non_cp_map) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
    m(3, 3) = -1;
    m(1, 1) = -1;
    m(2, 2) = -1;
    auto choi = ptm_to_choi(PauliTransferMatrix(m));
    EXPECT_THROW(choi_to_kraus(choi), InvalidChannel);
}

TEST(channel, apply_matches_ptm_action) {
    std::mt19937_64 rng(18);
    auto ks = oracle::random_kraus(4, 3, rng);
    auto ch = Channel::general(ptm_from_kraus_oracle(ks));
    Eigen::MatrixXcd psi = oracle::haar_unitary(4, rng).col(0);
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto &k : ks) {
        expected += k * rho * k.adjoint();
    }
    ch.apply(rho);
    EXPECT_TRUE(rho.isApprox(expected, 1e-12));
}

TEST(channel, unitary_fast_path_agrees_with_ptm) {
    std::mt19937_64 rng(19);
    Eigen::MatrixXcd u = oracle::haar_unitary(4, rng);
    auto ch = Channel::unitary(UnitaryMatrix(u));
    EXPECT_TRUE(ch.is_unitary());
    EXPECT_TRUE(ch.ptm().matrix().isApprox(oracle::unitary_ptm(u), 1e-12));
}

TEST(density_state, purity_of_pure_and_mixed) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = 1;
    EXPECT_NEAR(purity(DensityState::pure(psi)), 1.0, 1e-14);
    EXPECT_NEAR(purity(DensityState::maximally_mixed(4)), 0.25, 1e-14);
}
