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

#include "ibench/pauli.h"

#include <gtest/gtest.h>

#include "ibench/errors.h"
#include "oracles.h"

using namespace ibench;

TEST(pauli_string, from_str_and_str_round_trip) {
    for (const char *label : {"+XZ", "-YY", "+II", "+ZI", "-X", "+Y"}) {
        EXPECT_EQ(PauliString::from_str(label).str(), label);
    }
    EXPECT_EQ(PauliString::from_str("XZ").str(), "+XZ");
    EXPECT_THROW(PauliString::from_str("XQ"), InvalidInput);
}

TEST(pauli_string, matrix_matches_tensor_product) {
    const char *letters = "IXYZ";
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            std::string label = {letters[a], letters[b]};
            auto p = PauliString::from_str(label);
            EXPECT_EQ(p.basis_index(), 4 * a + b);
            EXPECT_TRUE(p.matrix().isApprox(oracle::kron(oracle::pauli1(a), oracle::pauli1(b)), 1e-14)) << label;
        }
    }
}

TEST(pauli_string, from_index_matches_basis_order) {
    for (int k = 0; k < 16; k++) {
        auto p = PauliString::from_index(k, 2);
        EXPECT_EQ(p.basis_index(), k);
        EXPECT_TRUE(p.matrix().isApprox(oracle::pauli_basis(k, 2), 1e-14));
    }
}

TEST(pauli_string, commutation_matches_matrix_commutator) {
    for (int i = 0; i < 16; i++) {
        for (int j = 0; j < 16; j++) {
            auto a = PauliString::from_index(i, 2);
            auto b = PauliString::from_index(j, 2);
            Eigen::MatrixXcd ab = a.matrix() * b.matrix();
            Eigen::MatrixXcd ba = b.matrix() * a.matrix();
            EXPECT_EQ(a.commutes_with(b), (ab - ba).norm() < 1e-12) << i << "," << j;
        }
    }
}

TEST(pauli_string, product_matches_matrix_product) {
    for (int i = 0; i < 16; i++) {
        for (int j = 0; j < 16; j++) {
            auto a = PauliString::from_index(i, 2);
            auto b = PauliString::from_index(j, 2).negated();
            EXPECT_TRUE((a * b).matrix().isApprox(a.matrix() * b.matrix(), 1e-14)) << i << "," << j;
        }
    }
}

TEST(pauli_string, sign_and_unsigned_part) {
    auto p = PauliString::from_str("-XY");
    EXPECT_EQ(p.sign(), -1);
    EXPECT_EQ(p.unsigned_part().str(), "+XY");
    EXPECT_EQ(p.negated().sign(), 1);
}

TEST(pauli_basis, orthogonal_under_trace) {
    const auto &basis = pauli_basis(4);
    ASSERT_EQ(basis.size(), 16u);
    for (int i = 0; i < 16; i++) {
        for (int j = 0; j < 16; j++) {
            double t = (basis[i].adjoint() * basis[j]).trace().real();
            EXPECT_NEAR(t, i == j ? 4 : 0, 1e-12);
        }
    }
}
