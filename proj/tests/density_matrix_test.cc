// Copyright 2026 The z2lgt Authors
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

#include "z2lgt/density_matrix.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include <gtest/gtest.h>

#include "dense_oracle.h"

namespace z2lgt {
namespace {

const double kLn2 = std::numbers::ln2;

// Partial trace written as an explicit sum over basis labels.
Eigen::MatrixXcd brute_reduced(const StateVector &psi, const std::vector<int> &keep) {
    const int k = static_cast<int>(keep.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(1 << k, 1 << k);
    for (size_t i = 0; i < psi.dimension(); ++i) {
        for (size_t j = 0; j < psi.dimension(); ++j) {
            bool same_rest = true;
            for (int q = 0; q < psi.num_qubits(); ++q) {
                if (std::find(keep.begin(), keep.end(), q) == keep.end() && ((i >> q) & 1) != ((j >> q) & 1)) {
                    same_rest = false;
                }
            }
            if (!same_rest) continue;
            int a = 0, b = 0;
            for (int t = 0; t < k; ++t) {
                a |= static_cast<int>((i >> keep[t]) & 1) << t;
                b |= static_cast<int>((j >> keep[t]) & 1) << t;
            }
            rho(a, b) += psi[i] * std::conj(psi[j]);
        }
    }
    return rho;
}

TEST(ReducedDensityMatrix, MatchesBruteForce) {
    const auto psi = oracle::random_state(6, 4);
    for (const std::vector<int> &keep : {std::vector<int>{0}, {5, 1}, {2, 3, 0}, {0, 1, 2, 3, 4, 5}}) {
        const auto rho = reduced_density_matrix(psi, keep);
        EXPECT_LT((rho.entries() - brute_reduced(psi, keep)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(rho.trace(), 1.0, 1e-10);
        EXPECT_GE(rho.eigenvalues().minCoeff(), -1e-12);
        EXPECT_LT((rho.entries() - rho.entries().adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(ReducedDensityMatrix, Validation) {
    const auto psi = oracle::random_state(14, 1);
    std::vector<int> keep(13);
    std::iota(keep.begin(), keep.end(), 0);
    EXPECT_THROW(reduced_density_matrix(psi, keep), std::length_error);
    EXPECT_THROW(reduced_density_matrix(psi, std::vector<int>{1, 1}), std::invalid_argument);
    EXPECT_THROW(reduced_density_matrix(psi, std::vector<int>{14}), std::invalid_argument);
}

TEST(VonNeumannEntropy, ProductStateIsPure) {
    const auto psi = StateVector::uniform_superposition(4);
    const auto rho = reduced_density_matrix(psi, std::vector<int>{0, 2});
    EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-12);
}

TEST(VonNeumannEntropy, BellPairHalfIsMaximallyMixed) {
    StateVector psi(2);
    psi.apply_hadamard(0);
    psi.apply_cnot(0, 1);
    EXPECT_NEAR(von_neumann_entropy(reduced_density_matrix(psi, std::vector<int>{1})), kLn2, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(reduced_density_matrix(psi, std::vector<int>{0, 1})), 0.0, 1e-12);
}

TEST(VonNeumannEntropy, MaximallyMixedOnKQubits) {
    for (int k = 1; k <= 4; ++k) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1 << k, 1 << k) / static_cast<double>(1 << k);
        EXPECT_NEAR(von_neumann_entropy(DensityMatrix(m)), k * kLn2, 1e-12);
    }
}

TEST(VonNeumannEntropy, Subadditivity) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const auto psi = oracle::random_state(8, 500 + seed);
        const std::vector<int> a = {0, 3}, b = {5, 6, 7}, ab = {0, 3, 5, 6, 7};
        const double sa = von_neumann_entropy(reduced_density_matrix(psi, a));
        const double sb = von_neumann_entropy(reduced_density_matrix(psi, b));
        const double sab = von_neumann_entropy(reduced_density_matrix(psi, ab));
        EXPECT_LE(sab, sa + sb + 1e-9);
        EXPECT_GE(sa, -1e-10);
    }
}

}  // namespace
}  // namespace z2lgt
