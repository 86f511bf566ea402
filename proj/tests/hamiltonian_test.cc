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

#include "z2lgt/hamiltonian.h"

#include <sstream>

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "z2lgt/circuits.h"

namespace z2lgt {
namespace {

using oracle::to_eigen;

// Orthonormal basis of the common +1 eigenspace of the given commuting
// Hermitian operators, from their dense projectors.
Eigen::MatrixXcd sector_basis(int n, const std::vector<Eigen::MatrixXcd> &ops) {
    const int dim = 1 << n;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &op : ops) {
        p = p * (Eigen::MatrixXcd::Identity(dim, dim) + op) / 2.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (p + p.adjoint()));
    int rank = 0;
    for (int i = 0; i < dim; ++i) rank += es.eigenvalues()(i) > 0.5;
    return es.eigenvectors().rightCols(rank);
}

std::vector<Eigen::MatrixXcd> star_matrices(int L) {
    oracle::Geometry g{L};
    std::vector<Eigen::MatrixXcd> out;
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) out.push_back(oracle::pauli_product(2 * L * L, g.star(x, y), 'X'));
    }
    return out;
}

TEST(LGTHamiltonian, ApplyMatchesDenseOracle) {
    for (double h : {0.0, 0.7, 3.0}) {
        LGTHamiltonian ham(TorusLattice(2), h);
        const Eigen::MatrixXcd dense = oracle::lgt_hamiltonian(2, h);
        const auto psi = oracle::random_state(8, 3);
        const Eigen::VectorXcd expected = dense * to_eigen(psi);
        EXPECT_LT((to_eigen(ham.apply(psi)) - expected).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(ham.energy(psi), to_eigen(psi).dot(expected).real(), 1e-12);
        EXPECT_NEAR(ham.electric_energy(psi) + h * ham.magnetic_energy(psi), ham.energy(psi), 1e-12);
    }
}

TEST(LGTHamiltonian, Validation) {
    EXPECT_THROW(LGTHamiltonian(TorusLattice(4), 1.0), std::length_error);
    EXPECT_THROW(LGTHamiltonian(TorusLattice(2), -1.0), std::invalid_argument);
    LGTHamiltonian ham(TorusLattice(2), 1.0);
    EXPECT_THROW(ham.lowest_eigenpairs(11), std::invalid_argument);
    EXPECT_THROW(ham.lowest_eigenpairs(0), std::invalid_argument);
}

TEST(LGTHamiltonian, ElectricVacuumIsAZeroEigenvector) {
    const TorusLattice lat(3);
    const auto omega_e = prepare_electric_gs(lat);
    LGTHamiltonian h0(lat, 0.0);
    EXPECT_LT(h0.apply(omega_e).norm(), 1e-12);
    for (double h : {0.5, 2.0, 5.0}) {
        EXPECT_NEAR(LGTHamiltonian(lat, h).energy(omega_e), 0.0, 1e-12);
    }
}

TEST(LGTHamiltonian, ToricCodeIsMagneticEigenvector) {
    for (int L : {2, 3}) {
        const TorusLattice lat(L);
        const auto tc = prepare_toric_code_gs(lat).first;
        LGTHamiltonian ham(lat, 1.0);
        EXPECT_NEAR(ham.magnetic_energy(tc), -L * L, 1e-12);
        // H_B psi = -L^2 psi: compare h = 1 and h = 0 actions.
        const StateVector a = ham.apply(tc);
        const StateVector b = LGTHamiltonian(lat, 0.0).apply(tc);
        for (size_t i = 0; i < tc.dimension(); ++i) {
            EXPECT_NEAR(std::abs(a[i] - b[i] - (-1.0 * L * L) * tc[i]), 0.0, 1e-12);
        }
    }
    // Electric energy of the toric-code state from the dense oracle.
    const auto tc = prepare_toric_code_gs(TorusLattice(2)).first;
    const Eigen::VectorXcd v = to_eigen(tc);
    EXPECT_NEAR(LGTHamiltonian(TorusLattice(2), 2.5).energy(tc), v.dot(oracle::lgt_hamiltonian(2, 2.5) * v).real(),
                1e-12);
}

TEST(LGTHamiltonian, Hermitian) {
    LGTHamiltonian ham(TorusLattice(3), 1.3);
    const auto phi = oracle::random_state(18, 1);
    const auto psi = oracle::random_state(18, 2);
    const Amplitude a = inner_product(phi, ham.apply(psi));
    const Amplitude b = inner_product(psi, ham.apply(phi));
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-10);
    EXPECT_NEAR(inner_product(psi, ham.apply(psi)).imag(), 0.0, 1e-12);
}

TEST(LGTHamiltonian, CommutesWithStarsAndThooftLoops) {
    const TorusLattice lat(3);
    LGTHamiltonian ham(lat, 2.0);
    const auto psi = oracle::random_state(18, 5);
    std::vector<PauliString> symmetries;
    for (int v = 0; v < lat.num_vertices(); ++v) symmetries.push_back(star_operator(lat, v));
    for (auto dir : {Direction::kHorizontal, Direction::kVertical}) {
        symmetries.push_back(loop_operator(lat, noncontractible_loop(lat, LoopOperator::kThooft, dir, 1)));
    }
    for (const auto &s : symmetries) {
        StateVector a = psi;
        a.apply_pauli(s);
        a = ham.apply(a);
        StateVector b = ham.apply(psi);
        b.apply_pauli(s);
        double diff = 0;
        for (size_t i = 0; i < a.dimension(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
        EXPECT_LT(diff, 1e-12);
    }
}

TEST(LGTHamiltonian, L2GaugeSectorSpectrumMatchesDense) {
    const int L = 2;
    for (double h : {0.0, 1.0, 4.0}) {
        const Eigen::MatrixXcd q = sector_basis(8, star_matrices(L));
        ASSERT_EQ(q.cols(), 32);
        const Eigen::MatrixXcd reduced = q.adjoint() * oracle::lgt_hamiltonian(L, h) * q;
        const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(reduced).eigenvalues();
        const auto spectrum = LGTHamiltonian(TorusLattice(L), h).lowest_eigenpairs(10);
        ASSERT_EQ(spectrum.eigenvalues.size(), 10u);
        for (int i = 0; i < 10; ++i) {
            EXPECT_NEAR(spectrum.eigenvalues[i], ref(i), 1e-10) << "h=" << h << " i=" << i;
            EXPECT_LE(spectrum.residuals[i], 1e-8);
        }
    }
}

TEST(LGTHamiltonian, TauSectorSelection) {
    const TorusLattice lat(2);
    LGTHamiltonian ham(lat, 1.5);
    const auto sector = ham.lowest_eigenpairs(10, SectorSelection{true, 1, 1});
    // A_v = +1 and tau = ++ leave 2^(L^2 + 1) / 4 = 8 states at L = 2.
    EXPECT_EQ(sector.eigenvalues.size(), 8u);
    for (size_t i = 0; i < sector.eigenvalues.size(); ++i) {
        EXPECT_NEAR(sector.tau_h[i], 1.0, 1e-10);
        EXPECT_NEAR(sector.tau_v[i], 1.0, 1e-10);
        for (double a : star_expectations(lat, sector.eigenvectors[i])) EXPECT_NEAR(a, 1.0, 1e-10);
    }
}

TEST(LGTHamiltonian, L3ZeroCouplingGroundState) {
    const TorusLattice lat(3);
    LGTHamiltonian ham(lat, 0.0);
    const auto spectrum = ham.lowest_eigenpairs(1, SectorSelection{true, 1, 1});
    EXPECT_NEAR(spectrum.eigenvalues[0], 0.0, 1e-9);
    EXPECT_NEAR(fidelity(prepare_electric_gs(lat), spectrum.eigenvectors[0]), 1.0, 1e-10);
}

TEST(LGTHamiltonian, L3GroundStateSelfConsistency) {
    const TorusLattice lat(3);
    LGTHamiltonian ham(lat, 3.0);
    const auto spectrum = ham.lowest_eigenpairs(1, SectorSelection{true, 1, 1});
    EXPECT_LE(spectrum.residuals[0], 1e-8);
    EXPECT_NEAR(ham.energy(spectrum.eigenvectors[0]), spectrum.eigenvalues[0], 1e-8);
    EXPECT_NEAR(spectrum.eigenvectors[0].norm(), 1.0, 1e-12);
}

TEST(LGTHamiltonian, L3StrongCouplingQuadrupletAndGap) {
    const TorusLattice lat(3);
    LGTHamiltonian ham(lat, 5.0);
    const auto s = ham.lowest_eigenpairs(5);
    ASSERT_EQ(s.eigenvalues.size(), 5u);
    const double quad_spread = s.eigenvalues[3] - s.eigenvalues[0];
    const double gap = s.eigenvalues[4] - s.eigenvalues[3];
    EXPECT_GT(gap, 10 * quad_spread);
    EXPECT_GT(gap, 1.0);
    // The four lowest states sit in the four distinct 't Hooft sectors.
    std::set<std::pair<int, int>> sectors;
    for (int i = 0; i < 4; ++i) {
        sectors.insert({static_cast<int>(std::lround(s.tau_h[i])), static_cast<int>(std::lround(s.tau_v[i]))});
        EXPECT_NEAR(std::abs(s.tau_h[i]), 1.0, 1e-8);
        EXPECT_NEAR(std::abs(s.tau_v[i]), 1.0, 1e-8);
    }
    EXPECT_EQ(sectors.size(), 4u);
}

TEST(SectorLabels, ReferenceStates) {
    const TorusLattice lat(3);
    const auto [eh, ev] = sector_labels(lat, prepare_electric_gs(lat));
    EXPECT_NEAR(eh, 1.0, 1e-12);
    EXPECT_NEAR(ev, 1.0, 1e-12);
    auto tc = prepare_toric_code_gs(lat).first;
    const auto wh = noncontractible_loop(lat, LoopOperator::kWilson, Direction::kHorizontal);
    const auto wv = noncontractible_loop(lat, LoopOperator::kWilson, Direction::kVertical);
    auto pm = tc;
    apply_string(pm, wh);
    const auto [a, b] = sector_labels(lat, pm);
    EXPECT_NEAR(a, 1.0, 1e-12);
    EXPECT_NEAR(b, -1.0, 1e-12);
    auto mm = pm;
    apply_string(mm, wv);
    const auto [c, d] = sector_labels(lat, mm);
    EXPECT_NEAR(c, -1.0, 1e-12);
    EXPECT_NEAR(d, -1.0, 1e-12);
}

TEST(SpectrumCsv, HeaderAndRows) {
    SpectrumResult s;
    s.eigenvalues = {-1.5, 0.25};
    s.tau_h = {1, -1};
    s.tau_v = {1, 1};
    s.residuals = {1e-9, 2e-9};
    std::ostringstream out;
    write_spectrum_csv(out, s);
    EXPECT_EQ(out.str(), "index,eigenvalue,tau_h,tau_v,residual\n0,-1.5,1,1,1.0000000000000001e-09\n"
                         "1,0.25,-1,1,2.0000000000000001e-09\n");
}

}  // namespace
}  // namespace z2lgt
