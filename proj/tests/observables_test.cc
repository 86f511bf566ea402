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

#include "z2lgt/observables.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "z2lgt/density_matrix.h"
#include "z2lgt/optimizer.h"

namespace z2lgt {
namespace {

const std::vector<std::pair<int, int>> kExtents = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};

TEST(WilsonScan, ReferenceStates) {
    const TorusLattice lat(3);
    const auto tc = prepare_toric_code_gs(lat).first;
    for (const auto &[extent, w] : wilson_scan(lat, tc, kExtents)) EXPECT_NEAR(w, 1.0, 1e-12);
    for (const auto &[extent, w] : wilson_scan(lat, prepare_electric_gs(lat), kExtents)) EXPECT_NEAR(w, 0.0, 1e-12);
    const DualTFIM model(3, 1.0);
    for (const auto &[extent, w] : wilson_scan(model, dual_plus_state(9), kExtents)) EXPECT_NEAR(w, 1.0, 1e-12);
    for (const auto &[extent, w] : wilson_scan(model, dual_ghz_state(9), kExtents)) EXPECT_NEAR(w, 0.0, 1e-12);
    EXPECT_THROW(wilson_scan(lat, tc, {{3, 1}}), std::invalid_argument);
    EXPECT_THROW(wilson_scan(lat, tc, {{0, 1}}), std::invalid_argument);
}

TEST(WilsonScan, DirectAndDualGroundStatesAgree) {
    const TorusLattice lat(3);
    const double h = 2.0;
    const auto direct = LGTHamiltonian(lat, h).lowest_eigenpairs(1, SectorSelection{true, 1, 1});
    const DualTFIM model(3, h);
    const auto dual = dual_lowest_eigenpairs(model, 1);
    const auto a = wilson_scan(lat, direct.eigenvectors[0], kExtents);
    const auto b = wilson_scan(model, dual.eigenvectors[0], kExtents);
    for (const auto &extent : kExtents) {
        EXPECT_NEAR(a.at(extent), b.at(extent), 1e-9);
        EXPECT_GT(a.at(extent), 0.0);
    }
    // A single translate agrees with the average on a translation-invariant state.
    EXPECT_NEAR(direct.eigenvectors[0].expectation(loop_operator(lat, wilson_rectangle(lat, 2, 1, 2, 1))),
                a.at({2, 1}), 1e-9);
}

WilsonTable synthetic(double chi, double delta, double c) {
    WilsonTable t;
    for (int lx = 1; lx <= 4; ++lx) {
        for (int ly = 1; ly <= 4; ++ly) {
            t[{lx, ly}] = std::exp(c - chi * lx * ly - delta * 2 * (lx + ly));
        }
    }
    return t;
}

TEST(Creutz, SyntheticTables) {
    for (int l : {2, 3, 4}) {
        EXPECT_NEAR(creutz_ratio(synthetic(0.7, 0.0, 0.0), l).value, 0.7, 1e-12);
        EXPECT_NEAR(creutz_ratio(synthetic(0.0, 0.3, 0.0), l).value, 0.0, 1e-12);
        EXPECT_NEAR(creutz_ratio(synthetic(0.25, 0.4, -0.5), l).value, 0.25, 1e-12);
        EXPECT_FALSE(creutz_ratio(synthetic(0.25, 0.4, -0.5), l).confined_indeterminate);
    }
    const auto ones = synthetic(0.0, 0.0, 0.0);
    EXPECT_EQ(creutz_ratio(ones, 2).value, 0.0);
}

TEST(Creutz, FloorAndErrors) {
    auto t = synthetic(0.5, 0.0, 0.0);
    t[{2, 2}] = 5e-7;
    const auto r = creutz_ratio(t, 2);
    EXPECT_TRUE(r.confined_indeterminate);
    EXPECT_TRUE(std::isnan(r.value));
    t[{2, 2}] = -0.1;
    EXPECT_TRUE(creutz_ratio(t, 2).confined_indeterminate);
    EXPECT_THROW(creutz_ratio(t, 1), std::invalid_argument);
    EXPECT_THROW(creutz_ratio(WilsonTable{{{1, 1}, 0.5}}, 2), std::out_of_range);
}

TEST(Creutz, ToricCodeIsZero) {
    const TorusLattice lat(3);
    const auto table = wilson_scan(lat, prepare_toric_code_gs(lat).first, kExtents);
    EXPECT_NEAR(creutz_ratio(table, 2).value, 0.0, 1e-12);
    EXPECT_TRUE(creutz_ratio(wilson_scan(lat, prepare_electric_gs(lat), kExtents), 2).confined_indeterminate);
}

TEST(Tripartition, FixtureMatchesStandardGeometry) {
    const TorusLattice lat(3);
    const auto fixture = Tripartition::from_file(lat, std::string(Z2LGT_FIXTURE_DIR) + "/tripartition_L3.txt");
    const auto standard = Tripartition::standard(lat);
    EXPECT_EQ(fixture.a(), standard.a());
    EXPECT_EQ(fixture.b(), standard.b());
    EXPECT_EQ(fixture.c(), standard.c());
    EXPECT_EQ(fixture.cut_vertices(), 5);
    EXPECT_EQ(fixture.abc().size(), 6u);
}

TEST(Tripartition, RejectsBadGeometry) {
    const TorusLattice lat(3);
    const int h00 = lat.horizontal_link(0, 0);
    EXPECT_THROW(Tripartition(lat, {h00}, {h00}, {lat.vertical_link(0, 0)}), std::invalid_argument);
    EXPECT_THROW(Tripartition(lat, {h00}, {}, {lat.vertical_link(0, 0)}), std::invalid_argument);
    // h(0,0) and h(2,2)... are not connected through any shared vertex.
    EXPECT_THROW(Tripartition(lat, {h00}, {lat.horizontal_link(1, 1)}, {lat.vertical_link(2, 2)}),
                 std::invalid_argument);
    EXPECT_THROW(Tripartition::parse(lat, "N_v 4\nA 0 0 h\nA 0 1 h\nB 0 0 v\nB 1 0 v\nC 1 1 h\nC 1 1 v\n"),
                 std::invalid_argument);
    EXPECT_THROW(Tripartition::parse(lat, "L 4\nA 0 0 h\nB 0 0 v\nC 1 0 v\n"), std::invalid_argument);
    EXPECT_THROW(Tripartition::parse(lat, "D 0 0 h\n"), std::invalid_argument);
    EXPECT_THROW(Tripartition::parse(lat, "A 0 0 x\n"), std::invalid_argument);
    EXPECT_THROW(Tripartition::standard(TorusLattice(2)), std::invalid_argument);
    EXPECT_THROW(Tripartition::from_file(lat, "/nonexistent/file"), std::invalid_argument);
}

TEST(TopologicalEntropy, ToricCode) {
    const TorusLattice lat(3);
    const auto part = Tripartition::standard(lat);
    const auto r = topological_entropy(prepare_toric_code_gs(lat).first, part);
    const double ln2 = std::numbers::ln2;
    EXPECT_NEAR(r.s_abc, 4 * ln2, 1e-8);
    EXPECT_NEAR(r.s_topo, -ln2, 1e-8);
    EXPECT_NEAR(r.s_topo, r.s_abc - r.cut_vertices * ln2, 1e-9);
    EXPECT_NEAR(r.s_a, 2 * ln2, 1e-9);
    EXPECT_NEAR(r.s_ab, 3 * ln2, 1e-9);
    EXPECT_EQ(r.cut_vertices, 5);
}

TEST(TopologicalEntropy, ProductStatesVanish) {
    const TorusLattice lat(3);
    const auto part = Tripartition::standard(lat);
    for (const auto &psi : {prepare_electric_gs(lat), StateVector(18)}) {
        const auto r = topological_entropy(psi, part);
        for (double s : {r.s_a, r.s_b, r.s_c, r.s_ab, r.s_bc, r.s_ac, r.s_abc, r.s_topo}) EXPECT_NEAR(s, 0.0, 1e-12);
    }
}

TEST(TopologicalEntropy, MatchesDenseOracleOnRandomState) {
    // Partial trace through explicit matrices on a 3x3 state is too large;
    // check the combination on an L=3 state against direct region entropies.
    const TorusLattice lat(3);
    const auto psi = oracle::random_state(18, 11);
    const auto part = Tripartition::standard(lat);
    const auto r = topological_entropy(psi, part);
    EXPECT_NEAR(r.s_topo, r.s_a + r.s_b + r.s_c - r.s_ab - r.s_bc - r.s_ac + r.s_abc, 1e-14);
    EXPECT_NEAR(r.s_abc, von_neumann_entropy(reduced_density_matrix(psi, part.abc())), 1e-14);
}

Schedule optimized_magnetic_schedule(double h, int P) {
    const Objective dual(ObjectiveSpec{ModelKind::kDual, 3, h, P, StartKind::kMagnetic}, false);
    TwoStepOptions options;
    options.n_restarts = 3;
    return two_step_optimize(dual, options).best;
}

TEST(SectorEnergies, LabelsOrthogonalityAndDegeneracy) {
    const TorusLattice lat(3);
    const DirectQaoa system(lat, 5.0);
    const Schedule schedule = optimized_magnetic_schedule(5.0, 3);
    const auto sectors = sector_energies(system, schedule);
    ASSERT_EQ(sectors.size(), 4u);
    const double expected[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(sectors[k].tau_h, expected[k][0], 1e-10) << sectors[k].label;
        EXPECT_NEAR(sectors[k].tau_v, expected[k][1], 1e-10) << sectors[k].label;
        for (int j = 0; j < k; ++j) EXPECT_LE(std::abs(inner_product(sectors[j].state, sectors[k].state)), 1e-10);
    }
    EXPECT_EQ(sectors[1].label, "+-");
    EXPECT_NEAR(sectors[1].energy, sectors[2].energy, 1e-9);
    EXPECT_NEAR(sectors[0].energy, system.energy(system.evolve(schedule)), 1e-12);
}

TEST(SectorEnergies, StringBeforeOrAfterEvolution) {
    // The string commutes with the magnetic term only, so the two orders give
    // different states in the same sector; dressing the start state first
    // never does worse on this schedule.
    const TorusLattice lat(3);
    const DirectQaoa system(lat, 5.0);
    const Schedule schedule = optimized_magnetic_schedule(5.0, 6);
    const auto after = sector_energies(system, schedule, StringOrder::kAfterEvolution);
    const auto before = sector_energies(system, schedule, StringOrder::kBeforeEvolution);
    EXPECT_NEAR(before[0].energy, after[0].energy, 1e-12);
    EXPECT_NEAR(before[1].energy, before[2].energy, 1e-9);
    for (int k = 0; k < 4; ++k) {
        EXPECT_LE(before[k].energy, after[k].energy + 1e-9) << after[k].label;
        EXPECT_NEAR(before[k].tau_h, after[k].tau_h, 1e-10);
        EXPECT_NEAR(before[k].tau_v, after[k].tau_v, 1e-10);
    }
}

}  // namespace
}  // namespace z2lgt
