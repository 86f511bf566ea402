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

#include "z2lgt/dual_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace z2lgt {

namespace {

std::vector<std::array<int, 2>> dual_bonds(const TorusLattice &lat) {
    std::vector<std::array<int, 2>> bonds;
    for (int l = 0; l < lat.num_links(); ++l) {
        bonds.push_back(lat.plaquettes_of_link(l));
    }
    return bonds;
}

DiagonalField bond_sum(int num_sites, const std::vector<std::array<int, 2>> &bonds) {
    std::vector<uint64_t> masks;
    for (const auto &[a, b] : bonds) {
        masks.push_back((uint64_t{1} << a) | (uint64_t{1} << b));
    }
    return DiagonalField::from_z_products(num_sites, masks);
}

int checked_size(int L, double h) {
    if (L < 2 || L * L > DualTFIM::kMaxQubits) {
        throw std::length_error("dual model supports 2 <= L with L^2 <= " + std::to_string(DualTFIM::kMaxQubits));
    }
    if (!(h >= 0.0)) {
        throw std::invalid_argument("coupling h must be >= 0");
    }
    return L;
}

uint64_t all_sites(int n) { return (uint64_t{1} << n) - 1; }

}  // namespace

DualTFIM::DualTFIM(int L, double h)
    : lat_(checked_size(L, h)),
      h_(h),
      bonds_(dual_bonds(lat_)),
      op_(bond_sum(lat_.num_plaquettes(), bonds_), static_cast<double>(bonds_.size()), -1.0, -h) {}

double DualTFIM::parity(const StateVector &psi) const {
    return psi.expectation(PauliString{all_sites(num_qubits()), 0});
}

SpectrumResult DualTFIM::lowest_eigenpairs(int k, uint64_t seed) const {
    if (k < 1) {
        throw std::invalid_argument("need at least one eigenpair");
    }
    const uint64_t mask = all_sites(num_qubits());
    const RealOperator op = op_.as_real_operator();
    const std::vector<RealLabelOperator> labels = {[mask](std::span<const double> in, std::span<double> out) {
        for (size_t i = 0; i < in.size(); ++i) {
            out[i] = in[i ^ mask];
        }
    }};
    const size_t half = op.dimension / 2;
    int want = 2 * k + 4;
    while (true) {
        EigenResult eig;
        if (op.dimension <= 1024) {
            eig = dense_eigenpairs(op, static_cast<int>(op.dimension));
        } else {
            EigenSolverOptions options;
            options.num_eigenpairs = want;
            options.seed = seed;
            eig = block_lanczos(op, options);
        }
        const auto par = resolve_degeneracies(op, eig, labels, 1e-7);
        SpectrumResult out;
        out.iterations = eig.iterations;
        for (size_t i = 0; i < eig.values.size() && static_cast<int>(out.eigenvalues.size()) < k; ++i) {
            if (par[i][0] > 0.0) {
                std::vector<Amplitude> amps(eig.vectors[i].begin(), eig.vectors[i].end());
                out.eigenvalues.push_back(eig.values[i]);
                out.eigenvectors.push_back(StateVector::from_amplitudes(std::move(amps)));
                out.residuals.push_back(eig.residuals[i]);
                // The even sector is the image of tau_h = tau_v = +1.
                out.tau_h.push_back(1.0);
                out.tau_v.push_back(1.0);
            }
        }
        if (static_cast<int>(out.eigenvalues.size()) == k || eig.values.size() >= op.dimension ||
            static_cast<size_t>(want) >= half) {
            if (static_cast<int>(out.eigenvalues.size()) < k && out.eigenvalues.size() < half) {
                throw ConvergenceError("could not collect the requested even-sector levels", out.residuals);
            }
            return out;
        }
        want *= 2;
    }
}

StateVector dual_ghz_state(int num_qubits) {
    StateVector psi(num_qubits);
    const double a = 1.0 / std::sqrt(2.0);
    psi.amplitudes()[0] = a;
    psi.amplitudes()[psi.dimension() - 1] = a;
    return psi;
}

StateVector dual_plus_state(int num_qubits) { return StateVector::uniform_superposition(num_qubits); }

StateVector DualQaoa::initial_state(StartKind start) const {
    return start == StartKind::kElectric ? dual_ghz_state(num_qubits()) : dual_plus_state(num_qubits());
}

void DualQaoa::evolve_magnetic(StateVector &psi, double gamma) const { psi.apply_x_rotation_all(gamma); }

void DualQaoa::evolve_electric(StateVector &psi, double beta) const {
    psi.apply_diagonal_phase(model_.bond_field(), beta);
}

double dual_energy(const DualTFIM &model, const StateVector &psi) { return model.energy(psi); }

StateVector dual_qaoa_evolve(const StateVector &psi0, const Schedule &schedule, const DualTFIM &model) {
    DualQaoa system(model.linear_size(), model.coupling());
    StateVector psi = psi0;
    system.evolve_in_place(psi, schedule);
    return psi;
}

double dual_wilson_expectation(const DualTFIM &model, const StateVector &psi, const LoopSpec &rect) {
    if (rect.kind != LoopKind::kRectangle || rect.op != LoopOperator::kWilson || rect.interior.empty()) {
        throw std::invalid_argument("dual Wilson loops need a contractible rectangle");
    }
    if (psi.num_qubits() != model.num_qubits()) {
        throw std::invalid_argument("state does not live on the dual lattice");
    }
    return psi.expectation(PauliString::x_on(rect.interior));
}

SpectrumResult dual_lowest_eigenpairs(const DualTFIM &model, int k, uint64_t seed) {
    return model.lowest_eigenpairs(k, seed);
}

}  // namespace z2lgt
