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

#ifndef Z2LGT_DUAL_MODEL_H
#define Z2LGT_DUAL_MODEL_H

#include <array>
#include <cstdint>
#include <vector>

#include "z2lgt/circuits.h"
#include "z2lgt/hamiltonian.h"
#include "z2lgt/lattice.h"
#include "z2lgt/state_vector.h"

namespace z2lgt {

/// Transverse-field Ising model on the dual lattice,
/// H = sum_<p,p'> (1 - Z_p Z_p') - h sum_p X_p,
/// with one site per plaquette and one bond per link. It reproduces the gauge
/// model in its A_v = +1, tau_h = tau_v = +1 sector on the states with
/// prod_p X_p = +1.
class DualTFIM {
   public:
    static constexpr int kMaxQubits = 26;

    /// Throws std::length_error when L^2 > kMaxQubits and
    /// std::invalid_argument when h < 0.
    DualTFIM(int L, double h);

    const TorusLattice &lattice() const { return lat_; }
    int linear_size() const { return lat_.linear_size(); }
    double coupling() const { return h_; }
    int num_qubits() const { return lat_.num_plaquettes(); }
    /// Bond b joins the two plaquettes sharing link b.
    const std::vector<std::array<int, 2>> &bonds() const { return bonds_; }
    /// sum_bonds Z_p Z_p' tabulated over basis states.
    const DiagonalField &bond_field() const { return op_.diagonal(); }
    const TransverseFieldOperator &as_operator() const { return op_; }

    double energy(const StateVector &psi) const { return op_.expectation(psi); }
    /// <prod_p X_p>.
    double parity(const StateVector &psi) const;

    /// Lowest k eigenpairs in the prod X = +1 sector. Solves for extra levels
    /// and keeps the even ones, widening the search until k are found.
    SpectrumResult lowest_eigenpairs(int k, uint64_t seed = 0x5eed) const;

   private:
    TorusLattice lat_;
    double h_;
    std::vector<std::array<int, 2>> bonds_;
    TransverseFieldOperator op_;
};

/// (|0...0> + |1...1>) / sqrt(2); the image of all links in |+>.
StateVector dual_ghz_state(int num_qubits);
/// All sites in |+>; the image of the toric-code state.
StateVector dual_plus_state(int num_qubits);

class DualQaoa : public QaoaSystem {
   public:
    DualQaoa(int L, double h) : model_(L, h) {}

    const DualTFIM &model() const { return model_; }
    int num_qubits() const override { return model_.num_qubits(); }
    StateVector initial_state(StartKind start) const override;
    /// exp(i gamma sum_p X_p).
    void evolve_magnetic(StateVector &psi, double gamma) const override;
    /// exp(i beta sum_bonds Z Z), i.e. exp(-i beta H_E) up to phase.
    void evolve_electric(StateVector &psi, double beta) const override;
    double energy(const StateVector &psi) const override { return model_.energy(psi); }
    const TransverseFieldOperator &hamiltonian() const override { return model_.as_operator(); }

   private:
    DualTFIM model_;
};

double dual_energy(const DualTFIM &model, const StateVector &psi);

/// QAOA evolution from psi0 with the same (gamma, beta) semantics as the
/// direct model.
StateVector dual_qaoa_evolve(const StateVector &psi0, const Schedule &schedule, const DualTFIM &model);

/// <W> for a contractible rectangle, evaluated as the X product over the
/// plaquettes it encloses. Throws std::invalid_argument for other loops.
double dual_wilson_expectation(const DualTFIM &model, const StateVector &psi, const LoopSpec &rect);

SpectrumResult dual_lowest_eigenpairs(const DualTFIM &model, int k, uint64_t seed = 0x5eed);

}  // namespace z2lgt

#endif
