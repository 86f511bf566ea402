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

#ifndef Z2LGT_HAMILTONIAN_H
#define Z2LGT_HAMILTONIAN_H

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "z2lgt/eigensolver.h"
#include "z2lgt/lattice.h"
#include "z2lgt/state_vector.h"

namespace z2lgt {

/// H = offset + scale * F(i) + field * sum_q X_q, where F is a tabulated
/// integer-valued diagonal. Both the gauge model and its dual have this form,
/// and it is real symmetric in the computational basis.
class TransverseFieldOperator {
   public:
    TransverseFieldOperator(DiagonalField diagonal, double offset, double scale, double field);

    int num_qubits() const { return diagonal_.num_qubits(); }
    size_t dimension() const { return size_t{1} << num_qubits(); }
    const DiagonalField &diagonal() const { return diagonal_; }
    double offset() const { return offset_; }
    double scale() const { return scale_; }
    double field() const { return field_; }

    /// out = H in, on real vectors.
    void apply(std::span<const double> in, std::span<double> out) const;
    StateVector apply(const StateVector &psi) const;
    /// <psi|H|psi> for normalized psi.
    double expectation(const StateVector &psi) const;
    RealOperator as_real_operator() const;

   private:
    DiagonalField diagonal_;
    double offset_;
    double scale_;
    double field_;
};

/// Which part of the direct model's Hilbert space an eigensolve explores.
struct SectorSelection {
    /// Restrict to A_v = +1 for every vertex.
    bool gauge_invariant = true;
    /// 0 leaves the 't Hooft eigenvalue free; +1 or -1 fixes it.
    int tau_h = 0;
    int tau_v = 0;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;
    std::vector<StateVector> eigenvectors;
    std::vector<double> residuals;
    std::vector<double> tau_h;
    std::vector<double> tau_v;
    int iterations = 0;
};

/// H = sum_l (1 - X_l) - h sum_p B_p on the 2L^2 link qubits.
class LGTHamiltonian {
   public:
    static constexpr int kMaxQubits = 26;

    /// Throws std::length_error when 2L^2 > kMaxQubits and
    /// std::invalid_argument when h < 0.
    LGTHamiltonian(const TorusLattice &lat, double h);

    const TorusLattice &lattice() const { return lat_; }
    double coupling() const { return h_; }
    int num_qubits() const { return lat_.num_links(); }
    /// sum_p B_p tabulated over basis states.
    const DiagonalField &plaquette_field() const { return op_.diagonal(); }
    const TransverseFieldOperator &as_operator() const { return op_; }

    StateVector apply(const StateVector &psi) const { return op_.apply(psi); }
    double energy(const StateVector &psi) const { return op_.expectation(psi); }
    /// <sum_l (1 - X_l)>.
    double electric_energy(const StateVector &psi) const;
    /// <-sum_p B_p>, without the coupling.
    double magnetic_energy(const StateVector &psi) const;

    /// Lowest k <= 10 eigenpairs inside `sector`, sorted ascending with
    /// degenerate levels ordered by <tau_h> then <tau_v>, descending.
    /// Throws ConvergenceError on failure.
    SpectrumResult lowest_eigenpairs(int k, const SectorSelection &sector = {}, uint64_t seed = 0x5eed) const;

   private:
    TorusLattice lat_;
    double h_;
    TransverseFieldOperator op_;
};

/// Orthogonal projector onto `sector` acting on real vectors over the links.
void project_sector(const TorusLattice &lat, const SectorSelection &sector, std::span<double> v);

/// (<tau_h>, <tau_v>) using the offset-0 't Hooft lines.
std::pair<double, double> sector_labels(const TorusLattice &lat, const StateVector &psi);

/// <A_v> for every vertex.
std::vector<double> star_expectations(const TorusLattice &lat, const StateVector &psi);
/// <B_p> for every plaquette.
std::vector<double> plaquette_expectations(const TorusLattice &lat, const StateVector &psi);

/// Pauli strings for the lattice operators.
PauliString star_operator(const TorusLattice &lat, int v);
PauliString plaquette_operator(const TorusLattice &lat, int p);
/// X string for a 't Hooft loop, Z string for a Wilson loop.
PauliString loop_operator(const TorusLattice &lat, const LoopSpec &loop);

/// CSV with header "index,eigenvalue,tau_h,tau_v,residual".
void write_spectrum_csv(std::ostream &out, const SpectrumResult &spectrum);

}  // namespace z2lgt

#endif
