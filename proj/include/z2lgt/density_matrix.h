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

#ifndef Z2LGT_DENSITY_MATRIX_H
#define Z2LGT_DENSITY_MATRIX_H

#include <span>

#include <Eigen/Dense>

#include "z2lgt/state_vector.h"

namespace z2lgt {

/// Largest subsystem reduced_density_matrix will materialize.
inline constexpr int kMaxReducedQubits = 12;

/// Eigenvalues below this are dropped from entropy sums.
inline constexpr double kEntropyCutoff = 1e-14;

/// Dense Hermitian density matrix over k qubits. Bit j of a row index is the
/// j-th qubit of the subset it was reduced onto.
class DensityMatrix {
   public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    int num_qubits() const { return num_qubits_; }
    const Eigen::MatrixXcd &entries() const { return entries_; }
    double trace() const { return entries_.trace().real(); }
    /// Ascending eigenvalues.
    Eigen::VectorXd eigenvalues() const;

   private:
    int num_qubits_;
    Eigen::MatrixXcd entries_;
};

/// Traces out every qubit not in `keep`. Throws std::length_error when
/// |keep| > kMaxReducedQubits and std::invalid_argument on bad or repeated
/// qubits.
DensityMatrix reduced_density_matrix(const StateVector &psi, std::span<const int> keep);

/// -sum lambda ln lambda over eigenvalues above kEntropyCutoff, in nats.
double von_neumann_entropy(const DensityMatrix &rho);

}  // namespace z2lgt

#endif
