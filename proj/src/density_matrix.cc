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

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace z2lgt {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    const auto dim = static_cast<size_t>(entries_.rows());
    if (entries_.rows() != entries_.cols() || dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("density matrix must be square with power-of-two size");
    }
    num_qubits_ = std::countr_zero(dim);
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

DensityMatrix reduced_density_matrix(const StateVector &psi, std::span<const int> keep) {
    const int n = psi.num_qubits();
    const int k = static_cast<int>(keep.size());
    if (k > kMaxReducedQubits) {
        throw std::length_error("reduced density matrix over " + std::to_string(k) + " qubits exceeds the cap of " +
                                std::to_string(kMaxReducedQubits));
    }
    uint64_t keep_mask = 0;
    for (int q : keep) {
        if (q < 0 || q >= n || (keep_mask >> q & 1)) {
            throw std::invalid_argument("bad or repeated qubit in reduced subset");
        }
        keep_mask |= uint64_t{1} << q;
    }
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (!(keep_mask >> q & 1)) {
            rest.push_back(q);
        }
    }
    // psi as a (kept x traced) matrix; rho = M M^dagger.
    const Eigen::Index rows = Eigen::Index{1} << k;
    const Eigen::Index cols = Eigen::Index{1} << (n - k);
    Eigen::MatrixXcd m(rows, cols);
    const auto amps = psi.amplitudes();
    for (Eigen::Index e = 0; e < cols; ++e) {
        uint64_t base = 0;
        for (size_t j = 0; j < rest.size(); ++j) {
            base |= static_cast<uint64_t>((e >> j) & 1) << rest[j];
        }
        for (Eigen::Index a = 0; a < rows; ++a) {
            uint64_t i = base;
            for (int j = 0; j < k; ++j) {
                i |= static_cast<uint64_t>((a >> j) & 1) << keep[j];
            }
            m(a, e) = amps[i];
        }
    }
    return DensityMatrix(m * m.adjoint());
}

double von_neumann_entropy(const DensityMatrix &rho) {
    const Eigen::VectorXd lambda = rho.eigenvalues();
    double s = 0.0;
    for (double l : lambda) {
        if (l > kEntropyCutoff) {
            s -= l * std::log(l);
        }
    }
    return s;
}

}  // namespace z2lgt
