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

// Dense-matrix reference implementations for small systems. Everything here
// is built from Kronecker products and explicit coordinates so that it shares
// no code with the kernels under test.

#ifndef Z2LGT_TESTS_DENSE_ORACLE_H
#define Z2LGT_TESTS_DENSE_ORACLE_H

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "z2lgt/state_vector.h"

namespace z2lgt::oracle {

using Cd = std::complex<double>;

inline Eigen::Matrix2cd single(char p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Cd(0, -1), Cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        case 'H':
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            break;
        default:
            m.setIdentity();
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Embeds one-qubit matrices (qubit -> 2x2) into n qubits. Qubit q is bit q
/// of the index, so the highest qubit is the leftmost Kronecker factor.
inline Eigen::MatrixXcd embed(int n, const std::map<int, Eigen::Matrix2cd> &ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        auto it = ops.find(q);
        out = kron(out, it == ops.end() ? Eigen::Matrix2cd::Identity() : it->second);
    }
    return out;
}

inline Eigen::MatrixXcd pauli(int n, const std::map<int, char> &ops) {
    std::map<int, Eigen::Matrix2cd> m;
    for (const auto &[q, p] : ops) {
        m[q] = single(p);
    }
    return embed(n, m);
}

inline Eigen::MatrixXcd pauli_product(int n, const std::vector<int> &qubits, char p) {
    std::map<int, char> ops;
    for (int q : qubits) {
        ops[q] = p;
    }
    return pauli(n, ops);
}

/// CNOT from its definition |c,t> -> |c, t xor c>.
inline Eigen::MatrixXcd cnot(int n, int control, int target) {
    const int dim = 1 << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const int j = ((i >> control) & 1) ? (i ^ (1 << target)) : i;
        m(j, i) = 1;
    }
    return m;
}

/// exp(-i t A) for Hermitian A.
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd &a, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXcd phases(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        phases(i) = std::polar(1.0, -t * es.eigenvalues()(i));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Eigen::VectorXcd to_eigen(const StateVector &psi) {
    Eigen::VectorXcd v(psi.dimension());
    for (size_t i = 0; i < psi.dimension(); ++i) {
        v(i) = psi[i];
    }
    return v;
}

inline StateVector from_eigen(const Eigen::VectorXcd &v) {
    return StateVector::from_amplitudes(std::vector<Amplitude>(v.data(), v.data() + v.size()));
}

inline StateVector random_state(int n, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    std::vector<Amplitude> amps(size_t{1} << n);
    for (auto &a : amps) {
        a = {dist(gen), dist(gen)};
    }
    StateVector psi = StateVector::from_amplitudes(std::move(amps));
    psi.normalize();
    return psi;
}

/// |<a|b>|^2 for Eigen vectors.
inline double overlap2(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) { return std::norm(a.dot(b)); }

// Explicit torus geometry, written from coordinates. Link (x, y, o) with
// o = 0 horizontal (to (x+1, y)) and o = 1 vertical (to (x, y+1)).
struct Geometry {
    int L;
    int link(int x, int y, int o) const { return 2 * (((y % L + L) % L) * L + ((x % L + L) % L)) + o; }
    std::vector<int> plaquette(int x, int y) const {
        return {link(x, y, 0), link(x + 1, y, 1), link(x, y + 1, 0), link(x, y, 1)};
    }
    std::vector<int> star(int x, int y) const {
        return {link(x, y, 0), link(x - 1, y, 0), link(x, y, 1), link(x, y - 1, 1)};
    }
};

/// sum_l (1 - X_l) - h sum_p B_p as a dense matrix.
inline Eigen::MatrixXcd lgt_hamiltonian(int L, double h) {
    const Geometry g{L};
    const int n = 2 * L * L;
    const int dim = 1 << n;
    Eigen::MatrixXcd hm = Eigen::MatrixXcd::Zero(dim, dim);
    for (int l = 0; l < n; ++l) {
        hm += Eigen::MatrixXcd::Identity(dim, dim) - pauli(n, {{l, 'X'}});
    }
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            hm -= h * pauli_product(n, g.plaquette(x, y), 'Z');
        }
    }
    return hm;
}

}  // namespace z2lgt::oracle

#endif
