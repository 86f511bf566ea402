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

#ifndef Z2LGT_STATE_VECTOR_H
#define Z2LGT_STATE_VECTOR_H

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace z2lgt {

using Amplitude = std::complex<double>;

/// Row-major 2x2 matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Amplitude, 4>;

namespace gates {

Matrix2 identity();
Matrix2 hadamard();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
/// exp(-i theta X / 2).
Matrix2 rx(double theta);
/// exp(-i theta Z / 2).
Matrix2 rz(double theta);
Matrix2 multiply(const Matrix2 &a, const Matrix2 &b);

}  // namespace gates

/// Tensor product of single-qubit Paulis in symplectic form: bit q of
/// x_mask / z_mask says whether qubit q carries an X / Z factor (both set
/// means Y).
struct PauliString {
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;

    static PauliString x_on(std::span<const int> qubits);
    static PauliString z_on(std::span<const int> qubits);
    /// Builds from (qubit, 'X' | 'Y' | 'Z') pairs. Repeated qubits multiply
    /// up to a phase, which is rejected.
    static PauliString from_terms(std::span<const std::pair<int, char>> terms);

    bool operator==(const PauliString &) const = default;
};

/// Sum over plaquette-like terms of a product of Z's, tabulated once per
/// basis state: value[i] = sum_k (-1)^{popcount(i & mask_k)}. Diagonal
/// Hamiltonian terms and their exponentials become single table-driven passes.
class DiagonalField {
   public:
    DiagonalField() = default;
    static DiagonalField from_z_products(int num_qubits, std::span<const uint64_t> masks);

    int num_qubits() const { return num_qubits_; }
    int min_value() const { return min_; }
    int max_value() const { return max_; }
    std::span<const int8_t> values() const { return values_; }

   private:
    int num_qubits_ = 0;
    int min_ = 0;
    int max_ = 0;
    std::vector<int8_t> values_;
};

/// Dense state over n qubits. Qubit q is bit q of the amplitude index.
/// Gates mutate in place.
class StateVector {
   public:
    static constexpr int kDefaultMaxQubits = 26;

    /// |0...0>. Throws std::length_error above max_qubits.
    explicit StateVector(int num_qubits, int max_qubits = kDefaultMaxQubits);

    static StateVector basis_state(int num_qubits, uint64_t index);
    /// Takes ownership; the length must be a power of two. Not normalized.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
    /// Product of |+> on every qubit.
    static StateVector uniform_superposition(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    size_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    std::span<Amplitude> amplitudes() { return amplitudes_; }
    Amplitude operator[](size_t i) const { return amplitudes_[i]; }

    double norm() const;
    void normalize();

    /// Throws std::invalid_argument unless u is unitary within 1e-12.
    void apply_one_qubit(int q, const Matrix2 &u);
    void apply_hadamard(int q);
    void apply_rx(int q, double theta);
    void apply_rz(int q, double theta);
    /// exp(i theta X) on every qubit.
    void apply_x_rotation_all(double theta);
    void apply_cnot(int control, int target);
    /// Multiplies each amplitude by exp(i theta s), s = +1 when the listed
    /// qubits have even parity and -1 otherwise, i.e. exp(i theta Z...Z).
    void apply_zz_phase(std::span<const int> qubits, double theta);
    /// Multiplies amplitude i by exp(i theta field[i]).
    void apply_diagonal_phase(const DiagonalField &field, double theta);
    void apply_pauli(const PauliString &p);

    double expectation(const PauliString &p) const;
    /// Sum of <X_q> over all qubits.
    double total_x_expectation() const;
    double diagonal_expectation(std::span<const double> diagonal) const;
    double diagonal_expectation(const DiagonalField &field) const;

   private:
    void check_qubit(int q) const;

    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

Amplitude inner_product(const StateVector &bra, const StateVector &ket);

/// |<a|b>|^2; insensitive to global phase. Throws on dimension mismatch.
double fidelity(const StateVector &a, const StateVector &b);

/// Debug dump: "Z2SV", uint32 qubit count, then little-endian f64 (re, im)
/// pairs. Not a stable interchange format.
void write_amplitudes(std::ostream &out, const StateVector &state);
StateVector read_amplitudes(std::istream &in);

}  // namespace z2lgt

#endif
