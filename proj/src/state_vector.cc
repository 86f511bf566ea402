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

#include "z2lgt/state_vector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace z2lgt {

namespace gates {

Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r, r, -r};
}

Matrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Matrix2 pauli_y() { return {0.0, Amplitude(0, -1), Amplitude(0, 1), 0.0}; }
Matrix2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

Matrix2 rx(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, Amplitude(0, -s), Amplitude(0, -s), c};
}

Matrix2 rz(double theta) { return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)}; }

Matrix2 multiply(const Matrix2 &a, const Matrix2 &b) {
    return {
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    };
}

}  // namespace gates

namespace {

constexpr int kMaskBits = 64;

uint64_t single_bit(int q) { return uint64_t{1} << q; }

bool parity(uint64_t v) { return (std::popcount(v) & 1) != 0; }

// (a, b) <- (c a + i s b, i s a + c b): exp(i theta X) with c = cos, s = sin.
inline void x_rotate_pair(double *a, double *b, double c, double s) {
    const double ar = a[0], ai = a[1], br = b[0], bi = b[1];
    a[0] = c * ar - s * bi;
    a[1] = c * ai + s * br;
    b[0] = c * br - s * ai;
    b[1] = c * bi + s * ar;
}

void x_rotate_qubit(double *data, size_t dim, int q, double c, double s) {
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t j = base; j < base + stride; ++j) {
            x_rotate_pair(data + 2 * j, data + 2 * (j + stride), c, s);
        }
    }
}

}  // namespace

PauliString PauliString::x_on(std::span<const int> qubits) {
    PauliString p;
    for (int q : qubits) {
        if (q < 0 || q >= kMaskBits || (p.x_mask & single_bit(q))) {
            throw std::invalid_argument("bad or repeated qubit in X string");
        }
        p.x_mask |= single_bit(q);
    }
    return p;
}

PauliString PauliString::z_on(std::span<const int> qubits) {
    PauliString p;
    for (int q : qubits) {
        if (q < 0 || q >= kMaskBits || (p.z_mask & single_bit(q))) {
            throw std::invalid_argument("bad or repeated qubit in Z string");
        }
        p.z_mask |= single_bit(q);
    }
    return p;
}

PauliString PauliString::from_terms(std::span<const std::pair<int, char>> terms) {
    PauliString p;
    uint64_t seen = 0;
    for (const auto &[q, op] : terms) {
        if (q < 0 || q >= kMaskBits || (seen & single_bit(q))) {
            throw std::invalid_argument("bad or repeated qubit in Pauli string");
        }
        seen |= single_bit(q);
        switch (op) {
            case 'X':
                p.x_mask |= single_bit(q);
                break;
            case 'Z':
                p.z_mask |= single_bit(q);
                break;
            case 'Y':
                p.x_mask |= single_bit(q);
                p.z_mask |= single_bit(q);
                break;
            default:
                throw std::invalid_argument(std::string("unknown Pauli '") + op + "'");
        }
    }
    return p;
}

DiagonalField DiagonalField::from_z_products(int num_qubits, std::span<const uint64_t> masks) {
    if (num_qubits < 0 || num_qubits > StateVector::kDefaultMaxQubits) {
        throw std::length_error("diagonal field qubit count out of range");
    }
    if (masks.size() > 127) {
        throw std::length_error("too many terms for an int8 diagonal field");
    }
    DiagonalField field;
    field.num_qubits_ = num_qubits;
    const size_t dim = size_t{1} << num_qubits;
    field.values_.resize(dim);
    int lo = static_cast<int>(masks.size());
    int hi = -lo;
    for (size_t i = 0; i < dim; ++i) {
        int v = 0;
        for (uint64_t m : masks) {
            v += parity(i & m) ? -1 : 1;
        }
        field.values_[i] = static_cast<int8_t>(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    field.min_ = lo;
    field.max_ = hi;
    return field;
}

StateVector::StateVector(int num_qubits, int max_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) {
        throw std::invalid_argument("negative qubit count");
    }
    if (num_qubits > max_qubits || num_qubits >= kMaskBits) {
        throw std::length_error("state of " + std::to_string(num_qubits) + " qubits exceeds the cap of " +
                                std::to_string(max_qubits));
    }
    amplitudes_.assign(size_t{1} << num_qubits, Amplitude(0.0, 0.0));
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis_state(int num_qubits, uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const size_t dim = amplitudes.size();
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    StateVector s(std::countr_zero(dim));
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

StateVector StateVector::uniform_superposition(int num_qubits) {
    StateVector s(num_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dimension()));
    std::fill(s.amplitudes_.begin(), s.amplitudes_.end(), Amplitude(a, 0.0));
    return s;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits_) +
                                " qubits");
    }
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (auto &a : amplitudes_) {
        a /= n;
    }
}

void StateVector::apply_one_qubit(int q, const Matrix2 &u) {
    check_qubit(q);
    // U^dagger U == I within 1e-12 entrywise.
    const Amplitude d00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
    const Amplitude d11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
    const Amplitude d01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
    if (std::abs(d00 - 1.0) > 1e-12 || std::abs(d11 - 1.0) > 1e-12 || std::abs(d01) > 1e-12) {
        throw std::invalid_argument("single-qubit gate is not unitary");
    }
    const size_t stride = size_t{1} << q;
    const size_t dim = dimension();
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t j = base; j < base + stride; ++j) {
            const Amplitude a = amplitudes_[j];
            const Amplitude b = amplitudes_[j + stride];
            amplitudes_[j] = u[0] * a + u[1] * b;
            amplitudes_[j + stride] = u[2] * a + u[3] * b;
        }
    }
}

void StateVector::apply_hadamard(int q) {
    check_qubit(q);
    const double r = 1.0 / std::sqrt(2.0);
    const size_t stride = size_t{1} << q;
    const size_t dim = dimension();
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t j = base; j < base + stride; ++j) {
            const Amplitude a = amplitudes_[j];
            const Amplitude b = amplitudes_[j + stride];
            amplitudes_[j] = r * (a + b);
            amplitudes_[j + stride] = r * (a - b);
        }
    }
}

void StateVector::apply_rx(int q, double theta) {
    check_qubit(q);
    // RX(theta) = exp(i (-theta/2) X).
    x_rotate_qubit(reinterpret_cast<double *>(amplitudes_.data()), dimension(), q, std::cos(theta / 2),
                   -std::sin(theta / 2));
}

void StateVector::apply_rz(int q, double theta) {
    check_qubit(q);
    const Amplitude lo = std::polar(1.0, -theta / 2);
    const Amplitude hi = std::polar(1.0, theta / 2);
    const uint64_t m = single_bit(q);
    for (size_t i = 0; i < dimension(); ++i) {
        amplitudes_[i] *= (i & m) ? hi : lo;
    }
}

void StateVector::apply_x_rotation_all(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    auto *data = reinterpret_cast<double *>(amplitudes_.data());
    const size_t dim = dimension();
    // Low qubits are swept block by block so each block stays in L1.
    constexpr int kBlockQubits = 10;
    const int low = std::min(num_qubits_, kBlockQubits);
    const size_t block = size_t{1} << low;
    for (size_t base = 0; base < dim; base += block) {
        for (int q = 0; q < low; ++q) {
            x_rotate_qubit(data + 2 * base, block, q, c, s);
        }
    }
    for (int q = low; q < num_qubits_; ++q) {
        x_rotate_qubit(data, dim, q, c, s);
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    const uint64_t cm = single_bit(control);
    const uint64_t tm = single_bit(target);
    for (size_t i = 0; i < dimension(); ++i) {
        if ((i & cm) && !(i & tm)) {
            std::swap(amplitudes_[i], amplitudes_[i | tm]);
        }
    }
}

void StateVector::apply_zz_phase(std::span<const int> qubits, double theta) {
    if (qubits.empty()) {
        throw std::invalid_argument("zz phase needs at least one qubit");
    }
    uint64_t mask = 0;
    for (int q : qubits) {
        check_qubit(q);
        if (mask & single_bit(q)) {
            throw std::invalid_argument("duplicate qubit in zz phase");
        }
        mask |= single_bit(q);
    }
    const Amplitude even = std::polar(1.0, theta);
    const Amplitude odd = std::conj(even);
    for (size_t i = 0; i < dimension(); ++i) {
        amplitudes_[i] *= parity(i & mask) ? odd : even;
    }
}

void StateVector::apply_diagonal_phase(const DiagonalField &field, double theta) {
    if (field.num_qubits() != num_qubits_) {
        throw std::invalid_argument("diagonal field size mismatch");
    }
    const int lo = field.min_value();
    std::vector<Amplitude> table(static_cast<size_t>(field.max_value() - lo + 1));
    for (size_t k = 0; k < table.size(); ++k) {
        table[k] = std::polar(1.0, theta * static_cast<double>(lo + static_cast<int>(k)));
    }
    const auto values = field.values();
    for (size_t i = 0; i < dimension(); ++i) {
        amplitudes_[i] *= table[values[i] - lo];
    }
}

void StateVector::apply_pauli(const PauliString &p) {
    const uint64_t range = single_bit(num_qubits_) - 1;
    if ((p.x_mask | p.z_mask) & ~range) {
        throw std::out_of_range("Pauli string acts outside the register");
    }
    const int ny = std::popcount(p.x_mask & p.z_mask);
    static const Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude base = kIPow[ny & 3];
    auto phase = [&](uint64_t i) { return parity(i & p.z_mask) ? -base : base; };
    if (p.x_mask == 0) {
        for (size_t i = 0; i < dimension(); ++i) {
            amplitudes_[i] *= phase(i);
        }
        return;
    }
    // Pair i with j = i ^ x where i has the top x bit clear.
    const uint64_t top = uint64_t{1} << (63 - std::countl_zero(p.x_mask));
    for (size_t i = 0; i < dimension(); ++i) {
        if (i & top) {
            continue;
        }
        const size_t j = i ^ p.x_mask;
        const Amplitude ai = amplitudes_[i];
        const Amplitude aj = amplitudes_[j];
        amplitudes_[j] = phase(i) * ai;
        amplitudes_[i] = phase(j) * aj;
    }
}

double StateVector::expectation(const PauliString &p) const {
    const uint64_t range = single_bit(num_qubits_) - 1;
    if ((p.x_mask | p.z_mask) & ~range) {
        throw std::out_of_range("Pauli string acts outside the register");
    }
    const int ny = std::popcount(p.x_mask & p.z_mask);
    static const Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Amplitude acc = 0.0;
    for (size_t i = 0; i < dimension(); ++i) {
        const Amplitude term = std::conj(amplitudes_[i ^ p.x_mask]) * amplitudes_[i];
        acc += parity(i & p.z_mask) ? -term : term;
    }
    return (kIPow[ny & 3] * acc).real();
}

double StateVector::total_x_expectation() const {
    const auto *data = reinterpret_cast<const double *>(amplitudes_.data());
    const size_t dim = dimension();
    double acc = 0.0;
    for (int q = 0; q < num_qubits_; ++q) {
        const size_t stride = size_t{1} << q;
        double part = 0.0;
        for (size_t base = 0; base < dim; base += 2 * stride) {
            for (size_t j = base; j < base + stride; ++j) {
                const double *a = data + 2 * j;
                const double *b = data + 2 * (j + stride);
                part += a[0] * b[0] + a[1] * b[1];
            }
        }
        acc += 2.0 * part;
    }
    return acc;
}

double StateVector::diagonal_expectation(std::span<const double> diagonal) const {
    if (diagonal.size() != dimension()) {
        throw std::invalid_argument("diagonal size mismatch");
    }
    double acc = 0.0;
    for (size_t i = 0; i < dimension(); ++i) {
        acc += std::norm(amplitudes_[i]) * diagonal[i];
    }
    return acc;
}

double StateVector::diagonal_expectation(const DiagonalField &field) const {
    if (field.num_qubits() != num_qubits_) {
        throw std::invalid_argument("diagonal field size mismatch");
    }
    const auto values = field.values();
    double acc = 0.0;
    for (size_t i = 0; i < dimension(); ++i) {
        acc += std::norm(amplitudes_[i]) * values[i];
    }
    return acc;
}

Amplitude inner_product(const StateVector &bra, const StateVector &ket) {
    if (bra.dimension() != ket.dimension()) {
        throw std::invalid_argument("inner product of states with different dimensions");
    }
    Amplitude acc = 0.0;
    const auto a = bra.amplitudes();
    const auto b = ket.amplitudes();
    for (size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner_product(a, b)); }

namespace {

constexpr char kDumpMagic[4] = {'Z', '2', 'S', 'V'};

static_assert(std::endian::native == std::endian::little, "amplitude dumps assume a little-endian host");

}  // namespace

void write_amplitudes(std::ostream &out, const StateVector &state) {
    out.write(kDumpMagic, 4);
    const uint32_t n = static_cast<uint32_t>(state.num_qubits());
    out.write(reinterpret_cast<const char *>(&n), sizeof(n));
    out.write(reinterpret_cast<const char *>(state.amplitudes().data()),
              static_cast<std::streamsize>(state.dimension() * sizeof(Amplitude)));
    if (!out) {
        throw std::runtime_error("failed writing amplitude dump");
    }
}

StateVector read_amplitudes(std::istream &in) {
    char magic[4];
    uint32_t n = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char *>(&n), sizeof(n));
    if (!in || std::memcmp(magic, kDumpMagic, 4) != 0) {
        throw std::runtime_error("not an amplitude dump");
    }
    StateVector s(static_cast<int>(n));
    in.read(reinterpret_cast<char *>(s.amplitudes().data()),
            static_cast<std::streamsize>(s.dimension() * sizeof(Amplitude)));
    if (!in) {
        throw std::runtime_error("truncated amplitude dump");
    }
    return s;
}

}  // namespace z2lgt
