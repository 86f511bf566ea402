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

#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace z2lgt {

namespace {

template <typename T>
void apply_transverse(const DiagonalField &diag, double offset, double scale, double field, std::span<const T> in,
                      std::span<T> out) {
    const auto values = diag.values();
    const size_t dim = in.size();
    for (size_t i = 0; i < dim; ++i) {
        out[i] = (offset + scale * values[i]) * in[i];
    }
    if (field == 0.0) {
        return;
    }
    for (int q = 0; q < diag.num_qubits(); ++q) {
        const size_t stride = size_t{1} << q;
        for (size_t base = 0; base < dim; base += 2 * stride) {
            for (size_t j = base; j < base + stride; ++j) {
                out[j] += field * in[j + stride];
                out[j + stride] += field * in[j];
            }
        }
    }
}

// v <- (v + sign * X_mask v) / 2.
void project_x_string(uint64_t mask, int sign, std::span<double> v) {
    const uint64_t top = uint64_t{1} << (63 - std::countl_zero(mask));
    for (size_t i = 0; i < v.size(); ++i) {
        if (i & top) {
            continue;
        }
        const size_t j = i ^ mask;
        const double a = v[i];
        const double b = v[j];
        v[i] = 0.5 * (a + sign * b);
        v[j] = 0.5 * (b + sign * a);
    }
}

RealLabelOperator x_string_label(uint64_t mask) {
    return [mask](std::span<const double> in, std::span<double> out) {
        for (size_t i = 0; i < in.size(); ++i) {
            out[i] = in[i ^ mask];
        }
    };
}

StateVector to_state(const std::vector<double> &v) {
    std::vector<Amplitude> amps(v.begin(), v.end());
    return StateVector::from_amplitudes(std::move(amps));
}

DiagonalField plaquette_sum(const TorusLattice &lat) {
    std::vector<uint64_t> masks;
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        const auto links = lat.plaquette(p).as_array();
        masks.push_back(lat.link_mask({links.begin(), links.end()}));
    }
    return DiagonalField::from_z_products(lat.num_links(), masks);
}

const TorusLattice &checked(const TorusLattice &lat, double h) {
    if (lat.num_links() > LGTHamiltonian::kMaxQubits) {
        throw std::length_error("direct model on L=" + std::to_string(lat.linear_size()) + " needs " +
                                std::to_string(lat.num_links()) + " qubits; use the dual model");
    }
    if (!(h >= 0.0)) {
        throw std::invalid_argument("coupling h must be >= 0");
    }
    return lat;
}

}  // namespace

TransverseFieldOperator::TransverseFieldOperator(DiagonalField diagonal, double offset, double scale, double field)
    : diagonal_(std::move(diagonal)), offset_(offset), scale_(scale), field_(field) {}

void TransverseFieldOperator::apply(std::span<const double> in, std::span<double> out) const {
    if (in.size() != dimension() || out.size() != dimension()) {
        throw std::invalid_argument("operator dimension mismatch");
    }
    apply_transverse<double>(diagonal_, offset_, scale_, field_, in, out);
}

StateVector TransverseFieldOperator::apply(const StateVector &psi) const {
    if (psi.num_qubits() != num_qubits()) {
        throw std::invalid_argument("operator dimension mismatch");
    }
    StateVector out(num_qubits());
    apply_transverse<Amplitude>(diagonal_, offset_, scale_, field_, psi.amplitudes(), out.amplitudes());
    return out;
}

double TransverseFieldOperator::expectation(const StateVector &psi) const {
    return offset_ + scale_ * psi.diagonal_expectation(diagonal_) + field_ * psi.total_x_expectation();
}

RealOperator TransverseFieldOperator::as_real_operator() const {
    RealOperator op;
    op.dimension = dimension();
    op.apply = [this](std::span<const double> in, std::span<double> out) { apply(in, out); };
    return op;
}

LGTHamiltonian::LGTHamiltonian(const TorusLattice &lat, double h)
    : lat_(checked(lat, h)), h_(h), op_(plaquette_sum(lat), lat.num_links(), -h, -1.0) {}

double LGTHamiltonian::electric_energy(const StateVector &psi) const {
    return lat_.num_links() - psi.total_x_expectation();
}

double LGTHamiltonian::magnetic_energy(const StateVector &psi) const {
    return -psi.diagonal_expectation(op_.diagonal());
}

SpectrumResult LGTHamiltonian::lowest_eigenpairs(int k, const SectorSelection &sector, uint64_t seed) const {
    if (k < 1 || k > 10) {
        throw std::invalid_argument("lowest_eigenpairs supports 1 <= k <= 10");
    }
    RealOperator op = op_.as_real_operator();
    if (sector.gauge_invariant || sector.tau_h != 0 || sector.tau_v != 0) {
        op.project = [this, sector](std::span<double> v) { project_sector(lat_, sector, v); };
    }
    EigenResult eig;
    if (op.dimension <= 1024) {
        eig = dense_eigenpairs(op, k);
    } else {
        EigenSolverOptions options;
        options.num_eigenpairs = k;
        options.seed = seed;
        eig = block_lanczos(op, options);
    }
    const uint64_t th = lat_.link_mask(noncontractible_loop(lat_, LoopOperator::kThooft, Direction::kHorizontal).links);
    const uint64_t tv = lat_.link_mask(noncontractible_loop(lat_, LoopOperator::kThooft, Direction::kVertical).links);
    const std::vector<RealLabelOperator> labels = {x_string_label(th), x_string_label(tv)};
    const auto tau = resolve_degeneracies(op, eig, labels, 1e-7);

    SpectrumResult out;
    out.iterations = eig.iterations;
    for (size_t i = 0; i < eig.values.size(); ++i) {
        out.eigenvalues.push_back(eig.values[i]);
        out.eigenvectors.push_back(to_state(eig.vectors[i]));
        out.residuals.push_back(eig.residuals[i]);
        out.tau_h.push_back(tau[i][0]);
        out.tau_v.push_back(tau[i][1]);
    }
    return out;
}

void project_sector(const TorusLattice &lat, const SectorSelection &sector, std::span<double> v) {
    if (sector.gauge_invariant) {
        for (int s = 0; s < lat.num_vertices(); ++s) {
            const auto &links = lat.star(s);
            project_x_string(lat.link_mask({links.begin(), links.end()}), +1, v);
        }
    }
    if (sector.tau_h != 0) {
        project_x_string(
            lat.link_mask(noncontractible_loop(lat, LoopOperator::kThooft, Direction::kHorizontal).links),
            sector.tau_h > 0 ? 1 : -1, v);
    }
    if (sector.tau_v != 0) {
        project_x_string(lat.link_mask(noncontractible_loop(lat, LoopOperator::kThooft, Direction::kVertical).links),
                         sector.tau_v > 0 ? 1 : -1, v);
    }
}

PauliString star_operator(const TorusLattice &lat, int v) {
    const auto &links = lat.star(v);
    return PauliString::x_on(links);
}

PauliString plaquette_operator(const TorusLattice &lat, int p) {
    const auto links = lat.plaquette(p).as_array();
    return PauliString::z_on(links);
}

PauliString loop_operator(const TorusLattice &lat, const LoopSpec &loop) {
    (void)lat;
    return loop.op == LoopOperator::kThooft ? PauliString::x_on(loop.links) : PauliString::z_on(loop.links);
}

std::pair<double, double> sector_labels(const TorusLattice &lat, const StateVector &psi) {
    const auto th = noncontractible_loop(lat, LoopOperator::kThooft, Direction::kHorizontal);
    const auto tv = noncontractible_loop(lat, LoopOperator::kThooft, Direction::kVertical);
    return {psi.expectation(loop_operator(lat, th)), psi.expectation(loop_operator(lat, tv))};
}

std::vector<double> star_expectations(const TorusLattice &lat, const StateVector &psi) {
    std::vector<double> out;
    for (int v = 0; v < lat.num_vertices(); ++v) {
        out.push_back(psi.expectation(star_operator(lat, v)));
    }
    return out;
}

std::vector<double> plaquette_expectations(const TorusLattice &lat, const StateVector &psi) {
    std::vector<double> out;
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        out.push_back(psi.expectation(plaquette_operator(lat, p)));
    }
    return out;
}

void write_spectrum_csv(std::ostream &out, const SpectrumResult &spectrum) {
    out << "index,eigenvalue,tau_h,tau_v,residual\n";
    out << std::setprecision(17);
    for (size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        out << i << ',' << spectrum.eigenvalues[i] << ',' << spectrum.tau_h[i] << ',' << spectrum.tau_v[i] << ','
            << spectrum.residuals[i] << '\n';
    }
}

}  // namespace z2lgt
