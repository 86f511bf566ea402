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

#include "z2lgt/circuits.h"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace z2lgt {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits), frontier_(num_qubits, 0) {
    if (num_qubits < 1) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

void Circuit::check_gate(const Gate &gate) const {
    auto bad = [&](int q) { return q < 0 || q >= num_qubits_; };
    if (bad(gate.q0) || (gate.kind == GateKind::kCNOT && (bad(gate.q1) || gate.q1 == gate.q0))) {
        throw std::invalid_argument("gate qubit out of range or CNOT with control == target");
    }
}

std::vector<Gate> Circuit::gates() const {
    std::vector<Gate> out;
    for (const auto &layer : layers_) {
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

size_t Circuit::gate_count() const {
    size_t n = 0;
    for (const auto &layer : layers_) {
        n += layer.size();
    }
    return n;
}

void Circuit::add_layer(std::vector<Gate> layer) {
    std::vector<bool> used(num_qubits_, false);
    for (const auto &g : layer) {
        check_gate(g);
        for (int q : {g.q0, g.q1}) {
            if (q < 0) {
                continue;
            }
            if (used[q]) {
                throw std::invalid_argument("qubit " + std::to_string(q) + " appears twice in one layer");
            }
            used[q] = true;
        }
    }
    const int index = depth();
    for (int q = 0; q < num_qubits_; ++q) {
        if (used[q]) {
            frontier_[q] = index + 1;
        }
    }
    layers_.push_back(std::move(layer));
}

void Circuit::append_greedy(const Gate &gate) {
    check_gate(gate);
    int index = frontier_[gate.q0];
    if (gate.q1 >= 0) {
        index = std::max(index, frontier_[gate.q1]);
    }
    if (index == depth()) {
        layers_.emplace_back();
    }
    layers_[index].push_back(gate);
    frontier_[gate.q0] = index + 1;
    if (gate.q1 >= 0) {
        frontier_[gate.q1] = index + 1;
    }
}

int Circuit::greedy_depth() const {
    Circuit c(num_qubits_);
    for (const auto &g : gates()) {
        c.append_greedy(g);
    }
    return c.depth();
}

void Circuit::apply_to(StateVector &psi) const {
    if (psi.num_qubits() != num_qubits_) {
        throw std::invalid_argument("circuit and state sizes differ");
    }
    for (const auto &layer : layers_) {
        for (const auto &g : layer) {
            switch (g.kind) {
                case GateKind::kH:
                    psi.apply_hadamard(g.q0);
                    break;
                case GateKind::kRX:
                    psi.apply_rx(g.q0, g.angle);
                    break;
                case GateKind::kRZ:
                    psi.apply_rz(g.q0, g.angle);
                    break;
                case GateKind::kCNOT:
                    psi.apply_cnot(g.q0, g.q1);
                    break;
            }
        }
    }
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << std::setprecision(17);
    for (size_t i = 0; i < layers_.size(); ++i) {
        if (i > 0) {
            out << "BARRIER\n";
        }
        for (const auto &g : layers_[i]) {
            switch (g.kind) {
                case GateKind::kH:
                    out << "H " << g.q0 << '\n';
                    break;
                case GateKind::kRX:
                    out << "RX " << g.angle << ' ' << g.q0 << '\n';
                    break;
                case GateKind::kRZ:
                    out << "RZ " << g.angle << ' ' << g.q0 << '\n';
                    break;
                case GateKind::kCNOT:
                    out << "CNOT " << g.q0 << ' ' << g.q1 << '\n';
                    break;
            }
        }
    }
    return out.str();
}

Circuit Circuit::from_text(int num_qubits, std::string_view text) {
    Circuit c(num_qubits);
    std::vector<Gate> layer;
    bool any = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string op;
        fields >> op;
        Gate g{GateKind::kH, -1};
        if (op == "BARRIER") {
            c.add_layer(std::move(layer));
            layer.clear();
            continue;
        } else if (op == "H") {
            fields >> g.q0;
        } else if (op == "RX" || op == "RZ") {
            g.kind = op == "RX" ? GateKind::kRX : GateKind::kRZ;
            std::string angle;
            fields >> angle >> g.q0;
            const char *end = angle.data() + angle.size();
            if (std::from_chars(angle.data(), end, g.angle).ptr != end) {
                fail("bad angle '" + angle + "'");
            }
        } else if (op == "CNOT") {
            g.kind = GateKind::kCNOT;
            fields >> g.q0 >> g.q1;
        } else {
            fail("unknown gate '" + op + "'");
        }
        std::string extra;
        if (fields.fail() || (fields >> extra)) {
            fail("malformed operands");
        }
        layer.push_back(g);
        any = true;
    }
    if (any || !layer.empty()) {
        c.add_layer(std::move(layer));
    }
    return c;
}

std::string_view to_string(StartKind start) { return start == StartKind::kElectric ? "electric" : "magnetic"; }

StartKind parse_start_kind(std::string_view text) {
    if (text == "electric") {
        return StartKind::kElectric;
    }
    if (text == "magnetic") {
        return StartKind::kMagnetic;
    }
    throw std::invalid_argument("start must be 'electric' or 'magnetic', got '" + std::string(text) + "'");
}

void Schedule::validate() const {
    if (gammas.empty() || gammas.size() != betas.size()) {
        throw std::invalid_argument("schedule needs P >= 1 gammas and as many betas");
    }
}

std::vector<double> Schedule::to_parameters() const {
    std::vector<double> x = gammas;
    x.insert(x.end(), betas.begin(), betas.end());
    return x;
}

Schedule Schedule::from_parameters(std::span<const double> x, StartKind start) {
    if (x.empty() || x.size() % 2 != 0) {
        throw std::invalid_argument("parameter vector must hold 2P entries");
    }
    const size_t p = x.size() / 2;
    return Schedule{{x.begin(), x.begin() + p}, {x.begin() + p, x.end()}, start};
}

void QaoaSystem::evolve_in_place(StateVector &psi, const Schedule &schedule) const {
    schedule.validate();
    if (psi.num_qubits() != num_qubits()) {
        throw std::invalid_argument("state does not match the QAOA system");
    }
    for (int m = 0; m < schedule.depth(); ++m) {
        if (schedule.start == StartKind::kElectric) {
            evolve_magnetic(psi, schedule.gammas[m]);
            evolve_electric(psi, schedule.betas[m]);
        } else {
            evolve_electric(psi, schedule.betas[m]);
            evolve_magnetic(psi, schedule.gammas[m]);
        }
    }
}

StateVector QaoaSystem::evolve(const Schedule &schedule) const {
    StateVector psi = initial_state(schedule.start);
    evolve_in_place(psi, schedule);
    return psi;
}

DirectQaoa::DirectQaoa(const TorusLattice &lat, double h)
    : hamiltonian_(lat, h), toric_code_(std::make_shared<StateVector>(prepare_toric_code_gs(lat).first)) {}

StateVector DirectQaoa::initial_state(StartKind start) const {
    return start == StartKind::kElectric ? prepare_electric_gs(hamiltonian_.lattice()) : *toric_code_;
}

void DirectQaoa::evolve_magnetic(StateVector &psi, double gamma) const {
    // H_B = -sum_p B_p.
    psi.apply_diagonal_phase(hamiltonian_.plaquette_field(), gamma);
}

void DirectQaoa::evolve_electric(StateVector &psi, double beta) const {
    // H_E = sum_l (1 - X_l); the constant is a global phase.
    psi.apply_x_rotation_all(beta);
}

StateVector prepare_electric_gs(const TorusLattice &lat) {
    return StateVector::uniform_superposition(lat.num_links());
}

std::pair<StateVector, Circuit> prepare_toric_code_gs(const TorusLattice &lat) {
    const int L = lat.linear_size();
    Circuit circuit(lat.num_links());
    // Free links: the Hadamard layer spreads them over all values; every other
    // link is then fixed by one plaquette constraint.
    std::vector<Gate> hadamards;
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            if (x < L - 1 || y == 0) {
                hadamards.push_back(Gate::h(lat.horizontal_link(x, y)));
            }
        }
        hadamards.push_back(Gate::h(lat.vertical_link(0, y)));
    }
    std::sort(hadamards.begin(), hadamards.end(), [](const Gate &a, const Gate &b) { return a.q0 < b.q0; });
    circuit.add_layer(std::move(hadamards));
    // Sweep columns left to right: plaquette (x, y) writes its parity into
    // its right vertical link.
    for (int x = 0; x + 1 < L; ++x) {
        for (int y = 0; y < L; ++y) {
            const auto &p = lat.plaquette(lat.site_id(x, y));
            circuit.append_greedy(Gate::cnot(p.bottom, p.right));
        }
        for (int y = 0; y < L; ++y) {
            const auto &p = lat.plaquette(lat.site_id(x, y));
            circuit.append_greedy(Gate::cnot(p.top, p.right));
        }
        for (int y = 0; y < L; ++y) {
            const auto &p = lat.plaquette(lat.site_id(x, y));
            circuit.append_greedy(Gate::cnot(p.left, p.right));
        }
    }
    // Last column: its right links are already free, so plaquette (L-1, y)
    // fixes its top link instead. The final plaquette follows from the rest.
    for (int y = 0; y + 1 < L; ++y) {
        const auto &p = lat.plaquette(lat.site_id(L - 1, y));
        circuit.append_greedy(Gate::cnot(p.left, p.top));
        circuit.append_greedy(Gate::cnot(p.right, p.top));
        circuit.append_greedy(Gate::cnot(p.bottom, p.top));
    }
    StateVector psi(lat.num_links());
    circuit.apply_to(psi);
    return {std::move(psi), std::move(circuit)};
}

StateVector qaoa_evolve_exact(const StateVector &psi0, const Schedule &schedule, const TorusLattice &lat) {
    DirectQaoa system(lat, 0.0);
    StateVector psi = psi0;
    system.evolve_in_place(psi, schedule);
    return psi;
}

namespace {

// Layer offset of each column's 7-slot plaquette window. Neighbouring columns
// must keep the left control slots (s + 2, s + 4) of column x outside the
// target window [s', s' + 6] of column x - 1.
std::vector<int> column_offsets(int L) {
    std::vector<int> offsets(L);
    for (int x = 0; x < L; ++x) {
        offsets[x] = (x % 2 == 0) ? 0 : 5;
    }
    if (L % 2 == 1) {
        offsets[L - 1] = 10;
    }
    return offsets;
}

void append_rotations(const TorusLattice &lat, double beta, RotationStyle style,
                      std::vector<std::vector<Gate>> &layers) {
    const int n = lat.num_links();
    if (style == RotationStyle::kRx) {
        std::vector<Gate> layer;
        for (int q = 0; q < n; ++q) {
            layer.push_back(Gate::rx(q, -2.0 * beta));
        }
        layers.push_back(std::move(layer));
        return;
    }
    std::vector<Gate> h, rz;
    for (int q = 0; q < n; ++q) {
        h.push_back(Gate::h(q));
        rz.push_back(Gate::rz(q, -2.0 * beta));
    }
    layers.push_back(h);
    layers.push_back(std::move(rz));
    layers.push_back(std::move(h));
}

}  // namespace

Circuit compile_qaoa_step(const TorusLattice &lat, double gamma, double beta, StartKind order, RotationStyle style) {
    const int L = lat.linear_size();
    const auto offsets = column_offsets(L);
    const int span = *std::max_element(offsets.begin(), offsets.end()) + 7;
    std::vector<std::vector<Gate>> plaquette_layers(span);
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            const auto &p = lat.plaquette(lat.site_id(x, y));
            const int s = offsets[x];
            const int t = p.right;
            plaquette_layers[s + 0].push_back(Gate::cnot(p.bottom, t));
            plaquette_layers[s + 1].push_back(Gate::cnot(p.top, t));
            plaquette_layers[s + 2].push_back(Gate::cnot(p.left, t));
            plaquette_layers[s + 3].push_back(Gate::rz(t, -2.0 * gamma));
            plaquette_layers[s + 4].push_back(Gate::cnot(p.left, t));
            plaquette_layers[s + 5].push_back(Gate::cnot(p.bottom, t));
            plaquette_layers[s + 6].push_back(Gate::cnot(p.top, t));
        }
    }
    std::vector<std::vector<Gate>> layers;
    if (order == StartKind::kMagnetic) {
        append_rotations(lat, beta, style, layers);
    }
    layers.insert(layers.end(), plaquette_layers.begin(), plaquette_layers.end());
    if (order == StartKind::kElectric) {
        append_rotations(lat, beta, style, layers);
    }
    Circuit circuit(lat.num_links());
    for (auto &layer : layers) {
        circuit.add_layer(std::move(layer));
    }
    return circuit;
}

bool links_share_plaquette(const TorusLattice &lat, int a, int b) {
    for (int p : lat.plaquettes_of_link(a)) {
        for (int l : lat.plaquette(p).as_array()) {
            if (l == b && a != b) {
                return true;
            }
        }
    }
    return false;
}

void apply_string(StateVector &psi, const LoopSpec &loop, StringPauli pauli) {
    bool use_x = loop.op == LoopOperator::kThooft;
    if (pauli != StringPauli::kFromLoop) {
        use_x = pauli == StringPauli::kX;
    }
    psi.apply_pauli(use_x ? PauliString::x_on(loop.links) : PauliString::z_on(loop.links));
}

}  // namespace z2lgt
