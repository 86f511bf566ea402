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

#ifndef Z2LGT_CIRCUITS_H
#define Z2LGT_CIRCUITS_H

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "z2lgt/hamiltonian.h"
#include "z2lgt/lattice.h"
#include "z2lgt/state_vector.h"

namespace z2lgt {

enum class GateKind : uint8_t { kH, kRX, kRZ, kCNOT };

struct Gate {
    GateKind kind;
    /// Target for 1q gates, control for CNOT.
    int q0;
    /// CNOT target, otherwise -1.
    int q1 = -1;
    double angle = 0.0;

    static Gate h(int q) { return {GateKind::kH, q}; }
    static Gate rx(int q, double theta) { return {GateKind::kRX, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::kRZ, q, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::kCNOT, control, target}; }

    bool operator==(const Gate &) const = default;
};

/// Gates grouped into layers; no qubit appears twice in a layer.
class Circuit {
   public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    int depth() const { return static_cast<int>(layers_.size()); }
    const std::vector<std::vector<Gate>> &layers() const { return layers_; }
    std::vector<Gate> gates() const;
    size_t gate_count() const;

    /// Appends a layer. Throws std::invalid_argument on a qubit clash or a
    /// qubit out of range.
    void add_layer(std::vector<Gate> layer);
    /// Places the gate in the earliest layer after every earlier gate on its
    /// qubits (as-soon-as-possible scheduling in program order).
    void append_greedy(const Gate &gate);
    /// Depth obtained by rescheduling gates() as soon as possible.
    int greedy_depth() const;

    void apply_to(StateVector &psi) const;

    /// `H q`, `RX theta q`, `RZ theta q`, `CNOT qc qt`, `BARRIER` between
    /// layers; angles with 17 significant digits.
    std::string to_text() const;
    /// Inverse of to_text. Lines starting with '#' are skipped.
    static Circuit from_text(int num_qubits, std::string_view text);

    bool operator==(const Circuit &other) const {
        return num_qubits_ == other.num_qubits_ && layers_ == other.layers_;
    }

   private:
    void check_gate(const Gate &gate) const;

    int num_qubits_;
    std::vector<std::vector<Gate>> layers_;
    // Per qubit, the number of layers that already hold a gate on it, used by
    // append_greedy.
    std::vector<int> frontier_;
};

enum class StartKind : uint8_t { kElectric, kMagnetic };

std::string_view to_string(StartKind start);
/// Accepts "electric" or "magnetic".
StartKind parse_start_kind(std::string_view text);

/// QAOA angles. For an electric start layer m applies exp(-i gamma_m H_B)
/// then exp(-i beta_m H_E); for a magnetic start the order is reversed.
struct Schedule {
    std::vector<double> gammas;
    std::vector<double> betas;
    StartKind start = StartKind::kElectric;

    int depth() const { return static_cast<int>(gammas.size()); }
    /// Throws std::invalid_argument when lengths differ or are zero.
    void validate() const;
    /// [gamma_1..gamma_P, beta_1..beta_P].
    std::vector<double> to_parameters() const;
    static Schedule from_parameters(std::span<const double> x, StartKind start);

    bool operator==(const Schedule &) const = default;
};

/// A model that QAOA can run on: an initial state per start kind, the two
/// alternating evolutions and the target energy.
class QaoaSystem {
   public:
    virtual ~QaoaSystem() = default;

    virtual int num_qubits() const = 0;
    virtual StateVector initial_state(StartKind start) const = 0;
    /// exp(-i gamma H_B).
    virtual void evolve_magnetic(StateVector &psi, double gamma) const = 0;
    /// exp(-i beta H_E) up to a global phase.
    virtual void evolve_electric(StateVector &psi, double beta) const = 0;
    virtual double energy(const StateVector &psi) const = 0;
    virtual const TransverseFieldOperator &hamiltonian() const = 0;

    void evolve_in_place(StateVector &psi, const Schedule &schedule) const;
    /// evolve_in_place applied to initial_state(schedule.start).
    StateVector evolve(const Schedule &schedule) const;
};

/// QAOA on the 2L^2 link qubits of the gauge model.
class DirectQaoa : public QaoaSystem {
   public:
    DirectQaoa(const TorusLattice &lat, double h);

    const LGTHamiltonian &model() const { return hamiltonian_; }
    int num_qubits() const override { return hamiltonian_.num_qubits(); }
    StateVector initial_state(StartKind start) const override;
    void evolve_magnetic(StateVector &psi, double gamma) const override;
    void evolve_electric(StateVector &psi, double beta) const override;
    double energy(const StateVector &psi) const override { return hamiltonian_.energy(psi); }
    const TransverseFieldOperator &hamiltonian() const override { return hamiltonian_.as_operator(); }

   private:
    LGTHamiltonian hamiltonian_;
    std::shared_ptr<const StateVector> toric_code_;
};

/// All links in |+>.
StateVector prepare_electric_gs(const TorusLattice &lat);

/// Gate-level preparation of the toric-code state with every A_v, B_p and
/// 't Hooft loop equal to +1, starting from all links in |0>. Returns the
/// prepared state and the circuit that made it.
std::pair<StateVector, Circuit> prepare_toric_code_gs(const TorusLattice &lat);

/// Exact-exponential QAOA on the direct model.
StateVector qaoa_evolve_exact(const StateVector &psi0, const Schedule &schedule, const TorusLattice &lat);

enum class RotationStyle : uint8_t {
    /// exp(i beta X) as RX(-2 beta).
    kRx,
    /// The same rotation as H RZ(-2 beta) H.
    kHadamardRz,
};

/// One QAOA layer exp(-i beta H_E) exp(-i gamma H_B) as a gate circuit
/// (`order` = kMagnetic gives exp(-i gamma H_B) exp(-i beta H_E)). Every
/// plaquette is computed onto its right vertical link; columns are staggered
/// so the plaquette part takes 12 layers for even L and 17 for odd L. Odd
/// L > 3 is experimental.
Circuit compile_qaoa_step(const TorusLattice &lat, double gamma, double beta, StartKind order = StartKind::kElectric,
                          RotationStyle style = RotationStyle::kRx);

/// Whether a CNOT between the two links is allowed on the square-lattice
/// hardware graph, i.e. the links bound a common plaquette.
bool links_share_plaquette(const TorusLattice &lat, int a, int b);

/// Applies the Z (Wilson) or X ('t Hooft) product along the loop's links,
/// matching its operator unless `pauli` overrides it.
enum class StringPauli : uint8_t { kFromLoop, kZ, kX };
void apply_string(StateVector &psi, const LoopSpec &loop, StringPauli pauli = StringPauli::kFromLoop);

}  // namespace z2lgt

#endif
