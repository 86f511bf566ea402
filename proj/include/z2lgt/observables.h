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

#ifndef Z2LGT_OBSERVABLES_H
#define Z2LGT_OBSERVABLES_H

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "z2lgt/circuits.h"
#include "z2lgt/dual_model.h"
#include "z2lgt/hamiltonian.h"
#include "z2lgt/lattice.h"
#include "z2lgt/state_vector.h"

namespace z2lgt {

/// Translation-averaged <W> keyed by rectangle extent (lx, ly).
using WilsonTable = std::map<std::pair<int, int>, double>;

/// <W_{lx,ly}> averaged over all L^2 anchors, from Z strings on a direct
/// state. Extents must lie in [1, L-1].
WilsonTable wilson_scan(const TorusLattice &lat, const StateVector &psi,
                        const std::vector<std::pair<int, int>> &extents);
/// The same from a dual state, using X products over enclosed plaquettes.
WilsonTable wilson_scan(const DualTFIM &model, const StateVector &psi,
                        const std::vector<std::pair<int, int>> &extents);

/// Wilson values at or below this make the Creutz logarithm meaningless.
inline constexpr double kWilsonFloor = 1e-6;

struct CreutzRatio {
    /// Set when one of the four loops is <= kWilsonFloor; `value` is then NaN.
    bool confined_indeterminate = false;
    double value = 0.0;
};

/// chi(l, l) = -ln(W(l,l) W(l-1,l-1) / (W(l,l-1) W(l-1,l))) for l >= 2.
/// Throws std::invalid_argument when l < 2 and std::out_of_range when a
/// needed extent is missing from the table.
CreutzRatio creutz_ratio(const WilsonTable &table, int l);

/// Three disjoint link regions used for the tripartite entropy combination.
class Tripartition {
   public:
    /// Validates disjointness, non-emptiness and connectivity of A u B u C,
    /// and computes N_v. Throws std::invalid_argument on violations.
    Tripartition(const TorusLattice &lat, std::vector<int> a, std::vector<int> b, std::vector<int> c);

    /// Parses lines "A|B|C x y h|v", "L n" and "N_v n"; '#' starts a comment.
    /// A stated N_v or L that disagrees with the geometry is an error.
    static Tripartition parse(const TorusLattice &lat, std::string_view text);
    static Tripartition from_file(const TorusLattice &lat, const std::string &path);
    /// A = two horizontal links of plaquette (0,0), B = its vertical links,
    /// C = the remaining links of the star at (1,1). Needs L >= 3.
    static Tripartition standard(const TorusLattice &lat);

    const std::vector<int> &a() const { return a_; }
    const std::vector<int> &b() const { return b_; }
    const std::vector<int> &c() const { return c_; }
    std::vector<int> ab() const;
    std::vector<int> bc() const;
    std::vector<int> ac() const;
    std::vector<int> abc() const;
    /// Stars with some but not all links in A u B u C.
    int cut_vertices() const { return cut_vertices_; }

   private:
    std::vector<int> a_;
    std::vector<int> b_;
    std::vector<int> c_;
    int cut_vertices_ = 0;
};

struct EntropyReport {
    double s_a = 0.0;
    double s_b = 0.0;
    double s_c = 0.0;
    double s_ab = 0.0;
    double s_bc = 0.0;
    double s_ac = 0.0;
    double s_abc = 0.0;
    /// S_A + S_B + S_C - S_AB - S_BC - S_AC + S_ABC, in nats.
    double s_topo = 0.0;
    int cut_vertices = 0;
};

/// Von Neumann entropies in nats of the seven regions.
EntropyReport topological_entropy(const StateVector &psi, const Tripartition &part);

enum class StringOrder : uint8_t { kAfterEvolution, kBeforeEvolution };

struct SectorState {
    /// "++", "+-", "-+" or "--" for (tau_h, tau_v).
    std::string label;
    double energy = 0.0;
    double tau_h = 0.0;
    double tau_v = 0.0;
    StateVector state;
};

/// The QAOA state for `schedule` and its images under the non-contractible
/// Wilson lines: |+-> = W_h|++>, |-+> = W_v|++>, |--> = W_h W_v|++>. With
/// kBeforeEvolution the strings act on the initial state instead. Returns
/// the four states in the order ++, +-, -+, --.
std::vector<SectorState> sector_energies(const DirectQaoa &system, const Schedule &schedule,
                                           StringOrder order = StringOrder::kAfterEvolution);

}  // namespace z2lgt

#endif
