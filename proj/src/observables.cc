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

#include "z2lgt/observables.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "z2lgt/density_matrix.h"

namespace z2lgt {

namespace {

void check_extent(int L, std::pair<int, int> extent) {
    if (extent.first < 1 || extent.second < 1 || extent.first >= L || extent.second >= L) {
        throw std::invalid_argument("Wilson rectangle " + std::to_string(extent.first) + "x" +
                                    std::to_string(extent.second) + " does not fit on L=" + std::to_string(L));
    }
}

template <typename Eval>
WilsonTable scan(const TorusLattice &lat, const std::vector<std::pair<int, int>> &extents, Eval eval) {
    const int L = lat.linear_size();
    WilsonTable table;
    for (const auto &extent : extents) {
        check_extent(L, extent);
        double sum = 0.0;
        for (int y = 0; y < L; ++y) {
            for (int x = 0; x < L; ++x) {
                sum += eval(wilson_rectangle(lat, x, y, extent.first, extent.second));
            }
        }
        table[extent] = sum / (L * L);
    }
    return table;
}

std::vector<int> merged(std::initializer_list<const std::vector<int> *> parts) {
    std::vector<int> out;
    for (const auto *p : parts) {
        out.insert(out.end(), p->begin(), p->end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

double entropy_of(const StateVector &psi, const std::vector<int> &region) {
    return von_neumann_entropy(reduced_density_matrix(psi, region));
}

}  // namespace

WilsonTable wilson_scan(const TorusLattice &lat, const StateVector &psi,
                        const std::vector<std::pair<int, int>> &extents) {
    if (psi.num_qubits() != lat.num_links()) {
        throw std::invalid_argument("state does not live on the lattice links");
    }
    return scan(lat, extents, [&](const LoopSpec &loop) { return psi.expectation(loop_operator(lat, loop)); });
}

WilsonTable wilson_scan(const DualTFIM &model, const StateVector &psi,
                        const std::vector<std::pair<int, int>> &extents) {
    return scan(model.lattice(), extents,
                [&](const LoopSpec &loop) { return dual_wilson_expectation(model, psi, loop); });
}

CreutzRatio creutz_ratio(const WilsonTable &table, int l) {
    if (l < 2) {
        throw std::invalid_argument("Creutz ratio needs l >= 2");
    }
    const double w[4] = {table.at({l, l}), table.at({l - 1, l - 1}), table.at({l, l - 1}), table.at({l - 1, l})};
    CreutzRatio out;
    for (double v : w) {
        if (v <= kWilsonFloor) {
            out.confined_indeterminate = true;
            out.value = std::nan("");
            return out;
        }
    }
    out.value = -(std::log(w[0]) + std::log(w[1]) - std::log(w[2]) - std::log(w[3]));
    return out;
}

Tripartition::Tripartition(const TorusLattice &lat, std::vector<int> a, std::vector<int> b, std::vector<int> c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_.empty() || b_.empty() || c_.empty()) {
        throw std::invalid_argument("tripartition regions must be non-empty");
    }
    const auto all = abc();
    for (int link : all) {
        if (link < 0 || link >= lat.num_links()) {
            throw std::invalid_argument("tripartition link " + std::to_string(link) + " is off the lattice");
        }
    }
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw std::invalid_argument("tripartition regions overlap or repeat a link");
    }
    // Links touching a common vertex are neighbours.
    const std::set<int> members(all.begin(), all.end());
    std::set<int> seen{all.front()};
    std::vector<int> frontier{all.front()};
    while (!frontier.empty()) {
        const int link = frontier.back();
        frontier.pop_back();
        for (int v : lat.stars_of_link(link)) {
            for (int next : lat.star(v)) {
                if (members.count(next) && seen.insert(next).second) {
                    frontier.push_back(next);
                }
            }
        }
    }
    if (seen.size() != members.size()) {
        throw std::invalid_argument("A u B u C is not connected");
    }
    for (int v = 0; v < lat.num_vertices(); ++v) {
        const auto &star = lat.star(v);
        const auto inside = std::count_if(star.begin(), star.end(), [&](int l) { return members.count(l) > 0; });
        if (inside > 0 && inside < 4) {
            ++cut_vertices_;
        }
    }
}

Tripartition Tripartition::parse(const TorusLattice &lat, std::string_view text) {
    std::vector<int> regions[3];
    std::optional<int> stated_nv;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::string key;
        if (!(words >> key)) {
            continue;
        }
        const std::string where = "tripartition line " + std::to_string(line_no) + ": ";
        if (key == "L" || key == "N_v") {
            int n;
            if (!(words >> n)) {
                throw std::invalid_argument(where + "expected an integer");
            }
            if (key == "L" && n != lat.linear_size()) {
                throw std::invalid_argument(where + "file is for L=" + std::to_string(n));
            }
            if (key == "N_v") {
                stated_nv = n;
            }
        } else if (key == "A" || key == "B" || key == "C") {
            int x, y;
            std::string o;
            if (!(words >> x >> y >> o) || (o != "h" && o != "v")) {
                throw std::invalid_argument(where + "expected 'x y h|v'");
            }
            regions[key[0] - 'A'].push_back(
                lat.link_id(x, y, o == "h" ? Orientation::kHorizontal : Orientation::kVertical));
        } else {
            throw std::invalid_argument(where + "unknown key '" + key + "'");
        }
        std::string extra;
        if (words >> extra) {
            throw std::invalid_argument(where + "trailing text '" + extra + "'");
        }
    }
    Tripartition part(lat, regions[0], regions[1], regions[2]);
    if (stated_nv && *stated_nv != part.cut_vertices()) {
        throw std::invalid_argument("tripartition states N_v = " + std::to_string(*stated_nv) +
                                    " but the geometry cuts " + std::to_string(part.cut_vertices()) + " vertices");
    }
    return part;
}

Tripartition Tripartition::from_file(const TorusLattice &lat, const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open tripartition file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(lat, buffer.str());
}

Tripartition Tripartition::standard(const TorusLattice &lat) {
    if (lat.linear_size() < 3) {
        throw std::invalid_argument("the standard tripartition needs L >= 3");
    }
    return Tripartition(lat, {lat.horizontal_link(0, 0), lat.horizontal_link(0, 1)},
                        {lat.vertical_link(0, 0), lat.vertical_link(1, 0)},
                        {lat.horizontal_link(1, 1), lat.vertical_link(1, 1)});
}

std::vector<int> Tripartition::ab() const { return merged({&a_, &b_}); }
std::vector<int> Tripartition::bc() const { return merged({&b_, &c_}); }
std::vector<int> Tripartition::ac() const { return merged({&a_, &c_}); }
std::vector<int> Tripartition::abc() const { return merged({&a_, &b_, &c_}); }

EntropyReport topological_entropy(const StateVector &psi, const Tripartition &part) {
    EntropyReport r;
    r.s_a = entropy_of(psi, part.a());
    r.s_b = entropy_of(psi, part.b());
    r.s_c = entropy_of(psi, part.c());
    r.s_ab = entropy_of(psi, part.ab());
    r.s_bc = entropy_of(psi, part.bc());
    r.s_ac = entropy_of(psi, part.ac());
    r.s_abc = entropy_of(psi, part.abc());
    r.s_topo = r.s_a + r.s_b + r.s_c - r.s_ab - r.s_bc - r.s_ac + r.s_abc;
    r.cut_vertices = part.cut_vertices();
    return r;
}

std::vector<SectorState> sector_energies(const DirectQaoa &system, const Schedule &schedule, StringOrder order) {
    const auto &lat = system.model().lattice();
    const auto w_h = noncontractible_loop(lat, LoopOperator::kWilson, Direction::kHorizontal);
    const auto w_v = noncontractible_loop(lat, LoopOperator::kWilson, Direction::kVertical);
    const StateVector initial = system.initial_state(schedule.start);
    const StateVector evolved = system.evolve(schedule);

    std::vector<SectorState> out;
    const char *labels[4] = {"++", "+-", "-+", "--"};
    for (int k = 0; k < 4; ++k) {
        const bool flip_v = k == 1 || k == 3;
        const bool flip_h = k == 2 || k == 3;
        StateVector psi = order == StringOrder::kAfterEvolution ? evolved : initial;
        // W_h anticommutes with the vertical 't Hooft line, W_v with the
        // horizontal one.
        if (flip_v) {
            apply_string(psi, w_h);
        }
        if (flip_h) {
            apply_string(psi, w_v);
        }
        if (order == StringOrder::kBeforeEvolution) {
            system.evolve_in_place(psi, schedule);
        }
        const double energy = system.energy(psi);
        const auto [tau_h, tau_v] = sector_labels(lat, psi);
        out.push_back({labels[k], energy, tau_h, tau_v, std::move(psi)});
    }
    return out;
}

}  // namespace z2lgt
