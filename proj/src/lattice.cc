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

#include "z2lgt/lattice.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace z2lgt {

TorusLattice::TorusLattice(int linear_size) : size_(linear_size) {
    if (linear_size < 2) {
        throw std::invalid_argument("torus linear size must be >= 2, got " + std::to_string(linear_size));
    }
    const int n = size_ * size_;
    plaquettes_.resize(n);
    stars_.resize(n);
    link_plaquettes_.resize(num_links());
    link_stars_.resize(num_links());
    for (int y = 0; y < size_; ++y) {
        for (int x = 0; x < size_; ++x) {
            const int id = site_id(x, y);
            plaquettes_[id] = PlaquetteLinks{
                horizontal_link(x, y),
                horizontal_link(x, y + 1),
                vertical_link(x, y),
                vertical_link(x + 1, y),
            };
            stars_[id] = {
                horizontal_link(x, y),
                horizontal_link(x - 1, y),
                vertical_link(x, y),
                vertical_link(x, y - 1),
            };
            link_plaquettes_[horizontal_link(x, y)] = {site_id(x, y - 1), id};
            link_plaquettes_[vertical_link(x, y)] = {site_id(x - 1, y), id};
            link_stars_[horizontal_link(x, y)] = {id, site_id(x + 1, y)};
            link_stars_[vertical_link(x, y)] = {id, site_id(x, y + 1)};
        }
    }
}

LinkCoord TorusLattice::link_coord(int link) const {
    if (link < 0 || link >= num_links()) {
        throw std::out_of_range("link id " + std::to_string(link) + " out of range");
    }
    const int site = link >> 1;
    return LinkCoord{site % size_, site / size_, static_cast<Orientation>(link & 1)};
}

uint64_t TorusLattice::link_mask(const std::vector<int> &links) const {
    if (num_links() > 64) {
        throw std::length_error("link masks need at most 64 links");
    }
    uint64_t mask = 0;
    for (int l : links) {
        mask ^= uint64_t{1} << l;
    }
    return mask;
}

LoopSpec wilson_rectangle(const TorusLattice &lat, int x0, int y0, int lx, int ly) {
    const int L = lat.linear_size();
    if (lx < 1 || ly < 1 || lx >= L || ly >= L) {
        throw std::invalid_argument("rectangle " + std::to_string(lx) + "x" + std::to_string(ly) +
                                    " is not contractible on an L=" + std::to_string(L) + " torus");
    }
    LoopSpec loop;
    loop.kind = LoopKind::kRectangle;
    loop.op = LoopOperator::kWilson;
    loop.x0 = lat.wrap(x0);
    loop.y0 = lat.wrap(y0);
    loop.lx = lx;
    loop.ly = ly;
    for (int i = 0; i < lx; ++i) {
        loop.links.push_back(lat.horizontal_link(x0 + i, y0));
        loop.links.push_back(lat.horizontal_link(x0 + i, y0 + ly));
    }
    for (int j = 0; j < ly; ++j) {
        loop.links.push_back(lat.vertical_link(x0, y0 + j));
        loop.links.push_back(lat.vertical_link(x0 + lx, y0 + j));
    }
    std::sort(loop.links.begin(), loop.links.end());
    for (int j = 0; j < ly; ++j) {
        for (int i = 0; i < lx; ++i) {
            loop.interior.push_back(lat.site_id(x0 + i, y0 + j));
        }
    }
    std::sort(loop.interior.begin(), loop.interior.end());
    return loop;
}

LoopSpec noncontractible_loop(const TorusLattice &lat, LoopOperator op, Direction direction, int offset) {
    const int L = lat.linear_size();
    if (offset < 0 || offset >= L) {
        throw std::out_of_range("loop offset " + std::to_string(offset) + " outside [0, " + std::to_string(L) + ")");
    }
    LoopSpec loop;
    loop.kind = LoopKind::kNoncontractible;
    loop.op = op;
    loop.direction = direction;
    loop.offset = offset;
    // A horizontal Wilson line and a vertical 't Hooft line both live on
    // horizontal links; they differ only in which coordinate runs.
    const bool runs_along_x = direction == Direction::kHorizontal;
    const bool uses_horizontal_links = (op == LoopOperator::kWilson) == runs_along_x;
    for (int t = 0; t < L; ++t) {
        const int x = runs_along_x ? t : offset;
        const int y = runs_along_x ? offset : t;
        loop.links.push_back(uses_horizontal_links ? lat.horizontal_link(x, y) : lat.vertical_link(x, y));
    }
    std::sort(loop.links.begin(), loop.links.end());
    return loop;
}

}  // namespace z2lgt
