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

#ifndef Z2LGT_LATTICE_H
#define Z2LGT_LATTICE_H

#include <array>
#include <cstdint>
#include <vector>

namespace z2lgt {

enum class Orientation : uint8_t { kHorizontal = 0, kVertical = 1 };

/// Direction of a non-contractible line on the torus.
enum class Direction : uint8_t { kHorizontal, kVertical };

/// Which operator a non-contractible loop carries: a Wilson line (sigma^z on
/// the links along a direct-lattice line) or a 't Hooft line (sigma^x on the
/// links crossed by a dual-lattice line).
enum class LoopOperator : uint8_t { kWilson, kThooft };

struct LinkCoord {
    int x;
    int y;
    Orientation orientation;
};

/// The four links bounding a plaquette. The plaquette at (x, y) is the unit
/// square with lower-left corner at vertex (x, y).
struct PlaquetteLinks {
    int bottom;
    int top;
    int left;
    int right;

    std::array<int, 4> as_array() const { return {bottom, top, left, right}; }
};

/// L x L square lattice with periodic boundaries in both directions.
///
/// Link ids follow `2 * (y * L + x) + orientation`, where the horizontal link
/// at (x, y) joins vertices (x, y) and (x + 1, y) and the vertical link joins
/// (x, y) and (x, y + 1). Plaquette and vertex ids are `y * L + x`.
///
/// Immutable after construction.
class TorusLattice {
   public:
    /// Throws std::invalid_argument when linear_size < 2.
    explicit TorusLattice(int linear_size);

    int linear_size() const { return size_; }
    int num_links() const { return 2 * size_ * size_; }
    int num_plaquettes() const { return size_ * size_; }
    int num_vertices() const { return size_ * size_; }

    int wrap(int coordinate) const {
        int r = coordinate % size_;
        return r < 0 ? r + size_ : r;
    }

    int link_id(int x, int y, Orientation orientation) const {
        return 2 * (wrap(y) * size_ + wrap(x)) + static_cast<int>(orientation);
    }
    int horizontal_link(int x, int y) const { return link_id(x, y, Orientation::kHorizontal); }
    int vertical_link(int x, int y) const { return link_id(x, y, Orientation::kVertical); }

    LinkCoord link_coord(int link) const;
    bool is_vertical(int link) const { return (link & 1) != 0; }

    int site_id(int x, int y) const { return wrap(y) * size_ + wrap(x); }
    int site_x(int id) const { return id % size_; }
    int site_y(int id) const { return id / size_; }

    const PlaquetteLinks &plaquette(int p) const { return plaquettes_[p]; }
    /// Links meeting at vertex v, ordered {right, left, up, down}.
    const std::array<int, 4> &star(int v) const { return stars_[v]; }

    /// The two plaquettes sharing a link, i.e. the endpoints of the dual bond
    /// crossing it. For a horizontal link these are {below, above}; for a
    /// vertical link {left, right}.
    const std::array<int, 2> &plaquettes_of_link(int link) const { return link_plaquettes_[link]; }
    /// The two vertices a link joins.
    const std::array<int, 2> &stars_of_link(int link) const { return link_stars_[link]; }

    /// Bit mask over link qubits; only available while num_links() <= 64.
    uint64_t link_mask(const std::vector<int> &links) const;

   private:
    int size_;
    std::vector<PlaquetteLinks> plaquettes_;
    std::vector<std::array<int, 4>> stars_;
    std::vector<std::array<int, 2>> link_plaquettes_;
    std::vector<std::array<int, 2>> link_stars_;
};

enum class LoopKind : uint8_t { kRectangle, kNoncontractible };

/// A closed string of links. Rectangles also carry the plaquettes they
/// enclose, which is what the dual model needs to evaluate them.
struct LoopSpec {
    LoopKind kind = LoopKind::kRectangle;
    LoopOperator op = LoopOperator::kWilson;
    // Rectangle anchor and extent.
    int x0 = 0;
    int y0 = 0;
    int lx = 0;
    int ly = 0;
    // Non-contractible line.
    Direction direction = Direction::kHorizontal;
    int offset = 0;

    std::vector<int> links;
    std::vector<int> interior;
};

/// Boundary of the lx x ly block of plaquettes whose lower-left plaquette is
/// (x0, y0). Requires 1 <= lx, ly < L; anything wider wraps the torus.
LoopSpec wilson_rectangle(const TorusLattice &lat, int x0, int y0, int lx, int ly);

/// Straight non-contractible line. A horizontal Wilson line at offset y holds
/// the horizontal links of row y; a vertical 't Hooft line at offset x holds
/// the horizontal links of column x (those its dual line crosses).
LoopSpec noncontractible_loop(const TorusLattice &lat, LoopOperator op, Direction direction, int offset = 0);

}  // namespace z2lgt

#endif
