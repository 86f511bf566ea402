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
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "dense_oracle.h"

namespace z2lgt {
namespace {

std::set<int> as_set(const std::vector<int> &v) { return {v.begin(), v.end()}; }

std::vector<int> symmetric_difference(const std::vector<int> &a, const std::vector<int> &b) {
    std::set<int> s;
    for (int l : a) {
        if (!s.insert(l).second) s.erase(l);
    }
    for (int l : b) {
        if (!s.insert(l).second) s.erase(l);
    }
    return {s.begin(), s.end()};
}

TEST(TorusLattice, Counts) {
    TorusLattice lat3(3);
    EXPECT_EQ(lat3.num_links(), 18);
    EXPECT_EQ(lat3.num_plaquettes(), 9);
    EXPECT_EQ(lat3.num_vertices(), 9);
    EXPECT_EQ(TorusLattice(2).num_links(), 8);
    EXPECT_THROW(TorusLattice(1), std::invalid_argument);
    EXPECT_THROW(TorusLattice(0), std::invalid_argument);
}

TEST(TorusLattice, LinkIdsAreABijection) {
    for (int L : {2, 3, 4, 5}) {
        TorusLattice lat(L);
        std::set<int> seen;
        for (int y = 0; y < L; ++y) {
            for (int x = 0; x < L; ++x) {
                for (auto o : {Orientation::kHorizontal, Orientation::kVertical}) {
                    const int id = lat.link_id(x, y, o);
                    EXPECT_TRUE(seen.insert(id).second);
                    const auto c = lat.link_coord(id);
                    EXPECT_EQ(c.x, x);
                    EXPECT_EQ(c.y, y);
                    EXPECT_EQ(c.orientation, o);
                }
            }
        }
        EXPECT_EQ(static_cast<int>(seen.size()), lat.num_links());
        EXPECT_EQ(*seen.begin(), 0);
        EXPECT_EQ(*seen.rbegin(), lat.num_links() - 1);
        EXPECT_THROW(lat.link_coord(lat.num_links()), std::out_of_range);
    }
}

TEST(TorusLattice, TablesMatchExplicitGeometry) {
    for (int L : {2, 3, 4}) {
        TorusLattice lat(L);
        oracle::Geometry g{L};
        for (int y = 0; y < L; ++y) {
            for (int x = 0; x < L; ++x) {
                const auto p = lat.plaquette(lat.site_id(x, y)).as_array();
                EXPECT_EQ(as_set({p.begin(), p.end()}), as_set(g.plaquette(x, y)));
                const auto &s = lat.star(lat.site_id(x, y));
                EXPECT_EQ(as_set({s.begin(), s.end()}), as_set(g.star(x, y)));
            }
        }
    }
}

TEST(TorusLattice, EachLinkInTwoPlaquettesAndTwoStars) {
    for (int L : {2, 3, 4}) {
        TorusLattice lat(L);
        std::map<int, int> in_plaquettes, in_stars;
        for (int p = 0; p < lat.num_plaquettes(); ++p) {
            for (int l : lat.plaquette(p).as_array()) ++in_plaquettes[l];
            for (int l : lat.star(p)) ++in_stars[l];
        }
        for (int l = 0; l < lat.num_links(); ++l) {
            EXPECT_EQ(in_plaquettes[l], 2) << "L=" << L << " link " << l;
            EXPECT_EQ(in_stars[l], 2) << "L=" << L << " link " << l;
            for (int p : lat.plaquettes_of_link(l)) {
                const auto links = lat.plaquette(p).as_array();
                EXPECT_NE(std::find(links.begin(), links.end(), l), links.end());
            }
            for (int v : lat.stars_of_link(l)) {
                const auto &links = lat.star(v);
                EXPECT_NE(std::find(links.begin(), links.end(), l), links.end());
            }
        }
    }
}

TEST(TorusLattice, StarsAndPlaquettesShareZeroOrTwoLinks) {
    for (int L : {2, 3, 4}) {
        TorusLattice lat(L);
        for (int v = 0; v < lat.num_vertices(); ++v) {
            for (int p = 0; p < lat.num_plaquettes(); ++p) {
                int shared = 0;
                for (int a : lat.star(v)) {
                    for (int b : lat.plaquette(p).as_array()) shared += a == b;
                }
                EXPECT_TRUE(shared == 0 || shared == 2) << "L=" << L << " v=" << v << " p=" << p;
            }
        }
    }
}

TEST(TorusLattice, L2PlaquettePairsShareTwoLinks) {
    TorusLattice lat(2);
    for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
            const auto a = lat.plaquette(p).as_array();
            const auto b = lat.plaquette(q).as_array();
            int shared = 0;
            for (int x : a) shared += std::count(b.begin(), b.end(), x);
            const bool diagonal = lat.site_x(p) != lat.site_x(q) && lat.site_y(p) != lat.site_y(q);
            EXPECT_EQ(shared, diagonal ? 0 : 2);
        }
    }
}

TEST(WilsonRectangle, SinglePlaquette) {
    TorusLattice lat(3);
    const auto loop = wilson_rectangle(lat, 1, 2, 1, 1);
    const auto p = lat.plaquette(lat.site_id(1, 2)).as_array();
    EXPECT_EQ(as_set(loop.links), as_set({p.begin(), p.end()}));
    EXPECT_EQ(loop.interior, std::vector<int>{lat.site_id(1, 2)});
}

TEST(WilsonRectangle, SizesAndInterior) {
    TorusLattice lat(5);
    const auto r22 = wilson_rectangle(lat, 0, 0, 2, 2);
    EXPECT_EQ(r22.links.size(), 8u);
    EXPECT_EQ(r22.interior.size(), 4u);
    const auto r33 = wilson_rectangle(lat, 3, 4, 3, 3);
    EXPECT_EQ(r33.links.size(), 12u);
    EXPECT_EQ(r33.interior.size(), 9u);
    EXPECT_THROW(wilson_rectangle(lat, 0, 0, 5, 1), std::invalid_argument);
    EXPECT_THROW(wilson_rectangle(lat, 0, 0, 1, 0), std::invalid_argument);
}

TEST(WilsonRectangle, IsClosedAndEqualsPlaquetteProduct) {
    for (int L : {3, 4, 5}) {
        TorusLattice lat(L);
        for (int lx = 1; lx < L; ++lx) {
            for (int ly = 1; ly < L; ++ly) {
                for (int x0 : {0, L - 1}) {
                    const auto loop = wilson_rectangle(lat, x0, 1, lx, ly);
                    EXPECT_EQ(loop.links.size(), static_cast<size_t>(2 * (lx + ly)));
                    EXPECT_EQ(as_set(loop.links).size(), loop.links.size());
                    std::map<int, int> degree;
                    for (int l : loop.links) {
                        for (int v : lat.stars_of_link(l)) ++degree[v];
                    }
                    for (const auto &[v, d] : degree) EXPECT_EQ(d % 2, 0);
                    std::vector<int> product;
                    for (int p : loop.interior) {
                        const auto links = lat.plaquette(p).as_array();
                        product = symmetric_difference(product, {links.begin(), links.end()});
                    }
                    EXPECT_EQ(as_set(product), as_set(loop.links));
                }
            }
        }
    }
}

TEST(NoncontractibleLoop, Layout) {
    TorusLattice lat(3);
    const auto wh = noncontractible_loop(lat, LoopOperator::kWilson, Direction::kHorizontal, 0);
    ASSERT_EQ(wh.links.size(), 3u);
    for (int l : wh.links) {
        EXPECT_FALSE(lat.is_vertical(l));
        EXPECT_EQ(lat.link_coord(l).y, 0);
    }
    const auto tv = noncontractible_loop(lat, LoopOperator::kThooft, Direction::kVertical, 0);
    ASSERT_EQ(tv.links.size(), 3u);
    for (int l : tv.links) {
        EXPECT_FALSE(lat.is_vertical(l));
        EXPECT_EQ(lat.link_coord(l).x, 0);
    }
    EXPECT_THROW(noncontractible_loop(lat, LoopOperator::kWilson, Direction::kVertical, 3), std::out_of_range);
    EXPECT_THROW(noncontractible_loop(lat, LoopOperator::kWilson, Direction::kVertical, -1), std::out_of_range);
}

TEST(NoncontractibleLoop, WilsonAndCrossingThooftShareOneLink) {
    for (int L : {2, 3, 4}) {
        TorusLattice lat(L);
        for (int a = 0; a < L; ++a) {
            for (int b = 0; b < L; ++b) {
                const auto wh = as_set(noncontractible_loop(lat, LoopOperator::kWilson, Direction::kHorizontal, a).links);
                const auto tv = noncontractible_loop(lat, LoopOperator::kThooft, Direction::kVertical, b).links;
                const auto wv = as_set(noncontractible_loop(lat, LoopOperator::kWilson, Direction::kVertical, a).links);
                const auto th = noncontractible_loop(lat, LoopOperator::kThooft, Direction::kHorizontal, b).links;
                const auto count = [](const std::set<int> &s, const std::vector<int> &v) {
                    return std::count_if(v.begin(), v.end(), [&](int l) { return s.count(l) > 0; });
                };
                EXPECT_EQ(count(wh, tv), 1);
                EXPECT_EQ(count(wv, th), 1);
                // Parallel Wilson and 't Hooft lines commute.
                EXPECT_EQ(count(wh, th) % 2, 0);
                EXPECT_EQ(count(wv, tv) % 2, 0);
            }
        }
    }
}

TEST(NoncontractibleLoop, ParallelThooftLinesDifferByStars) {
    for (int L : {3, 4}) {
        TorusLattice lat(L);
        for (auto dir : {Direction::kHorizontal, Direction::kVertical}) {
            const auto a = noncontractible_loop(lat, LoopOperator::kThooft, dir, 0).links;
            const auto b = noncontractible_loop(lat, LoopOperator::kThooft, dir, 1).links;
            const auto diff = symmetric_difference(a, b);
            // The stars strictly between the two dual lines.
            std::vector<int> product;
            for (int t = 0; t < L; ++t) {
                const int v = dir == Direction::kVertical ? lat.site_id(1, t) : lat.site_id(t, 1);
                const auto &s = lat.star(v);
                product = symmetric_difference(product, {s.begin(), s.end()});
            }
            EXPECT_EQ(as_set(product), as_set(diff));
        }
    }
}

TEST(TorusLattice, LinkMask) {
    TorusLattice lat(3);
    EXPECT_EQ(lat.link_mask({0, 3, 17}), (1ull << 0) | (1ull << 3) | (1ull << 17));
    EXPECT_THROW(TorusLattice(6).link_mask({0}), std::length_error);
}

}  // namespace
}  // namespace z2lgt
