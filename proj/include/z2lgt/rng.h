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

#ifndef Z2LGT_RNG_H
#define Z2LGT_RNG_H

#include <cstdint>

namespace z2lgt {

/// splitmix64. Used instead of <random> engines + distributions because the
/// standard distributions are not bit-reproducible across library versions.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

   private:
    uint64_t state_;
};

/// Seed for the independent stream `stream` derived from a master seed.
uint64_t stream_seed(uint64_t seed, uint64_t stream);

}  // namespace z2lgt

#endif
