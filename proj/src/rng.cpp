// SPDX-License-Identifier: Apache-2.0
//
// mimosel: Monte Carlo simulator for base-station association in massive MIMO
// Copyright (C) 2026 The mimosel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mimosel/rng.hpp"

namespace mimosel {

std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t drop_seed(std::uint64_t master, std::uint64_t sweep, std::uint64_t drop)
{
    return mix_seed(mix_seed(mix_seed(master) ^ sweep) ^ (drop * 0xD1B54A32D192ED03ULL));
}

Rng make_stream(std::uint64_t drop_seed, Stream stream, std::uint64_t index)
{
    auto s = mix_seed(drop_seed ^ (static_cast<std::uint64_t>(stream) << 56) ^ index);
    return Rng(s);
}

} // namespace mimosel
