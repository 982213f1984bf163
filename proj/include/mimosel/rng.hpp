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

#pragma once

#include <cstdint>
#include <random>

namespace mimosel {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Sub-seed of drop `drop` at sweep point `sweep` under a master seed. Any
// single drop can be replayed from (master, sweep, drop) alone.
std::uint64_t drop_seed(std::uint64_t master, std::uint64_t sweep, std::uint64_t drop);

// Streams drawn inside one drop. Each purpose gets its own generator so that,
// e.g., changing the set of algorithms never perturbs the channel draws.
enum class Stream : std::uint64_t {
    Geometry = 1,
    Channel = 2,
    RandomSelection = 3,
    ExtraDraws = 4,
};

Rng make_stream(std::uint64_t drop_seed, Stream stream, std::uint64_t index = 0);

} // namespace mimosel
