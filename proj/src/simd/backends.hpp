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

#include "mimosel/simd/kernels.hpp"

namespace mimosel::simd::detail {

extern const KernelTable scalar_table;

#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif

#if defined(__aarch64__)
extern const KernelTable neon_table;
#endif

// Lags between exact re-anchoring of the rotation recurrence in the vector
// ring_lags kernels. Bounds the accumulated phase drift to a few ulps.
inline constexpr std::size_t kRingAnchorInterval = 32;

} // namespace mimosel::simd::detail
