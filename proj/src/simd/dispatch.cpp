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

#include "backends.hpp"

#include <cstdlib>
#include <string>

namespace mimosel::simd {

std::string_view to_string(Backend backend)
{
    switch (backend)
    {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable* kernels_for(Backend backend)
{
    switch (backend)
    {
    case Backend::Scalar:
        return &detail::scalar_table;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
            return &detail::avx2_table;
#endif
        return nullptr;
    case Backend::Neon:
#if defined(__aarch64__)
        return &detail::neon_table;
#else
        return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Backend> available_backends()
{
    std::vector<Backend> out;
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
        if (kernels_for(b) != nullptr)
            out.push_back(b);
    return out;
}

namespace {

const KernelTable& resolve()
{
    if (const char* forced = std::getenv("MIMOSEL_SIMD"))
    {
        const std::string name(forced);
        for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
            if (name == to_string(b))
                if (const KernelTable* t = kernels_for(b))
                    return *t;
    }
    for (Backend b : {Backend::Avx2, Backend::Neon})
        if (const KernelTable* t = kernels_for(b))
            return *t;
    return detail::scalar_table;
}

} // namespace

const KernelTable& kernels()
{
    static const KernelTable& active = resolve();
    return active;
}

} // namespace mimosel::simd
