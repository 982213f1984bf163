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

// Data-parallel inner loops of the simulator. Every kernel has a scalar
// reference implementation; vector backends are selected once at runtime
// from the CPU features (override with MIMOSEL_SIMD=scalar|avx2|neon) and are
// equivalence-tested against the reference.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace mimosel::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend backend);

struct KernelTable {
    Backend backend;

    // sum_i a[i] * b[i] (no conjugation)
    cplx (*dotu)(const cplx* a, const cplx* b, std::size_t n);

    // sum_j |sum_i x[i] * cols[j*n + i]|^2 over m contiguous columns of length n
    double (*gain_sum)(const cplx* x, const cplx* cols, std::size_t n, std::size_t m);

    // sum_i |x[i]|^2
    double (*norm2)(const cplx* x, std::size_t n);

    // out[d] = sum_j weight[j] * exp(i * d * omega[j]) for d = 0 .. lags-1
    void (*ring_lags)(const double* omega, const double* weight, std::size_t nodes,
                      std::size_t lags, cplx* out);
};

// Active table; resolved on first use.
const KernelTable& kernels();

// Table for a specific backend, or nullptr when this binary/CPU lacks it.
const KernelTable* kernels_for(Backend backend);

std::vector<Backend> available_backends();

} // namespace mimosel::simd
