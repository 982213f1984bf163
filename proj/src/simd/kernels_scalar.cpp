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

#include <cmath>

namespace mimosel::simd::detail {
namespace {

cplx dotu_scalar(const cplx* a, const cplx* b, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

double gain_sum_scalar(const cplx* x, const cplx* cols, std::size_t n, std::size_t m)
{
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        total += std::norm(dotu_scalar(x, cols + j * n, n));
    return total;
}

double norm2_scalar(const cplx* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

// Direct evaluation of every phase; this is the accuracy reference.
void ring_lags_scalar(const double* omega, const double* weight, std::size_t nodes,
                      std::size_t lags, cplx* out)
{
    for (std::size_t d = 0; d < lags; ++d)
    {
        double re = 0.0, im = 0.0;
        const double dd = static_cast<double>(d);
        for (std::size_t j = 0; j < nodes; ++j)
        {
            const double phase = dd * omega[j];
            re += weight[j] * std::cos(phase);
            im += weight[j] * std::sin(phase);
        }
        out[d] = {re, im};
    }
}

} // namespace

const KernelTable scalar_table{Backend::Scalar, dotu_scalar, gain_sum_scalar, norm2_scalar,
                               ring_lags_scalar};

} // namespace mimosel::simd::detail
