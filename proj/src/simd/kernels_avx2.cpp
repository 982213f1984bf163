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

#include <immintrin.h>

#include <cmath>
#include <vector>

namespace mimosel::simd::detail {
namespace {

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// Interleaved complex data: one __m256d holds two complex numbers.
// prod accumulates (ar*br, ai*bi), cross accumulates (ar*bi, ai*br).
cplx dotu_avx2(const cplx* a, const cplx* b, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);

    __m256d prod0 = _mm256_setzero_pd(), prod1 = _mm256_setzero_pd();
    __m256d cross0 = _mm256_setzero_pd(), cross1 = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        prod0 = _mm256_fmadd_pd(va0, vb0, prod0);
        prod1 = _mm256_fmadd_pd(va1, vb1, prod1);
        cross0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), cross0);
        cross1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), cross1);
    }
    for (; i + 2 <= n; i += 2)
    {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        prod0 = _mm256_fmadd_pd(va, vb, prod0);
        cross0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross0);
    }
    __m256d prod = _mm256_add_pd(prod0, prod1);
    __m256d cross = _mm256_add_pd(cross0, cross1);

    // re = sum(even lanes of prod) - sum(odd lanes); im = sum(all lanes of cross)
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double re = hsum(_mm256_mul_pd(prod, sign));
    double im = hsum(cross);

    for (; i < n; ++i)
    {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

double gain_sum_avx2(const cplx* x, const cplx* cols, std::size_t n, std::size_t m)
{
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        total += std::norm(dotu_avx2(x, cols + j * n, n));
    return total;
}

double norm2_avx2(const cplx* x, std::size_t n)
{
    const double* p = reinterpret_cast<const double*>(x);
    const std::size_t len = 2 * n;
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8)
    {
        __m256d v0 = _mm256_loadu_pd(p + i);
        __m256d v1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i)
        s += p[i] * p[i];
    return s;
}

// Four nodes per register in split re/im layout. The phase exp(i*d*omega)
// advances by one complex multiply per lag and is re-anchored exactly every
// kRingAnchorInterval lags.
void ring_lags_avx2(const double* omega, const double* weight, std::size_t nodes,
                    std::size_t lags, cplx* out)
{
    const std::size_t vec_nodes = nodes / 4 * 4;
    std::vector<double> step_re(vec_nodes), step_im(vec_nodes), cur_re(vec_nodes), cur_im(vec_nodes);
    for (std::size_t j = 0; j < vec_nodes; ++j)
    {
        step_re[j] = std::cos(omega[j]);
        step_im[j] = std::sin(omega[j]);
    }

    for (std::size_t d = 0; d < lags; ++d)
    {
        const double dd = static_cast<double>(d);
        if (d % kRingAnchorInterval == 0)
            for (std::size_t j = 0; j < vec_nodes; ++j)
            {
                cur_re[j] = std::cos(dd * omega[j]);
                cur_im[j] = std::sin(dd * omega[j]);
            }

        __m256d sum_re = _mm256_setzero_pd(), sum_im = _mm256_setzero_pd();
        for (std::size_t j = 0; j < vec_nodes; j += 4)
        {
            __m256d w = _mm256_loadu_pd(weight + j);
            __m256d cr = _mm256_loadu_pd(cur_re.data() + j);
            __m256d ci = _mm256_loadu_pd(cur_im.data() + j);
            sum_re = _mm256_fmadd_pd(w, cr, sum_re);
            sum_im = _mm256_fmadd_pd(w, ci, sum_im);

            __m256d sr = _mm256_loadu_pd(step_re.data() + j);
            __m256d si = _mm256_loadu_pd(step_im.data() + j);
            __m256d nr = _mm256_fmsub_pd(cr, sr, _mm256_mul_pd(ci, si));
            __m256d ni = _mm256_fmadd_pd(cr, si, _mm256_mul_pd(ci, sr));
            _mm256_storeu_pd(cur_re.data() + j, nr);
            _mm256_storeu_pd(cur_im.data() + j, ni);
        }
        double re = hsum(sum_re), im = hsum(sum_im);
        for (std::size_t j = vec_nodes; j < nodes; ++j)
        {
            re += weight[j] * std::cos(dd * omega[j]);
            im += weight[j] * std::sin(dd * omega[j]);
        }
        out[d] = {re, im};
    }
}

} // namespace

const KernelTable avx2_table{Backend::Avx2, dotu_avx2, gain_sum_avx2, norm2_avx2, ring_lags_avx2};

} // namespace mimosel::simd::detail
