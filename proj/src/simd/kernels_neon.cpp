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

#include <arm_neon.h>

#include <cmath>
#include <vector>

namespace mimosel::simd::detail {
namespace {

// One complex number per float64x2_t.
cplx dotu_neon(const cplx* a, const cplx* b, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    float64x2_t prod0 = vdupq_n_f64(0.0), prod1 = vdupq_n_f64(0.0);
    float64x2_t cross0 = vdupq_n_f64(0.0), cross1 = vdupq_n_f64(0.0);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
    {
        float64x2_t va0 = vld1q_f64(pa + 2 * i), vb0 = vld1q_f64(pb + 2 * i);
        float64x2_t va1 = vld1q_f64(pa + 2 * i + 2), vb1 = vld1q_f64(pb + 2 * i + 2);
        prod0 = vfmaq_f64(prod0, va0, vb0);
        prod1 = vfmaq_f64(prod1, va1, vb1);
        cross0 = vfmaq_f64(cross0, va0, vextq_f64(vb0, vb0, 1));
        cross1 = vfmaq_f64(cross1, va1, vextq_f64(vb1, vb1, 1));
    }
    float64x2_t prod = vaddq_f64(prod0, prod1);
    float64x2_t cross = vaddq_f64(cross0, cross1);
    double re = vgetq_lane_f64(prod, 0) - vgetq_lane_f64(prod, 1);
    double im = vaddvq_f64(cross);
    for (; i < n; ++i)
    {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

double gain_sum_neon(const cplx* x, const cplx* cols, std::size_t n, std::size_t m)
{
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        total += std::norm(dotu_neon(x, cols + j * n, n));
    return total;
}

double norm2_neon(const cplx* x, std::size_t n)
{
    const double* p = reinterpret_cast<const double*>(x);
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
    {
        float64x2_t v0 = vld1q_f64(p + 2 * i), v1 = vld1q_f64(p + 2 * i + 2);
        acc0 = vfmaq_f64(acc0, v0, v0);
        acc1 = vfmaq_f64(acc1, v1, v1);
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i)
        s += std::norm(x[i]);
    return s;
}

void ring_lags_neon(const double* omega, const double* weight, std::size_t nodes,
                    std::size_t lags, cplx* out)
{
    const std::size_t vec_nodes = nodes / 2 * 2;
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

        float64x2_t sum_re = vdupq_n_f64(0.0), sum_im = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < vec_nodes; j += 2)
        {
            float64x2_t w = vld1q_f64(weight + j);
            float64x2_t cr = vld1q_f64(cur_re.data() + j);
            float64x2_t ci = vld1q_f64(cur_im.data() + j);
            sum_re = vfmaq_f64(sum_re, w, cr);
            sum_im = vfmaq_f64(sum_im, w, ci);

            float64x2_t sr = vld1q_f64(step_re.data() + j);
            float64x2_t si = vld1q_f64(step_im.data() + j);
            float64x2_t nr = vfmsq_f64(vmulq_f64(cr, sr), ci, si);
            float64x2_t ni = vfmaq_f64(vmulq_f64(cr, si), ci, sr);
            vst1q_f64(cur_re.data() + j, nr);
            vst1q_f64(cur_im.data() + j, ni);
        }
        double re = vaddvq_f64(sum_re), im = vaddvq_f64(sum_im);
        for (std::size_t j = vec_nodes; j < nodes; ++j)
        {
            re += weight[j] * std::cos(dd * omega[j]);
            im += weight[j] * std::sin(dd * omega[j]);
        }
        out[d] = {re, im};
    }
}

} // namespace

const KernelTable neon_table{Backend::Neon, dotu_neon, gain_sum_neon, norm2_neon, ring_lags_neon};

} // namespace mimosel::simd::detail
