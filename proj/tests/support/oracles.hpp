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

// Test-side reference computations. They avoid the library's kernels and
// shortcuts on purpose: plain loops, full matrices, generic solvers.

#include "mimosel/channel.hpp"
#include "mimosel/metrics.hpp"
#include "mimosel/precoding.hpp"
#include "mimosel/scenario.hpp"

#include <armadillo>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

// Midpoint rule with `panels` panels for
//   1/(2 spread) * int_{theta-spread}^{theta+spread} exp(-2i pi d s sin a) da
// at every lag d, assembled into the full N x N matrix.
inline arma::cx_mat riemann_covariance(double theta, double spread, std::size_t n, double s, std::size_t panels)
{
    std::vector<std::complex<long double>> lag(n, 0.0L);
    const long double width = 2.0L * spread / panels;
    for (std::size_t j = 0; j < panels; ++j)
    {
        const long double a = theta - spread + (j + 0.5L) * width;
        const long double phi = -2.0L * std::numbers::pi_v<long double> * s * std::sin(a);
        const std::complex<long double> step(std::cos(phi), std::sin(phi));
        std::complex<long double> z = 1.0L;
        for (std::size_t d = 0; d < n; ++d)
        {
            lag[d] += z;
            z *= step;
        }
    }
    arma::cx_mat r(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
        {
            const auto v = p >= q ? lag[p - q] : std::conj(lag[q - p]);
            r(p, q) = std::complex<double>(double(v.real() / panels), double(v.imag() / panels));
        }
    return r;
}

// Orthonormal basis of the orthogonal complement of span(columns), from a full
// SVD of the stacked matrix.
inline arma::cx_mat complement_basis(const arma::cx_mat& columns, std::size_t n, double tol)
{
    if (columns.n_cols == 0)
        return arma::eye<arma::cx_mat>(n, n);
    arma::cx_mat u, v;
    arma::vec s;
    arma::svd(u, s, v, columns);
    std::size_t rank = 0;
    while (rank < s.n_elem && s(rank) > tol)
        ++rank;
    return u.cols(rank, n - 1);
}

// Received gain h^H x, with `conj_h` the stored conj(h).
inline double gain(const arma::cx_vec& conj_h, const arma::cx_vec& x)
{
    const std::complex<double> v = arma::accu(conj_h % x);
    return std::norm(v);
}

// Straight-line SINR: every (other cluster, its serving BS, its user stream)
// term summed explicitly when the victim is visible from that BS.
inline std::vector<double> brute_sinr(const mimosel::Scenario& sc, const mimosel::ChannelRealization& real,
                                      const mimosel::PrecoderSet& set, double noise)
{
    std::vector<double> out;
    const std::size_t users = real.users_per_cluster();
    for (std::size_t c = 0; c < set.clusters.size(); ++c)
    {
        const auto& own = set.clusters[c];
        for (std::size_t k = 0; k < users; ++k)
        {
            double signal = 0.0;
            if (own.bs != mimosel::kUnserved)
                signal = gain(real.conj_channels(c, own.bs).col(k), own.transmit.col(k));
            double interference = 0.0;
            for (std::size_t o = 0; o < set.clusters.size(); ++o)
            {
                const auto& p = set.clusters[o];
                if (o == c || p.bs == mimosel::kUnserved || !sc.visible(c, p.bs))
                    continue;
                for (std::size_t kk = 0; kk < p.transmit.n_cols; ++kk)
                    interference += gain(real.conj_channels(c, p.bs).col(k), p.transmit.col(kk));
            }
            out.push_back(signal / (interference + noise));
        }
    }
    return out;
}

// Straight-line SLNR of cluster c under `p`: leakage into every user of every
// other cluster visible from p.bs.
inline std::vector<double> brute_slnr(const mimosel::Scenario& sc, const mimosel::ChannelRealization& real,
                                      std::size_t c, const mimosel::ClusterPrecoder& p, double noise)
{
    std::vector<double> out;
    for (std::size_t k = 0; k < p.transmit.n_cols; ++k)
    {
        const double signal = gain(real.conj_channels(c, p.bs).col(k), p.transmit.col(k));
        double leakage = 0.0;
        for (std::size_t o = 0; o < sc.num_clusters(); ++o)
        {
            if (o == c || !sc.visible(o, p.bs))
                continue;
            const arma::cx_mat& h = real.conj_channels(o, p.bs);
            for (std::size_t kk = 0; kk < h.n_cols; ++kk)
                leakage += gain(h.col(kk), p.transmit.col(k));
        }
        out.push_back(signal / (leakage + noise));
    }
    return out;
}

} // namespace oracle
