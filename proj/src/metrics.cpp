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

#include "mimosel/metrics.hpp"

#include "mimosel/simd/kernels.hpp"

#include <cmath>

namespace mimosel {

std::vector<UserMetric> compute_sinr(const Scenario& scenario, const ChannelRealization& realization,
                                     const PrecoderSet& precoders, double noise_power)
{
    const auto& kern = simd::kernels();
    const std::size_t num_clusters = precoders.clusters.size();
    const std::size_t users = realization.users_per_cluster();
    const std::size_t n = scenario.config.num_antennas;

    std::vector<UserMetric> out;
    out.reserve(num_clusters * users);
    for (std::size_t c = 0; c < num_clusters; ++c)
    {
        const auto& own = precoders.clusters[c];
        const bool served = own.bs != kUnserved;
        for (std::size_t k = 0; k < users; ++k)
        {
            UserMetric m;
            m.cluster = c;
            m.user = k;
            m.bs = own.bs;
            if (served)
                m.signal = std::norm(kern.dotu(realization.conj_channels(c, own.bs).colptr(k), own.transmit.colptr(k), n));

            for (std::size_t other = 0; other < num_clusters; ++other)
            {
                if (other == c)
                    continue;
                const auto& p = precoders.clusters[other];
                if (p.bs == kUnserved || !scenario.visible(c, p.bs))
                    continue;
                const arma::cx_mat& h = realization.conj_channels(c, p.bs);
                m.interference += kern.gain_sum(h.colptr(k), p.transmit.memptr(), n, p.transmit.n_cols);
            }
            m.sinr = m.signal / (m.interference + noise_power);
            m.rate = shannon_rate(m.sinr);
            out.push_back(m);
        }
    }
    return out;
}

std::vector<SlnrMetric> compute_slnr(const Scenario& scenario, const ChannelRealization& realization,
                                     std::size_t c, const ClusterPrecoder& precoder, double noise_power)
{
    const auto& kern = simd::kernels();
    const std::size_t l = precoder.bs;
    const std::size_t users = realization.users_per_cluster();
    const std::size_t n = scenario.config.num_antennas;
    const arma::cx_mat& h_own = realization.conj_channels(c, l);

    std::vector<SlnrMetric> out(users);
    for (std::size_t k = 0; k < users; ++k)
    {
        const simd::cplx* x = precoder.transmit.colptr(k);
        out[k].user = k;
        out[k].signal = std::norm(kern.dotu(h_own.colptr(k), x, n));
        for (std::size_t other = 0; other < scenario.num_clusters(); ++other)
        {
            if (other == c || !scenario.visible(other, l))
                continue;
            const arma::cx_mat& h = realization.conj_channels(other, l);
            // Each victim user's gain towards the single stream x.
            for (arma::uword kk = 0; kk < h.n_cols; ++kk)
                out[k].leakage += std::norm(kern.dotu(h.colptr(kk), x, n));
        }
        out[k].slnr = out[k].signal / (out[k].leakage + noise_power);
    }
    return out;
}

double sum_slnr(std::span<const SlnrMetric> metrics)
{
    double s = 0.0;
    for (const auto& m : metrics)
        s += m.slnr;
    return s;
}

double projected_energy(const EigenBasis& basis, const arma::cx_mat& prebeamformer)
{
    if (basis.rank() == 0)
        return 0.0;
    const arma::cx_mat proj = basis.vectors.t() * prebeamformer; // r x M
    double total = 0.0;
    for (arma::uword i = 0; i < proj.n_rows; ++i)
        total += basis.values(i) * arma::accu(arma::square(arma::abs(proj.row(i))));
    return total;
}

double compute_laslnr(const Scenario& scenario, const ChannelModel& model, std::size_t c, std::size_t l,
                      const Prebeamformer& prebeamformer)
{
    const auto& cfg = scenario.config;
    const auto& own = model.link(c, l).basis;
    const double users = static_cast<double>(cfg.users_per_cluster);

    const double numerator = projected_energy(own, prebeamformer.matrix) - (users - 1.0) * own.largest();
    double denominator = cfg.noise_power / cfg.per_user_power;
    for (std::size_t other = 0; other < scenario.num_clusters(); ++other)
    {
        if (other == c || !scenario.visible(other, l))
            continue;
        denominator += users * projected_energy(model.link(other, l).basis, prebeamformer.matrix);
    }
    return numerator / denominator;
}

SumRate sum_rate(std::span<const UserMetric> metrics, std::size_t num_clusters)
{
    SumRate r;
    for (const auto& m : metrics)
        r.system += shannon_rate(m.sinr);
    r.per_cluster = num_clusters > 0 ? r.system / double(num_clusters) : 0.0;
    return r;
}

} // namespace mimosel
