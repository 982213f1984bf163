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

#include "mimosel/channel.hpp"

#include "mimosel/errors.hpp"
#include "mimosel/linalg.hpp"
#include "mimosel/quadrature.hpp"
#include "mimosel/simd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mimosel {

std::size_t quadrature_nodes_for(double spread, std::size_t num_antennas, double spacing_ratio)
{
    // Bound on the phase rate of the integrand in the normalized variable.
    const double max_lag = num_antennas > 0 ? double(num_antennas - 1) : 0.0;
    const double kappa = 2.0 * std::numbers::pi * spacing_ratio * max_lag * spread;
    const auto needed = static_cast<std::size_t>(std::ceil(0.75 * kappa + 40.0));
    return std::max(kDefaultQuadratureNodes, needed);
}

Covariance build_covariance(double theta, double spread, std::size_t num_antennas,
                            double spacing_ratio, std::size_t nodes)
{
    if (!(spread >= 0.0) || spread >= std::numbers::pi / 2.0)
        throw Error(ErrorKind::InvalidSpread, "angle spread " + std::to_string(spread) +
                                                  " rad outside [0, pi/2)");
    if (num_antennas == 0)
        throw Error(ErrorKind::InvalidConfig, "num_antennas: must be >= 1");

    Covariance cov;
    cov.theta = theta;
    cov.spread = spread;
    cov.spacing_ratio = spacing_ratio;

    std::vector<simd::cplx> lags(num_antennas);
    if (spread == 0.0)
    {
        const double omega = -2.0 * std::numbers::pi * spacing_ratio * std::sin(theta);
        for (std::size_t d = 0; d < num_antennas; ++d)
            lags[d] = std::polar(1.0, double(d) * omega);
    }
    else
    {
        cov.quadrature_nodes = nodes == 0 ? quadrature_nodes_for(spread, num_antennas, spacing_ratio) : nodes;
        const GaussLegendreRule& rule = gauss_legendre(cov.quadrature_nodes);
        std::vector<double> omega(rule.nodes.size()), weight(rule.nodes.size());
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        {
            omega[j] = -2.0 * std::numbers::pi * spacing_ratio * std::sin(theta + spread * rule.nodes[j]);
            weight[j] = 0.5 * rule.weights[j];
        }
        simd::kernels().ring_lags(omega.data(), weight.data(), omega.size(), num_antennas, lags.data());
    }
    lags[0] = {1.0, 0.0};

    cov.matrix.set_size(num_antennas, num_antennas);
    for (std::size_t q = 0; q < num_antennas; ++q)
        for (std::size_t p = 0; p < num_antennas; ++p)
            cov.matrix(p, q) = p >= q ? lags[p - q] : std::conj(lags[q - p]);
    return cov;
}

arma::cx_mat EigenBasis::covariance() const
{
    return vectors * arma::diagmat(arma::conv_to<arma::cx_vec>::from(values)) * vectors.t();
}

EigenBasis eigen_truncate(const arma::cx_mat& covariance, double rank_epsilon)
{
    arma::vec values;
    arma::cx_mat vectors;
    if (!arma::eig_sym(values, vectors, covariance))
        throw Error(ErrorKind::NumericalFailure, "Hermitian eigensolver did not converge");

    values = arma::reverse(values);
    vectors = arma::fliplr(vectors);
    values.transform([](double v) { return v > 0.0 ? v : 0.0; });

    arma::uword rank = 0;
    if (rank_epsilon == 0.0)
    {
        while (rank < values.n_elem && values(rank) > kExactRankFloor)
            ++rank;
    }
    else
    {
        const double total = arma::accu(values);
        const double target = (1.0 - rank_epsilon) * total;
        double kept = 0.0;
        while (rank < values.n_elem && values(rank) > 0.0 && kept < target)
            kept += values(rank++);
    }

    EigenBasis basis;
    basis.values = values.head(rank);
    basis.vectors = vectors.head_cols(rank);
    normalize_column_phases(basis.vectors);
    return basis;
}

double effective_rank_epsilon(const NetworkConfig& config)
{
    return config.exact_rank ? 0.0 : config.rank_epsilon;
}

ChannelModel::ChannelModel(std::size_t num_clusters, std::size_t num_bs)
    : num_clusters_(num_clusters), num_bs_(num_bs), links_(num_clusters * num_bs)
{
}

const LinkStatistics& ChannelModel::link(std::size_t c, std::size_t l) const
{
    const auto& slot = links_[index(c, l)];
    if (!slot)
        throw Error(ErrorKind::DegenerateGeometry,
                    "no link statistics for cluster " + std::to_string(c) + " at BS " + std::to_string(l));
    return *slot;
}

ChannelModel build_channel_model(const Scenario& scenario)
{
    const auto& cfg = scenario.config;
    const double eps = effective_rank_epsilon(cfg);
    ChannelModel model(scenario.num_clusters(), scenario.num_bs());
    for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
        for (std::size_t l = 0; l < scenario.num_bs(); ++l)
        {
            if (!scenario.visible(c, l))
                continue;
            const auto& geo = scenario.clusters[c].per_bs[l];
            LinkStatistics stats;
            stats.covariance = build_covariance(geo.theta, geo.spread, cfg.num_antennas, cfg.spacing_ratio);
            stats.basis = eigen_truncate(stats.covariance.matrix, eps);
            model.set(c, l, std::move(stats));
        }
    return model;
}

ChannelRealization::ChannelRealization(std::size_t num_clusters, std::size_t num_bs, std::size_t users_per_cluster)
    : num_clusters_(num_clusters), num_bs_(num_bs), users_(users_per_cluster),
      conj_(num_clusters * num_bs), white_(num_clusters * num_bs)
{
}

void ChannelRealization::set(std::size_t c, std::size_t l, arma::cx_mat conj_channels, arma::cx_mat whitened)
{
    conj_[index(c, l)] = std::move(conj_channels);
    white_[index(c, l)] = std::move(whitened);
}

arma::cx_mat sample_user_channels(const EigenBasis& basis, std::size_t users, Rng& rng, arma::cx_mat* whitened)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    arma::cx_mat w(basis.rank(), users);
    for (arma::uword k = 0; k < w.n_cols; ++k)
        for (arma::uword i = 0; i < w.n_rows; ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            w(i, k) = {re, im};
        }

    arma::cx_mat h(basis.dimension(), users, arma::fill::zeros);
    if (basis.rank() > 0)
    {
        const arma::vec amp = arma::sqrt(arma::clamp(basis.values, 0.0, arma::datum::inf));
        h = basis.vectors * (arma::diagmat(arma::conv_to<arma::cx_vec>::from(amp)) * w);
    }
    if (whitened != nullptr)
        *whitened = std::move(w);
    return h;
}

ChannelRealization sample_channels(const ChannelModel& model, std::size_t users_per_cluster, Rng& rng)
{
    ChannelRealization out(model.num_clusters(), model.num_bs(), users_per_cluster);
    for (std::size_t c = 0; c < model.num_clusters(); ++c)
        for (std::size_t l = 0; l < model.num_bs(); ++l)
        {
            if (!model.has(c, l))
                continue;
            arma::cx_mat w;
            arma::cx_mat h = sample_user_channels(model.link(c, l).basis, users_per_cluster, rng, &w);
            out.set(c, l, arma::conj(h), std::move(w));
        }
    return out;
}

} // namespace mimosel
