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

#include "mimosel/precoding.hpp"

#include "mimosel/linalg.hpp"

#include <cmath>
#include <string>

namespace mimosel {

std::string_view to_string(PrebeamformerCategory category)
{
    return category == PrebeamformerCategory::First ? "first" : "second";
}

PrebeamformerCategory parse_category(std::string_view text)
{
    if (text == "first" || text == "bd")
        return PrebeamformerCategory::First;
    if (text == "second" || text == "abd")
        return PrebeamformerCategory::Second;
    throw Error(ErrorKind::InvalidConfig, "category: expected 'first' or 'second', got '" + std::string(text) + "'");
}

namespace {

arma::cx_mat stack_columns(std::span<const EigenBasis* const> interferers, std::span<const std::size_t> counts,
                           std::size_t rows)
{
    std::size_t total = 0;
    for (auto n : counts)
        total += n;
    arma::cx_mat stacked(rows, total);
    std::size_t col = 0;
    for (std::size_t i = 0; i < interferers.size(); ++i)
    {
        if (counts[i] == 0)
            continue;
        stacked.cols(col, col + counts[i] - 1) = interferers[i]->vectors.head_cols(counts[i]);
        col += counts[i];
    }
    return stacked;
}

Prebeamformer project_and_extract(const EigenBasis& target, const arma::cx_mat& interference, std::size_t dimension,
                                  PrebeamformerCategory category)
{
    const std::size_t n = target.dimension();
    const arma::cx_mat basis = orthonormal_basis(interference, kInterferenceRankTolerance);
    if (n < basis.n_cols + dimension)
        throw Error(ErrorKind::InfeasibleNullSpace,
                    "interference space has rank " + std::to_string(basis.n_cols) + " of " + std::to_string(n) +
                        ", leaving fewer than " + std::to_string(dimension) + " dimensions");

    // Weighted target subspace E Lambda^{1/2}, projected away from the
    // interference space; its left singular vectors are the eigenvectors of P R P.
    arma::cx_mat weighted = target.vectors;
    for (arma::uword j = 0; j < weighted.n_cols; ++j)
        weighted.col(j) *= std::sqrt(target.values(j));
    if (basis.n_cols > 0)
        weighted -= basis * (basis.t() * weighted);

    arma::cx_mat u, v;
    arma::vec s;
    if (weighted.n_cols > 0 && !arma::svd_econ(u, s, v, weighted, "left", "std"))
        throw Error(ErrorKind::NumericalFailure, "SVD did not converge");

    const double floor = 1e-12 * std::max(target.largest(), 1e-300);
    if (s.n_elem < dimension || s(dimension - 1) * s(dimension - 1) <= floor)
        throw Error(ErrorKind::InfeasibleNullSpace,
                    "projected target subspace has fewer than " + std::to_string(dimension) + " usable directions");

    Prebeamformer out;
    out.category = category;
    out.matrix = u.head_cols(dimension);
    normalize_column_phases(out.matrix);
    return out;
}

} // namespace

Prebeamformer bd_prebeamformer(const EigenBasis& target, std::span<const EigenBasis* const> interferers,
                               std::size_t dimension)
{
    std::vector<std::size_t> counts;
    for (const auto* e : interferers)
        counts.push_back(e->rank());
    return project_and_extract(target, stack_columns(interferers, counts, target.dimension()), dimension,
                               PrebeamformerCategory::First);
}

std::size_t dominant_count(const EigenBasis& basis, double fraction)
{
    if (fraction >= 1.0)
        return basis.rank();
    const double target = fraction * arma::accu(basis.values);
    double kept = 0.0;
    std::size_t count = 0;
    while (count < basis.rank() && kept < target)
        kept += basis.values(count++);
    return count;
}

Prebeamformer abd_prebeamformer(const EigenBasis& target, std::span<const EigenBasis* const> interferers,
                                std::size_t dimension, double energy_fraction)
{
    std::vector<std::size_t> counts;
    for (const auto* e : interferers)
        counts.push_back(dominant_count(*e, energy_fraction));
    return project_and_extract(target, stack_columns(interferers, counts, target.dimension()), dimension,
                               PrebeamformerCategory::Second);
}

arma::cx_mat zf_inner_precoder(const arma::cx_mat& effective_channel, double power)
{
    if (effective_channel.n_rows == 0 || effective_channel.n_rows > effective_channel.n_cols)
        throw Error(ErrorKind::RankDeficient, "effective channel is not of full row rank");

    // Right pseudo-inverse Hbar^H (Hbar Hbar^H)^{-1} = W S^{-1} U^H from the
    // thin SVD; avoids squaring the condition number through the Gram matrix.
    arma::cx_mat u, w;
    arma::vec s;
    if (!arma::svd_econ(u, s, w, effective_channel, "both", "std"))
        throw Error(ErrorKind::NumericalFailure, "SVD did not converge");
    if (s(s.n_elem - 1) < kZfConditionFloor * s(0))
        throw Error(ErrorKind::RankDeficient, "effective channel is not of full row rank");

    arma::cx_mat v = w * arma::diagmat(arma::conv_to<arma::cx_vec>::from(1.0 / s)) * u.t();
    for (arma::uword k = 0; k < v.n_cols; ++k)
        v.col(k) *= std::sqrt(power) / arma::norm(v.col(k));
    return v;
}

PrebeamformerTable::PrebeamformerTable(std::size_t num_clusters, std::size_t num_bs, PrebeamformerCategory category)
    : num_clusters_(num_clusters), num_bs_(num_bs), category_(category), entries_(num_clusters * num_bs),
      failures_(num_clusters * num_bs)
{
}

const Prebeamformer& PrebeamformerTable::at(std::size_t c, std::size_t l) const
{
    const auto& slot = entries_[index(c, l)];
    if (!slot)
        throw Error(failures_[index(c, l)].value_or(ErrorKind::NoFeasibleBS),
                    "no prebeamformer for BS " + std::to_string(l) + ", cluster " + std::to_string(c));
    return *slot;
}

PrebeamformerTable build_prebeamformers(const Scenario& scenario, const ChannelModel& model,
                                        PrebeamformerCategory category)
{
    const auto& cfg = scenario.config;
    PrebeamformerTable table(scenario.num_clusters(), scenario.num_bs(), category);
    for (std::size_t l = 0; l < scenario.num_bs(); ++l)
        for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
        {
            if (!scenario.visible(c, l))
                continue;
            std::vector<const EigenBasis*> interferers;
            for (std::size_t other = 0; other < scenario.num_clusters(); ++other)
                if (other != c && scenario.visible(other, l))
                    interferers.push_back(&model.link(other, l).basis);

            const auto& target = model.link(c, l).basis;
            try
            {
                table.set(c, l,
                          category == PrebeamformerCategory::First
                              ? bd_prebeamformer(target, interferers, cfg.users_per_cluster)
                              : abd_prebeamformer(target, interferers, cfg.users_per_cluster, cfg.abd_energy_fraction));
            }
            catch (const Error& e)
            {
                if (e.kind() != ErrorKind::InfeasibleNullSpace)
                    throw;
                table.fail(c, l, e.kind());
            }
        }
    return table;
}

CandidateTable::CandidateTable(std::size_t num_clusters, std::size_t num_bs)
    : num_clusters_(num_clusters), num_bs_(num_bs), entries_(num_clusters * num_bs), failures_(num_clusters * num_bs)
{
}

const ClusterPrecoder& CandidateTable::at(std::size_t c, std::size_t l) const
{
    const auto& slot = entries_[index(c, l)];
    if (!slot)
        throw Error(failures_[index(c, l)].value_or(ErrorKind::NoFeasibleBS),
                    "no precoder for BS " + std::to_string(l) + ", cluster " + std::to_string(c));
    return *slot;
}

std::vector<std::size_t> CandidateTable::candidates(std::size_t c) const
{
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < num_bs_; ++l)
        if (feasible(c, l))
            out.push_back(l);
    return out;
}

ClusterPrecoder build_cluster_precoder(const Prebeamformer& prebeamformer, const ChannelRealization& realization,
                                       std::size_t c, std::size_t l, double power)
{
    ClusterPrecoder p;
    p.bs = l;
    p.prebeamformer = prebeamformer;
    const arma::cx_mat effective = realization.channel_matrix(c, l) * prebeamformer.matrix;
    p.inner = zf_inner_precoder(effective, power);
    p.transmit = prebeamformer.matrix * p.inner;
    return p;
}

CandidateTable build_candidates(const Scenario& scenario, const PrebeamformerTable& prebeamformers,
                                const ChannelRealization& realization)
{
    CandidateTable table(scenario.num_clusters(), scenario.num_bs());
    for (std::size_t c = 0; c < scenario.num_clusters(); ++c)
        for (std::size_t l = 0; l < scenario.num_bs(); ++l)
        {
            if (!scenario.visible(c, l))
                continue;
            if (!prebeamformers.feasible(c, l))
            {
                if (auto kind = prebeamformers.failure(c, l))
                    table.fail(c, l, *kind);
                continue;
            }
            try
            {
                table.set(c, l, build_cluster_precoder(prebeamformers.at(c, l), realization, c, l,
                                                       scenario.config.per_user_power));
            }
            catch (const Error& e)
            {
                if (e.kind() != ErrorKind::RankDeficient)
                    throw;
                table.fail(c, l, e.kind());
            }
        }
    return table;
}

namespace {

ClusterPrecoder unserved_precoder()
{
    ClusterPrecoder p;
    p.bs = kUnserved;
    return p;
}

} // namespace

PrecoderSet build_precoder_set(const Scenario& scenario, const ChannelModel& model,
                               const ChannelRealization& realization, std::span<const std::size_t> cluster_to_bs,
                               PrebeamformerCategory category)
{
    const auto& cfg = scenario.config;
    PrecoderSet set;
    set.clusters.reserve(cluster_to_bs.size());
    for (std::size_t c = 0; c < cluster_to_bs.size(); ++c)
    {
        const std::size_t l = cluster_to_bs[c];
        if (l == kUnserved)
        {
            set.clusters.push_back(unserved_precoder());
            continue;
        }
        try
        {
            if (!scenario.visible(c, l))
                throw Error(ErrorKind::NoFeasibleBS, "BS outside the cluster's sector");
            std::vector<const EigenBasis*> interferers;
            for (std::size_t other = 0; other < scenario.num_clusters(); ++other)
                if (other != c && scenario.visible(other, l))
                    interferers.push_back(&model.link(other, l).basis);
            const auto& target = model.link(c, l).basis;
            const Prebeamformer b =
                category == PrebeamformerCategory::First
                    ? bd_prebeamformer(target, interferers, cfg.users_per_cluster)
                    : abd_prebeamformer(target, interferers, cfg.users_per_cluster, cfg.abd_energy_fraction);
            set.clusters.push_back(build_cluster_precoder(b, realization, c, l, cfg.per_user_power));
        }
        catch (const Error& e)
        {
            throw Error(e.kind(), "(BS " + std::to_string(l) + ", cluster " + std::to_string(c) + ") " + e.what());
        }
    }
    return set;
}

PrecoderSet precoder_set_from(const CandidateTable& table, std::span<const std::size_t> cluster_to_bs)
{
    PrecoderSet set;
    set.clusters.reserve(cluster_to_bs.size());
    for (std::size_t c = 0; c < cluster_to_bs.size(); ++c)
        set.clusters.push_back(cluster_to_bs[c] == kUnserved ? unserved_precoder()
                                                              : table.at(c, cluster_to_bs[c]));
    return set;
}

} // namespace mimosel
