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

#include "mimosel/channel.hpp"
#include "mimosel/errors.hpp"
#include "mimosel/scenario.hpp"

#include <armadillo>

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mimosel {

// First category nulls every other cluster's eigenspace exactly (block
// diagonalization); second category nulls only their dominant part
// (approximate block diagonalization).
enum class PrebeamformerCategory { First, Second };

std::string_view to_string(PrebeamformerCategory category);
PrebeamformerCategory parse_category(std::string_view text);

struct Prebeamformer {
    arma::cx_mat matrix; // N x M, orthonormal columns
    PrebeamformerCategory category = PrebeamformerCategory::First;

    std::size_t dimension() const { return matrix.n_cols; }
};

// Singular-value floor below which stacked interferer directions are treated
// as linearly dependent.
inline constexpr double kInterferenceRankTolerance = 1e-9;

// Top-M eigenvectors of P R P, where P projects onto the orthogonal complement
// of span{interferer eigenvectors} and R = E Lambda E^H of the target.
// Throws InfeasibleNullSpace when fewer than M directions remain.
Prebeamformer bd_prebeamformer(const EigenBasis& target, std::span<const EigenBasis* const> interferers,
                               std::size_t dimension);

// Number of leading eigenvectors holding `fraction` of the eigenvalue mass.
std::size_t dominant_count(const EigenBasis& basis, double fraction);

// Same construction against only the dominant_count(., energy_fraction)
// leading eigenvectors of each interferer.
Prebeamformer abd_prebeamformer(const EigenBasis& target, std::span<const EigenBasis* const> interferers,
                                std::size_t dimension, double energy_fraction);

inline constexpr double kZfConditionFloor = 1e-10;

// V = Hbar^H (Hbar Hbar^H)^{-1} with every column rescaled to squared norm
// `power`. Throws RankDeficient when Hbar is numerically rank deficient.
arma::cx_mat zf_inner_precoder(const arma::cx_mat& effective_channel, double power);

// Prebeamformers of every visible (cluster, BS) pair for one category. They
// depend only on covariance statistics, never on channels or assignments.
class PrebeamformerTable {
public:
    PrebeamformerTable() = default;
    PrebeamformerTable(std::size_t num_clusters, std::size_t num_bs, PrebeamformerCategory category);

    PrebeamformerCategory category() const { return category_; }
    std::size_t num_clusters() const { return num_clusters_; }
    std::size_t num_bs() const { return num_bs_; }

    bool feasible(std::size_t c, std::size_t l) const { return entries_[index(c, l)].has_value(); }
    const Prebeamformer& at(std::size_t c, std::size_t l) const;
    std::optional<ErrorKind> failure(std::size_t c, std::size_t l) const { return failures_[index(c, l)]; }

    void set(std::size_t c, std::size_t l, Prebeamformer b) { entries_[index(c, l)] = std::move(b); }
    void fail(std::size_t c, std::size_t l, ErrorKind kind) { failures_[index(c, l)] = kind; }

private:
    std::size_t index(std::size_t c, std::size_t l) const { return c * num_bs_ + l; }

    std::size_t num_clusters_ = 0;
    std::size_t num_bs_ = 0;
    PrebeamformerCategory category_ = PrebeamformerCategory::First;
    std::vector<std::optional<Prebeamformer>> entries_;
    std::vector<std::optional<ErrorKind>> failures_;
};

// The interference space of cluster c at BS l spans every other cluster
// visible from l, whether or not l serves it.
PrebeamformerTable build_prebeamformers(const Scenario& scenario, const ChannelModel& model,
                                        PrebeamformerCategory category);

// Two-stage precoder of one cluster at one BS.
// BS index of a cluster left without service.
inline constexpr std::size_t kUnserved = static_cast<std::size_t>(-1);

// An unserved cluster has bs == kUnserved and empty matrices.
struct ClusterPrecoder {
    std::size_t bs = 0;
    Prebeamformer prebeamformer;
    arma::cx_mat inner;    // M x K
    arma::cx_mat transmit; // N x K, B * V
};

// Full precoders (prebeamformer + ZF on the drawn channels) of every feasible
// pair. Since neither stage depends on the assignment this table is shared by
// every selection algorithm and every assignment the exhaustive search visits.
class CandidateTable {
public:
    CandidateTable() = default;
    CandidateTable(std::size_t num_clusters, std::size_t num_bs);

    std::size_t num_clusters() const { return num_clusters_; }
    std::size_t num_bs() const { return num_bs_; }

    bool feasible(std::size_t c, std::size_t l) const { return entries_[index(c, l)].has_value(); }
    const ClusterPrecoder& at(std::size_t c, std::size_t l) const;
    std::optional<ErrorKind> failure(std::size_t c, std::size_t l) const { return failures_[index(c, l)]; }

    // Feasible BSs of cluster c in ascending order.
    std::vector<std::size_t> candidates(std::size_t c) const;

    void set(std::size_t c, std::size_t l, ClusterPrecoder p) { entries_[index(c, l)] = std::move(p); }
    void fail(std::size_t c, std::size_t l, ErrorKind kind) { failures_[index(c, l)] = kind; }

private:
    std::size_t index(std::size_t c, std::size_t l) const { return c * num_bs_ + l; }

    std::size_t num_clusters_ = 0;
    std::size_t num_bs_ = 0;
    std::vector<std::optional<ClusterPrecoder>> entries_;
    std::vector<std::optional<ErrorKind>> failures_;
};

ClusterPrecoder build_cluster_precoder(const Prebeamformer& prebeamformer, const ChannelRealization& realization,
                                       std::size_t c, std::size_t l, double power);

CandidateTable build_candidates(const Scenario& scenario, const PrebeamformerTable& prebeamformers,
                                const ChannelRealization& realization);

// Precoders actually used for one assignment (cluster c served by
// cluster_to_bs[c]).
struct PrecoderSet {
    std::vector<ClusterPrecoder> clusters;
};

// Errors carry the offending (BS, cluster) in their message.
PrecoderSet build_precoder_set(const Scenario& scenario, const ChannelModel& model,
                               const ChannelRealization& realization, std::span<const std::size_t> cluster_to_bs,
                               PrebeamformerCategory category);

// Same, reusing a per-drop candidate table.
PrecoderSet precoder_set_from(const CandidateTable& table, std::span<const std::size_t> cluster_to_bs);

} // namespace mimosel
