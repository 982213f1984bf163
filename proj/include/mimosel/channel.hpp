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

#include "mimosel/rng.hpp"
#include "mimosel/scenario.hpp"

#include <armadillo>

#include <cstddef>
#include <optional>
#include <vector>

namespace mimosel {

// One-ring spatial covariance of a ULA (Hermitian, Toeplitz, unit diagonal).
struct Covariance {
    arma::cx_mat matrix;
    double theta = 0.0;
    double spread = 0.0;
    double spacing_ratio = 0.5;
    std::size_t quadrature_nodes = 0; // 0 for the point-source closed form
};

inline constexpr std::size_t kDefaultQuadratureNodes = 200;

// Node count used by build_covariance when none is given: the default 200,
// raised when the integrand oscillates faster than 200 nodes can resolve.
std::size_t quadrature_nodes_for(double spread, std::size_t num_antennas, double spacing_ratio);

// [R]_{p,q} = 1/(2*spread) * integral over [theta - spread, theta + spread] of
// exp(-2i*pi*(p-q)*sin(a)*spacing_ratio) da, by Gauss-Legendre quadrature.
// nodes == 0 selects quadrature_nodes_for(). Throws InvalidSpread unless
// 0 <= spread < pi/2.
Covariance build_covariance(double theta, double spread, std::size_t num_antennas,
                            double spacing_ratio, std::size_t nodes = 0);

// Truncated eigenstructure R ~ E * diag(values) * E^H, values descending.
struct EigenBasis {
    arma::cx_mat vectors; // N x r, orthonormal columns
    arma::vec values;     // r, descending, positive

    std::size_t rank() const { return values.n_elem; }
    std::size_t dimension() const { return vectors.n_rows; }
    double largest() const { return values.is_empty() ? 0.0 : values(0); }

    // E * diag(values) * E^H
    arma::cx_mat covariance() const;
};

inline constexpr double kExactRankFloor = 1e-12;

// Smallest r whose leading eigenvalues hold (1 - rank_epsilon) of the trace.
// rank_epsilon == 0 keeps every eigenvalue above kExactRankFloor instead.
EigenBasis eigen_truncate(const arma::cx_mat& covariance, double rank_epsilon);

double effective_rank_epsilon(const NetworkConfig& config);

// Covariance and eigenbasis of every visible (cluster, BS) pair of a scenario.
struct LinkStatistics {
    Covariance covariance;
    EigenBasis basis;
};

class ChannelModel {
public:
    ChannelModel() = default;
    ChannelModel(std::size_t num_clusters, std::size_t num_bs);

    std::size_t num_clusters() const { return num_clusters_; }
    std::size_t num_bs() const { return num_bs_; }

    bool has(std::size_t c, std::size_t l) const { return links_[index(c, l)].has_value(); }
    const LinkStatistics& link(std::size_t c, std::size_t l) const;
    void set(std::size_t c, std::size_t l, LinkStatistics stats) { links_[index(c, l)] = std::move(stats); }

private:
    std::size_t index(std::size_t c, std::size_t l) const { return c * num_bs_ + l; }

    std::size_t num_clusters_ = 0;
    std::size_t num_bs_ = 0;
    std::vector<std::optional<LinkStatistics>> links_;
};

ChannelModel build_channel_model(const Scenario& scenario);

// Per-drop channel draws. For every visible (c, l) the N x K matrix
// `conj_channels(c, l)` holds conj(h_{c,k}^l) in column k, so the downlink
// gain of user k towards transmit vector x is sum_i conj_channels(i,k) x(i)
// = h^H x, and H_c^l = conj_channels(c, l).st().
class ChannelRealization {
public:
    ChannelRealization() = default;
    ChannelRealization(std::size_t num_clusters, std::size_t num_bs, std::size_t users_per_cluster);

    std::size_t num_clusters() const { return num_clusters_; }
    std::size_t num_bs() const { return num_bs_; }
    std::size_t users_per_cluster() const { return users_; }

    bool has(std::size_t c, std::size_t l) const { return !conj_[index(c, l)].is_empty(); }
    const arma::cx_mat& conj_channels(std::size_t c, std::size_t l) const { return conj_[index(c, l)]; }
    const arma::cx_mat& whitened(std::size_t c, std::size_t l) const { return white_[index(c, l)]; }

    // K x N downlink channel matrix whose rows are h^H.
    arma::cx_mat channel_matrix(std::size_t c, std::size_t l) const { return conj_[index(c, l)].st(); }

    void set(std::size_t c, std::size_t l, arma::cx_mat conj_channels, arma::cx_mat whitened);

private:
    std::size_t index(std::size_t c, std::size_t l) const { return c * num_bs_ + l; }

    std::size_t num_clusters_ = 0;
    std::size_t num_bs_ = 0;
    std::size_t users_ = 0;
    std::vector<arma::cx_mat> conj_;
    std::vector<arma::cx_mat> white_;
};

// h = E * Lambda^{1/2} * w with w ~ CN(0, I), independently per user.
arma::cx_mat sample_user_channels(const EigenBasis& basis, std::size_t users, Rng& rng,
                                  arma::cx_mat* whitened = nullptr);

ChannelRealization sample_channels(const ChannelModel& model, std::size_t users_per_cluster, Rng& rng);

} // namespace mimosel
