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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace mimosel {
namespace {

struct Drop {
    Scenario sc;
    ChannelModel model;
    ChannelRealization real;
    PrebeamformerTable pre;
    CandidateTable cand;
};

Drop make_drop(NetworkConfig cfg, std::uint64_t seed, PrebeamformerCategory category)
{
    Drop d;
    Rng rng(seed);
    d.sc = place_network(cfg, rng);
    d.model = build_channel_model(d.sc);
    d.real = sample_channels(d.model, cfg.users_per_cluster, rng);
    d.pre = build_prebeamformers(d.sc, d.model, category);
    d.cand = build_candidates(d.sc, d.pre, d.real);
    return d;
}

std::vector<std::size_t> first_candidates(const Drop& d)
{
    std::vector<std::size_t> a(d.sc.num_clusters(), kUnserved);
    for (std::size_t c = 0; c < a.size(); ++c)
    {
        const auto options = d.cand.candidates(c);
        if (!options.empty())
            a[c] = options.front();
    }
    return a;
}

NetworkConfig small_config(std::size_t clusters, std::size_t bs)
{
    NetworkConfig cfg;
    cfg.num_clusters = clusters;
    cfg.num_bs = bs;
    cfg.ring_radius = 30.0;
    return cfg;
}

TEST(Sinr, MatchesStraightLineOracle)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto d = make_drop(small_config(4, 2), seed, PrebeamformerCategory::Second);
        const auto set = precoder_set_from(d.cand, first_candidates(d));
        const auto got = compute_sinr(d.sc, d.real, set, 1.0);
        const auto ref = oracle::brute_sinr(d.sc, d.real, set, 1.0);
        ASSERT_EQ(got.size(), ref.size());
        for (std::size_t i = 0; i < got.size(); ++i)
        {
            EXPECT_NEAR(got[i].sinr, ref[i], 1e-10 * std::max(1.0, ref[i]));
            EXPECT_GE(got[i].interference, 0.0);
            EXPECT_DOUBLE_EQ(got[i].rate, std::log2(1.0 + got[i].sinr));
        }
    }
}

TEST(Sinr, SingleClusterHasNoInterference)
{
    const auto d = make_drop(small_config(1, 1), 3, PrebeamformerCategory::First);
    const auto set = precoder_set_from(d.cand, std::vector<std::size_t>{0});
    for (const auto& m : compute_sinr(d.sc, d.real, set, 2.0))
    {
        EXPECT_EQ(m.interference, 0.0);
        const auto h = d.real.conj_channels(0, 0).col(m.user);
        EXPECT_NEAR(m.sinr, oracle::gain(h, set.clusters[0].transmit.col(m.user)) / 2.0, 1e-9 * m.sinr);
    }
}

TEST(Sinr, UnservedClusterGetsZeroAndEmitsNothing)
{
    const auto d = make_drop(small_config(4, 2), 2, PrebeamformerCategory::Second);
    auto a = first_candidates(d);
    a[1] = kUnserved;
    const auto set = precoder_set_from(d.cand, a);
    const auto got = compute_sinr(d.sc, d.real, set, 1.0);
    const auto ref = oracle::brute_sinr(d.sc, d.real, set, 1.0);
    for (std::size_t i = 0; i < got.size(); ++i)
    {
        EXPECT_NEAR(got[i].sinr, ref[i], 1e-10 * std::max(1.0, ref[i]));
        if (got[i].cluster == 1)
            EXPECT_EQ(got[i].sinr, 0.0);
    }
}

TEST(Slnr, MatchesStraightLineOracleWithLeakage)
{
    const auto d = make_drop(small_config(6, 3), 7, PrebeamformerCategory::Second);
    double leakage = 0.0;
    for (std::size_t c = 0; c < d.sc.num_clusters(); ++c)
        for (std::size_t l = 0; l < d.sc.num_bs(); ++l)
        {
            if (!d.cand.feasible(c, l))
                continue;
            const auto got = compute_slnr(d.sc, d.real, c, d.cand.at(c, l), 1.0);
            const auto ref = oracle::brute_slnr(d.sc, d.real, c, d.cand.at(c, l), 1.0);
            for (std::size_t k = 0; k < got.size(); ++k)
            {
                EXPECT_NEAR(got[k].slnr, ref[k], 1e-10 * std::max(1.0, ref[k]));
                leakage = std::max(leakage, got[k].leakage);
            }
        }
    EXPECT_GT(leakage, 0.0);
}

TEST(Slnr, EqualsSinrUnderBd)
{
    for (bool exact : {true, false})
        for (std::uint64_t seed = 1; seed <= 10; ++seed)
        {
            auto cfg = small_config(4, 3);
            cfg.exact_rank = exact;
            const auto d = make_drop(cfg, seed, PrebeamformerCategory::First);
            const auto set = precoder_set_from(d.cand, first_candidates(d));
            for (const auto& m : compute_sinr(d.sc, d.real, set, 1.0))
            {
                if (m.bs == kUnserved)
                    continue;
                const auto slnr = compute_slnr(d.sc, d.real, m.cluster, set.clusters[m.cluster], 1.0);
                EXPECT_LE(std::abs(slnr[m.user].slnr - m.sinr), (exact ? 1e-6 : 1e-3) * m.sinr);
            }
        }
}

TEST(Laslnr, SingleUserNoInterferers)
{
    NetworkConfig cfg = small_config(1, 1);
    cfg.users_per_cluster = 1;
    cfg.per_user_power = 50.0;
    cfg.noise_power = 2.0;
    const Scenario sc = make_scenario(cfg, {{0.0, 0.0}});
    const auto model = build_channel_model(sc);
    const auto& basis = model.link(0, 0).basis;
    Prebeamformer b;
    b.matrix = basis.vectors.col(0);
    EXPECT_NEAR(compute_laslnr(sc, model, 0, 0, b), 50.0 * basis.largest() / 2.0, 1e-9 * 25.0 * basis.largest());
}

TEST(Laslnr, NegativeNumeratorIsKept)
{
    const Scenario sc = make_scenario(small_config(1, 1), {{0.0, 0.0}});
    const auto model = build_channel_model(sc);
    const auto& basis = model.link(0, 0).basis;
    Prebeamformer b;
    b.matrix = basis.vectors.tail_cols(3); // weakest directions
    EXPECT_LT(compute_laslnr(sc, model, 0, 0, b), 0.0);
}

TEST(Laslnr, MatchesTraceOracle)
{
    const auto d = make_drop(small_config(5, 3), 11, PrebeamformerCategory::Second);
    const auto& cfg = d.sc.config;
    for (std::size_t c = 0; c < d.sc.num_clusters(); ++c)
        for (std::size_t l = 0; l < d.sc.num_bs(); ++l)
        {
            if (!d.pre.feasible(c, l))
                continue;
            const arma::cx_mat& b = d.pre.at(c, l).matrix;
            auto tr = [&](std::size_t o) {
                return arma::trace(b.t() * d.model.link(o, l).basis.covariance() * b).real();
            };
            double leak = 0.0;
            for (std::size_t o = 0; o < d.sc.num_clusters(); ++o)
                if (o != c && d.sc.visible(o, l))
                    leak += cfg.users_per_cluster * tr(o);
            const double expected = (tr(c) - (cfg.users_per_cluster - 1.0) * d.model.link(c, l).basis.largest()) /
                                    (leak + cfg.noise_power / cfg.per_user_power);
            EXPECT_NEAR(compute_laslnr(d.sc, d.model, c, l, d.pre.at(c, l)), expected,
                        1e-9 * std::max(1.0, std::abs(expected)));
        }
}

TEST(SumRate, Arithmetic)
{
    EXPECT_EQ(sum_rate(std::vector<UserMetric>(3), 1).system, 0.0);
    UserMetric one;
    one.sinr = 1.0;
    EXPECT_DOUBLE_EQ(sum_rate(std::vector<UserMetric>{one}, 1).system, 1.0);
    UserMetric three;
    three.sinr = 3.0;
    const auto r = sum_rate(std::vector<UserMetric>(9, three), 3);
    EXPECT_DOUBLE_EQ(r.system, 18.0);
    EXPECT_DOUBLE_EQ(r.per_cluster, 6.0);
}

} // namespace
} // namespace mimosel
