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

#include "mimosel/errors.hpp"
#include "mimosel/linalg.hpp"
#include "mimosel/metrics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace mimosel {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

EigenBasis ring(double theta_deg, double spread_deg, std::size_t n = 64, double eps = 1e-3)
{
    return eigen_truncate(build_covariance(theta_deg * kDeg, spread_deg * kDeg, n, 0.5).matrix, eps);
}

// Eigenbasis spanning the given identity columns with decreasing weights.
EigenBasis axis_basis(std::size_t n, std::vector<arma::uword> cols)
{
    EigenBasis b;
    b.vectors = arma::zeros<arma::cx_mat>(n, cols.size());
    b.values.set_size(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i)
    {
        b.vectors(cols[i], i) = 1.0;
        b.values(i) = double(cols.size() - i);
    }
    return b;
}

// Brute-force BD: full-SVD orthogonal complement, then top-M eigenvectors of P R P.
arma::cx_mat bd_oracle(const EigenBasis& target, const std::vector<const EigenBasis*>& others, std::size_t m)
{
    const std::size_t n = target.dimension();
    arma::cx_mat stacked(n, 0);
    for (const auto* o : others)
        stacked = arma::join_rows(stacked, o->vectors);
    const arma::cx_mat q = oracle::complement_basis(stacked, n, 1e-9);
    const arma::cx_mat p = q * q.t();
    const arma::cx_mat prp = p * target.covariance() * p;
    arma::vec val;
    arma::cx_mat vec;
    arma::eig_sym(val, vec, arma::cx_mat(0.5 * (prp + prp.t())));
    return vec.tail_cols(m);
}

TEST(Bd, NoInterferersGivesTopEigenvectors)
{
    const auto t = ring(10, 8);
    const auto b = bd_prebeamformer(t, {}, 3);
    EXPECT_EQ(b.category, PrebeamformerCategory::First);
    EXPECT_LT(subspace_distance(b.matrix, t.vectors.head_cols(3)), 1e-8);
}

TEST(Bd, OrthogonalInterfererChangesNothing)
{
    const auto t = axis_basis(12, {0, 1, 2, 3});
    const auto o = axis_basis(12, {6, 7, 8});
    const EigenBasis* others[] = {&o};
    EXPECT_LT(subspace_distance(bd_prebeamformer(t, others, 3).matrix, bd_prebeamformer(t, {}, 3).matrix), 1e-8);
}

TEST(Bd, OverlappingPairMatchesBruteForce)
{
    const auto t = ring(0, 10);
    const auto o = ring(8, 6);
    const std::vector<const EigenBasis*> others{&o};
    const auto b = bd_prebeamformer(t, others, 3);
    EXPECT_LT(arma::abs(o.vectors.t() * b.matrix).max(), 1e-8);
    EXPECT_LT(orthonormality_error(b.matrix), 1e-10);
    EXPECT_LT(subspace_distance(b.matrix, bd_oracle(t, others, 3)), 1e-8);

    const double kept = projected_energy(t, b.matrix);
    const double best = arma::accu(t.values.head(3));
    EXPECT_LT(kept, best);
    RecordProperty("projection_energy_ratio", std::to_string(kept / best));
}

TEST(Bd, RandomInstancesNullEveryInterferer)
{
    Rng rng(31);
    std::uniform_real_distribution<double> theta(-50, 50), spread(2, 12);
    int checked = 0;
    for (int i = 0; i < 40; ++i)
    {
        const auto t = ring(theta(rng), spread(rng));
        const auto o1 = ring(theta(rng), spread(rng));
        const auto o2 = ring(theta(rng), spread(rng));
        const std::vector<const EigenBasis*> others{&o1, &o2};
        try
        {
            const auto b = bd_prebeamformer(t, others, 3);
            for (const auto* o : others)
                EXPECT_LE(arma::abs(o->vectors.t() * b.matrix).max(), 1e-8);
            EXPECT_LE(orthonormality_error(b.matrix), 1e-10);
            EXPECT_LT(subspace_distance(b.matrix, bd_oracle(t, others, 3)), 1e-6);
            // Reordering the interferers does not change the span.
            const std::vector<const EigenBasis*> swapped{&o2, &o1};
            EXPECT_LT(subspace_distance(b.matrix, bd_prebeamformer(t, swapped, 3).matrix), 1e-6);
            ++checked;
        }
        catch (const Error& e)
        {
            EXPECT_EQ(e.kind(), ErrorKind::InfeasibleNullSpace);
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Bd, TooManyInterferenceDimensions)
{
    const auto t = axis_basis(8, {0, 1, 2});
    const auto o = axis_basis(8, {2, 3, 4, 5, 6, 7});
    const EigenBasis* others[] = {&o};
    try
    {
        bd_prebeamformer(t, others, 3);
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::InfeasibleNullSpace);
    }
}

TEST(Bd, TargetInsideInterferenceSpaceIsInfeasible)
{
    const auto t = axis_basis(10, {0, 1, 2});
    const auto o = axis_basis(10, {0, 1, 2, 3});
    const EigenBasis* others[] = {&o};
    EXPECT_THROW(bd_prebeamformer(t, others, 3), Error);
}

TEST(Abd, DominantCount)
{
    EigenBasis b;
    b.values = {5.0, 3.0, 1.5, 0.5};
    b.vectors = arma::eye<arma::cx_mat>(4, 4);
    EXPECT_EQ(dominant_count(b, 0.5), 1u);
    EXPECT_EQ(dominant_count(b, 0.8), 2u);
    EXPECT_EQ(dominant_count(b, 0.95), 3u);
    EXPECT_EQ(dominant_count(b, 1.0), 4u);
}

TEST(Abd, FullFractionEqualsBd)
{
    const auto t = ring(0, 10);
    const auto o = ring(8, 6);
    const EigenBasis* others[] = {&o};
    const auto a = abd_prebeamformer(t, others, 3, 1.0);
    EXPECT_EQ(a.category, PrebeamformerCategory::Second);
    EXPECT_LT(subspace_distance(a.matrix, bd_prebeamformer(t, others, 3).matrix), 1e-8);
    EXPECT_LT(subspace_distance(abd_prebeamformer(t, {}, 3, 0.95).matrix, bd_prebeamformer(t, {}, 3).matrix), 1e-8);
}

TEST(Abd, PartialNullingLeaksButKeepsMoreEnergy)
{
    const auto t = ring(0, 10);
    const auto o = ring(8, 6);
    const EigenBasis* others[] = {&o};
    const auto a = abd_prebeamformer(t, others, 3, 0.95);
    const auto b = bd_prebeamformer(t, others, 3);
    const double leak = arma::abs(o.vectors.t() * a.matrix).max();
    EXPECT_GT(leak, 0.0);
    EXPECT_LT(leak, 1.0);
    EXPECT_GE(projected_energy(t, a.matrix), projected_energy(t, b.matrix) - 1e-9);
    EXPECT_LT(orthonormality_error(a.matrix), 1e-10);
}

TEST(Zf, Identity)
{
    const arma::cx_mat v = zf_inner_precoder(arma::eye<arma::cx_mat>(3, 3), 1.0);
    EXPECT_LT(arma::abs(v - arma::eye<arma::cx_mat>(3, 3)).max(), 1e-15);
}

TEST(Zf, ScaledIdentity)
{
    const arma::cx_mat v = zf_inner_precoder(2.0 * arma::eye<arma::cx_mat>(3, 3), 4.0);
    EXPECT_LT(arma::abs(v - 2.0 * arma::eye<arma::cx_mat>(3, 3)).max(), 1e-14);
}

TEST(Zf, RandomWideChannel)
{
    arma::arma_rng::set_seed(5);
    for (int i = 0; i < 50; ++i)
    {
        const arma::cx_mat h(arma::randn<arma::mat>(3, 6), arma::randn<arma::mat>(3, 6));
        const arma::cx_mat v = zf_inner_precoder(h, 7.5);
        // Oracle: pseudo-inverse directions from a generic solver.
        const arma::cx_mat ref = arma::pinv(h);
        for (arma::uword k = 0; k < 3; ++k)
        {
            EXPECT_NEAR(std::norm(arma::norm(v.col(k))), 7.5, 7.5 * 1e-10);
            const std::complex<double> align = arma::cdot(ref.col(k), v.col(k));
            EXPECT_NEAR(std::abs(align), arma::norm(ref.col(k)) * arma::norm(v.col(k)), 1e-9);
        }
        arma::cx_mat g = h * v;
        const double peak = arma::abs(g.diag()).max();
        g.diag().zeros();
        EXPECT_LE(arma::abs(g).max(), 1e-8 * peak);
    }
}

TEST(Zf, RankDeficient)
{
    arma::cx_mat h(3, 3, arma::fill::ones);
    try
    {
        zf_inner_precoder(h, 1.0);
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
    }
}

TEST(Category, Parse)
{
    EXPECT_EQ(parse_category("first"), PrebeamformerCategory::First);
    EXPECT_EQ(parse_category("bd"), PrebeamformerCategory::First);
    EXPECT_EQ(parse_category("second"), PrebeamformerCategory::Second);
    EXPECT_EQ(parse_category("abd"), PrebeamformerCategory::Second);
    EXPECT_THROW(parse_category("third"), Error);
    EXPECT_EQ(to_string(PrebeamformerCategory::Second), "second");
}

struct Drop {
    Scenario sc;
    ChannelModel model;
    ChannelRealization real;
    PrebeamformerTable pre;
    CandidateTable cand;
};

Drop make_drop(std::uint64_t seed, PrebeamformerCategory category, std::size_t clusters = 6)
{
    NetworkConfig cfg;
    cfg.num_clusters = clusters;
    cfg.ring_radius = 30.0;
    Drop d;
    Rng rng(seed);
    d.sc = place_network(cfg, rng);
    d.model = build_channel_model(d.sc);
    d.real = sample_channels(d.model, cfg.users_per_cluster, rng);
    d.pre = build_prebeamformers(d.sc, d.model, category);
    d.cand = build_candidates(d.sc, d.pre, d.real);
    return d;
}

TEST(Tables, FirstCategoryNullsEveryVisibleCluster)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const auto d = make_drop(seed, PrebeamformerCategory::First);
        for (std::size_t c = 0; c < d.sc.num_clusters(); ++c)
            for (std::size_t l = 0; l < d.sc.num_bs(); ++l)
            {
                if (!d.sc.visible(c, l))
                {
                    EXPECT_FALSE(d.pre.feasible(c, l));
                    continue;
                }
                if (!d.pre.feasible(c, l))
                {
                    EXPECT_EQ(d.pre.failure(c, l), ErrorKind::InfeasibleNullSpace);
                    continue;
                }
                const auto& b = d.pre.at(c, l).matrix;
                EXPECT_EQ(b.n_cols, d.sc.config.users_per_cluster);
                for (std::size_t o = 0; o < d.sc.num_clusters(); ++o)
                    if (o != c && d.sc.visible(o, l))
                        EXPECT_LE(arma::abs(d.model.link(o, l).basis.vectors.t() * b).max(), 1e-8);
            }
    }
}

TEST(Tables, EndToEndNullWithinTruncationTolerance)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const auto d = make_drop(seed, PrebeamformerCategory::First);
        const double tol = 1e-6 * std::sqrt(d.sc.config.per_user_power);
        for (std::size_t c = 0; c < d.sc.num_clusters(); ++c)
            for (std::size_t l = 0; l < d.sc.num_bs(); ++l)
            {
                if (!d.cand.feasible(c, l))
                    continue;
                const auto& p = d.cand.at(c, l).transmit;
                for (std::size_t victim = 0; victim < d.sc.num_clusters(); ++victim)
                {
                    if (victim == c || !d.sc.visible(victim, l))
                        continue;
                    const arma::cx_mat& h = d.real.conj_channels(victim, l);
                    EXPECT_LE(arma::abs(h.st() * p).max(), tol);
                }
            }
    }
}

TEST(Tables, MemoizedSetMatchesFreshBuild)
{
    const auto d = make_drop(4, PrebeamformerCategory::Second);
    std::vector<std::size_t> assignment(d.sc.num_clusters());
    for (std::size_t c = 0; c < assignment.size(); ++c)
    {
        const auto options = d.cand.candidates(c);
        ASSERT_FALSE(options.empty());
        assignment[c] = options.back();
    }
    const auto fresh = build_precoder_set(d.sc, d.model, d.real, assignment, PrebeamformerCategory::Second);
    const auto memo = precoder_set_from(d.cand, assignment);
    for (std::size_t c = 0; c < assignment.size(); ++c)
    {
        EXPECT_EQ(fresh.clusters[c].bs, assignment[c]);
        EXPECT_LT(arma::abs(fresh.clusters[c].transmit - memo.clusters[c].transmit).max(), 1e-12);
    }
}

TEST(Tables, OutOfSectorAssignmentIsRejected)
{
    const auto d = make_drop(2, PrebeamformerCategory::First);
    for (std::size_t c = 0; c < d.sc.num_clusters(); ++c)
        for (std::size_t l = 0; l < d.sc.num_bs(); ++l)
            if (!d.sc.visible(c, l))
            {
                std::vector<std::size_t> assignment(d.sc.num_clusters(), l);
                try
                {
                    build_precoder_set(d.sc, d.model, d.real, assignment, PrebeamformerCategory::First);
                    FAIL();
                }
                catch (const Error& e)
                {
                    EXPECT_NE(std::string(e.what()).find("cluster"), std::string::npos);
                }
                return;
            }
}

TEST(Tables, UnservedClusterHasNoPrecoder)
{
    const auto d = make_drop(3, PrebeamformerCategory::First);
    std::vector<std::size_t> assignment(d.sc.num_clusters(), kUnserved);
    const auto set = precoder_set_from(d.cand, assignment);
    for (const auto& p : set.clusters)
    {
        EXPECT_EQ(p.bs, kUnserved);
        EXPECT_TRUE(p.transmit.is_empty());
    }
}

} // namespace
} // namespace mimosel
