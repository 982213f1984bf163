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

#include "mimosel/checks.hpp"

#include "mimosel/channel.hpp"
#include "mimosel/errors.hpp"
#include "mimosel/harness.hpp"
#include "mimosel/linalg.hpp"
#include "mimosel/metrics.hpp"
#include "mimosel/plan_io.hpp"
#include "mimosel/precoding.hpp"
#include "mimosel/quadrature.hpp"
#include "mimosel/selection.hpp"
#include "mimosel/simd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace mimosel {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

class Reporter {
public:
    explicit Reporter(std::ostream& out) : out_(out) {}

    void expect(bool ok, const std::string& what, const std::string& detail = {})
    {
        out_ << (ok ? "[PASS] " : "[FAIL] ") << what;
        if (!detail.empty())
            out_ << "  (" << detail << ")";
        out_ << '\n';
        all_ = all_ && ok;
    }
    bool all() const { return all_; }

private:
    std::ostream& out_;
    bool all_ = true;
};

std::string sci(double v)
{
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

bool check_covariance(std::ostream& out)
{
    Reporter r(out);
    Rng rng(11);
    std::uniform_real_distribution<double> theta_dist(-60.0 * kDeg, 60.0 * kDeg);
    std::uniform_real_distribution<double> spread_dist(0.5 * kDeg, 45.0 * kDeg);
    const simd::KernelTable* scalar = simd::kernels_for(simd::Backend::Scalar);

    double herm = 0.0, toep = 0.0, diag = 0.0, min_eig = 0.0, doubling = 0.0, backend = 0.0;
    for (int trial = 0; trial < 20; ++trial)
    {
        const double theta = theta_dist(rng), spread = spread_dist(rng);
        const std::size_t n = 8 + 8 * (trial % 8);
        const Covariance cov = build_covariance(theta, spread, n, 0.5);
        const arma::cx_mat& R = cov.matrix;
        herm = std::max(herm, arma::abs(R - R.t()).max());
        for (std::size_t p = 1; p < n; ++p)
            for (std::size_t q = 1; q < n; ++q)
                toep = std::max(toep, std::abs(R(p, q) - R(p - 1, q - 1)));
        diag = std::max(diag, arma::abs(R.diag() - 1.0).max());
        min_eig = std::min(min_eig, arma::eig_sym(R).min());

        const Covariance fine = build_covariance(theta, spread, n, 0.5, 2 * cov.quadrature_nodes);
        doubling = std::max(doubling, arma::abs(fine.matrix - R).max());

        // Same lags through the scalar reference kernel.
        const auto& rule = gauss_legendre(cov.quadrature_nodes);
        std::vector<double> omega(rule.nodes.size()), w(rule.nodes.size());
        for (std::size_t j = 0; j < omega.size(); ++j)
        {
            omega[j] = -std::numbers::pi * std::sin(theta + spread * rule.nodes[j]);
            w[j] = 0.5 * rule.weights[j];
        }
        std::vector<simd::cplx> lags(n);
        scalar->ring_lags(omega.data(), w.data(), omega.size(), n, lags.data());
        for (std::size_t d = 1; d < n; ++d)
            backend = std::max(backend, std::abs(lags[d] - R(d, 0)));
    }
    r.expect(herm <= 1e-12, "Hermitian within 1e-12", sci(herm));
    r.expect(toep <= 1e-12, "Toeplitz within 1e-12", sci(toep));
    r.expect(diag <= 1e-10, "unit diagonal within 1e-10", sci(diag));
    r.expect(min_eig >= -1e-10, "PSD (smallest eigenvalue >= -1e-10)", sci(min_eig));
    r.expect(doubling <= 1e-10, "node doubling changes entries by <= 1e-10", sci(doubling));
    r.expect(backend <= 1e-12,
             std::string("scalar kernel agrees with ") + std::string(simd::to_string(simd::kernels().backend)),
             sci(backend));
    return r.all();
}

// Random single-BS instance: `clusters` clusters on boresight +/- 50 degrees.
std::vector<EigenBasis> random_bases(Rng& rng, std::size_t clusters, std::size_t n)
{
    std::uniform_real_distribution<double> theta_dist(-50.0 * kDeg, 50.0 * kDeg);
    std::uniform_real_distribution<double> spread_dist(4.0 * kDeg, 12.0 * kDeg);
    std::vector<EigenBasis> bases;
    for (std::size_t c = 0; c < clusters; ++c)
        bases.push_back(eigen_truncate(build_covariance(theta_dist(rng), spread_dist(rng), n, 0.5).matrix, 1e-3));
    return bases;
}

std::vector<const EigenBasis*> others_of(const std::vector<EigenBasis>& bases, std::size_t c)
{
    std::vector<const EigenBasis*> others;
    for (std::size_t o = 0; o < bases.size(); ++o)
        if (o != c)
            others.push_back(&bases[o]);
    return others;
}

bool check_precoding(std::ostream& out)
{
    Reporter r(out);
    Rng rng(23);
    double leak = 0.0, ortho = 0.0, zf_off = 0.0, zf_pow = 0.0, abd_eq = 0.0;
    // Instances where some cluster has no null space left are redrawn.
    int feasible = 0, redrawn = 0;
    while (feasible < 20 && redrawn < 1000)
    {
        const auto bases = random_bases(rng, 3, 64);
        try
        {
            for (std::size_t c = 0; c < 3; ++c)
                (void)bd_prebeamformer(bases[c], others_of(bases, c), 3);
        }
        catch (const Error& e)
        {
            if (e.kind() != ErrorKind::InfeasibleNullSpace)
                throw;
            ++redrawn;
            continue;
        }
        ++feasible;
        for (std::size_t c = 0; c < 3; ++c)
        {
            const auto others = others_of(bases, c);
            const auto b = bd_prebeamformer(bases[c], others, 3);
            for (const auto* o : others)
                leak = std::max(leak, arma::abs(o->vectors.t() * b.matrix).max());
            ortho = std::max(ortho, orthonormality_error(b.matrix));
            const auto a = abd_prebeamformer(bases[c], others, 3, 1.0);
            abd_eq = std::max(abd_eq, subspace_distance(a.matrix, b.matrix));

            const arma::cx_mat h = sample_user_channels(bases[c], 3, rng);
            const arma::cx_mat hbar = h.t() * b.matrix;
            const arma::cx_mat v = zf_inner_precoder(hbar, 10.0);
            arma::cx_mat g = hbar * v;
            const double peak = arma::abs(g.diag()).max();
            g.diag().zeros();
            zf_off = std::max(zf_off, arma::abs(g).max() / peak);
            for (arma::uword k = 0; k < v.n_cols; ++k)
                zf_pow = std::max(zf_pow, std::abs(std::norm(arma::norm(v.col(k))) - 10.0) / 10.0);
        }
    }
    r.expect(leak <= 1e-8, "BD nulls other clusters' eigenspaces (<= 1e-8)", sci(leak));
    r.expect(ortho <= 1e-10, "prebeamformer columns orthonormal (<= 1e-10)", sci(ortho));
    r.expect(abd_eq <= 1e-8, "ABD with full energy fraction equals BD (<= 1e-8)", sci(abd_eq));
    r.expect(zf_off <= 1e-8, "ZF effective channel diagonal (<= 1e-8 relative)", sci(zf_off));
    r.expect(zf_pow <= 1e-10, "ZF column power equals P_t (<= 1e-10 relative)", sci(zf_pow));
    r.expect(feasible == 20, "20 feasible instances checked", std::to_string(redrawn) + " infeasible draws redrawn");
    return r.all();
}

bool check_theorem1(std::ostream& out)
{
    Reporter r(out);
    NetworkConfig cfg;
    cfg.num_bs = 3;
    cfg.num_antennas = 64;
    cfg.exact_rank = true;
    cfg.per_user_power = db_to_linear(20.0);

    int passed = 0, attempts = 0, skipped = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; attempts - skipped < 100 && attempts < 1000; ++seed)
    {
        cfg.num_clusters = 2 + seed % 5;
        ++attempts;
        try
        {
            DropState s = prepare_drop(cfg, PrebeamformerCategory::First, mix_seed(seed));
            const auto ex = exhaustive_sinr_select(s.scenario, s.realization, s.candidates, cfg.noise_power);
            const auto gr = greedy_slnr_select(s.scenario, s.realization, s.candidates, cfg.noise_power);
            const double g = assignment_sum_sinr(s.scenario, s.realization, s.candidates, gr.assignment, cfg.noise_power);
            const double rel = std::abs(g - ex.objective) / ex.objective;
            worst = std::max(worst, rel);
            if (rel <= 1e-9)
                ++passed;
        }
        catch (const Error& e)
        {
            if (e.kind() != ErrorKind::NoFeasibleBS)
                throw;
            ++skipped;
        }
    }
    const int checked = attempts - skipped;
    r.expect(checked == 100 && passed == 100, "greedy SLNR attains the exhaustive sum-SINR on 100 instances",
             std::to_string(passed) + "/" + std::to_string(checked) + ", worst relative gap " + sci(worst) + ", " +
                 std::to_string(skipped) + " infeasible draws skipped");
    return r.all();
}

bool check_laslnr_bound(std::ostream& out)
{
    Reporter r(out);
    NetworkConfig cfg;
    cfg.num_clusters = 6;
    cfg.per_user_power = db_to_linear(10.0);
    int triples = 0, violations = 0;
    for (std::uint64_t seed = 100; triples < 20 && seed < 200; ++seed)
    {
        for (auto category : {PrebeamformerCategory::First, PrebeamformerCategory::Second})
        {
            Rng geo = make_stream(seed, Stream::Geometry);
            const Scenario sc = place_network(cfg, geo);
            const ChannelModel model = build_channel_model(sc);
            const PrebeamformerTable table = build_prebeamformers(sc, model, category);
            std::size_t c = seed % cfg.num_clusters, l = cfg.num_bs;
            for (std::size_t cand = 0; cand < cfg.num_bs; ++cand)
                if (table.feasible(c, cand))
                {
                    l = cand;
                    break;
                }
            if (l == cfg.num_bs || triples >= 20)
                continue;

            const double bound = compute_laslnr(sc, model, c, l, table.at(c, l));
            double sum = 0.0, sum2 = 0.0;
            const int draws = 2000;
            for (int t = 0; t < draws; ++t)
            {
                Rng ch = make_stream(seed, Stream::ExtraDraws, t + 1000 * int(category));
                const auto real = sample_channels(model, cfg.users_per_cluster, ch);
                const auto pre = build_cluster_precoder(table.at(c, l), real, c, l, cfg.per_user_power);
                for (const auto& m : compute_slnr(sc, real, c, pre, cfg.noise_power))
                {
                    sum += m.slnr;
                    sum2 += m.slnr * m.slnr;
                }
            }
            const double n = double(draws) * double(cfg.users_per_cluster);
            const double mean = sum / n;
            const double se = std::sqrt(std::max(sum2 / n - mean * mean, 0.0) / n);
            const bool ok = mean >= bound - 3.0 * se;
            violations += ok ? 0 : 1;
            ++triples;
            std::ostringstream d;
            d << "cluster " << c << " at BS " << l << ", " << to_string(category) << ": mean SLNR " << mean
              << " >= LASLNR " << bound << " - 3*" << se;
            r.expect(ok, "empirical mean SLNR bounds LASLNR", d.str());
        }
    }
    r.expect(triples == 20 && violations == 0, "20 triples, zero violations");
    return r.all();
}

bool check_ordering(std::ostream& out)
{
    Reporter r(out);
    ExperimentPlan plan = plan_from_json(preset("desk-fig2-first"));
    plan.base.rng_seed = 77;
    plan.sweep_values = {20.0};
    plan.num_drops = 100;
    plan.algorithms = all_algorithms();
    const auto result = run_experiment(plan);

    auto row = [&](Algorithm a) -> const ResultRow& {
        for (const auto& rr : result.rows)
            if (rr.algorithm == a)
                return rr;
        throw Error(ErrorKind::EmptyInput, "missing row for " + std::string(to_string(a)));
    };
    const auto& ex = row(Algorithm::Exhaustive);
    const auto& sl = row(Algorithm::GreedySlnr);
    const auto& la = row(Algorithm::GreedyLaslnr);
    for (Algorithm base : {Algorithm::Random, Algorithm::LargestEnergy})
    {
        const auto& b = row(base);
        for (const ResultRow* p : {&sl, &la})
        {
            const double pooled = std::hypot(p->stderr_sum_rate, b.stderr_sum_rate);
            std::ostringstream d;
            d << p->mean_sum_rate << " vs " << b.mean_sum_rate << ", pooled SE " << pooled;
            r.expect(p->mean_sum_rate - b.mean_sum_rate > 2.0 * pooled,
                     std::string(to_string(p->algorithm)) + " beats " + std::string(to_string(base)), d.str());
        }
    }
    const double gap = std::abs(la.mean_sum_rate - sl.mean_sum_rate) / sl.mean_sum_rate;
    r.expect(gap <= 0.05, "greedy-laslnr within 5% of greedy-slnr", sci(gap));
    const double th = std::abs(ex.mean_sum_rate - sl.mean_sum_rate) / ex.mean_sum_rate;
    r.expect(th <= 1e-9, "greedy-slnr matches exhaustive under BD", sci(th));
    return r.all();
}

} // namespace

const std::vector<std::string>& check_suites()
{
    static const std::vector<std::string> suites{"covariance", "precoding", "theorem1", "laslnr-bound", "ordering"};
    return suites;
}

bool run_check(const std::string& suite, std::ostream& out)
{
    if (suite == "covariance")
        return check_covariance(out);
    if (suite == "precoding")
        return check_precoding(out);
    if (suite == "theorem1")
        return check_theorem1(out);
    if (suite == "laslnr-bound")
        return check_laslnr_bound(out);
    if (suite == "ordering")
        return check_ordering(out);
    throw Error(ErrorKind::UnknownSuite, "unknown check suite '" + suite + "'");
}

} // namespace mimosel
