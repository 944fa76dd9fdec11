#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gss/designs.hpp"
#include "gss/estimators.hpp"
#include "gss/graph.hpp"
#include "gss/parallel.hpp"
#include "gss/populations.hpp"
#include "gss/rng.hpp"

namespace gss {

/// True iff some pair of distinct sampled units is contiguous. Repeated
/// visits never make a unit contiguous with itself.
inline bool contains_contiguous_pair(const std::vector<int>& units, const Graph& contiguity) {
    std::vector<int> u = units;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = a + 1; b < u.size(); ++b)
            if (contiguity.has_edge(u[a], u[b])) return true;
    return false;
}

struct McResult {
    double value = 0.0;
    double se = 0.0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
};

/// Exact contiguous-selection probability over the enumerated sample space.
inline double xi_exact(const Design& design, const Graph& contiguity) {
    double p = 0.0;
    for (const auto& [sample, prob] : sample_space(design))
        if (contains_contiguous_pair(sample.units, contiguity)) p += prob;
    return p;
}

/// Monte Carlo contiguous-selection probability with binomial standard error.
inline McResult xi_mc(const PreparedDesign& design, const Graph& contiguity, std::size_t reps,
                      std::uint64_t seed, int threads = 1) {
    std::vector<char> hit(reps, 0);
    parallel_for(reps, threads, [&](std::size_t k) {
        Rng rng = Rng::stream(seed, {fnv1a("xi"), k});
        hit[k] = contains_contiguous_pair(design.draw(rng).units, contiguity) ? 1 : 0;
    });
    double cnt = 0.0;
    for (char c : hit) cnt += c;
    const double p = cnt / static_cast<double>(reps);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps)), reps, seed};
}

/// Voronoi-based sample spatial balance of Stevens and Olsen: v_k collects
/// the inclusion probabilities of the units nearest to sampled unit k
/// (equidistant units split their mass equally); returns mean((v_k - 1)^2).
inline double spatial_balance(const std::vector<int>& sample_units, const std::vector<double>& pi,
                              const std::vector<std::array<double, 2>>& coords) {
    std::vector<int> s = sample_units;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw std::invalid_argument("spatial_balance: empty sample");
    const int N = static_cast<int>(coords.size());
    std::vector<double> v(s.size(), 0.0);
    std::vector<std::size_t> nearest;
    for (int i = 0; i < N; ++i) {
        double best = std::numeric_limits<double>::infinity();
        nearest.clear();
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double dx = coords[static_cast<std::size_t>(i)][0] - coords[static_cast<std::size_t>(s[k] - 1)][0];
            const double dy = coords[static_cast<std::size_t>(i)][1] - coords[static_cast<std::size_t>(s[k] - 1)][1];
            const double d2 = dx * dx + dy * dy;
            if (d2 < best - 1e-12) {
                best = d2;
                nearest.clear();
                nearest.push_back(k);
            } else if (d2 <= best + 1e-12) {
                nearest.push_back(k);
            }
        }
        const double share = pi[static_cast<std::size_t>(i)] / static_cast<double>(nearest.size());
        for (std::size_t k : nearest) v[k] += share;
    }
    double b = 0.0;
    for (double vk : v) b += (vk - 1.0) * (vk - 1.0);
    return b / static_cast<double>(s.size());
}

namespace detail {

struct Moments {
    std::size_t n = 0;
    double mean = 0.0, m2 = 0.0, m4c = 0.0;  // central sums after finalize

    static Moments of(const std::vector<double>& xs) {
        Moments mo;
        mo.n = xs.size();
        for (double x : xs) mo.mean += x;
        mo.mean /= static_cast<double>(mo.n);
        for (double x : xs) {
            const double d = x - mo.mean;
            mo.m2 += d * d;
            mo.m4c += d * d * d * d;
        }
        mo.m2 /= static_cast<double>(mo.n);
        mo.m4c /= static_cast<double>(mo.n);
        return mo;
    }
    double variance() const { return m2 * static_cast<double>(n) / (static_cast<double>(n) - 1.0); }
    /// Asymptotic standard error of the sample variance.
    double variance_se() const {
        return std::sqrt(std::max(0.0, m4c - m2 * m2) / static_cast<double>(n));
    }
};

/// Estimator attached to a design: HT over distinct units for fixed-sample
/// designs, the sequence estimator for walk designs.
inline double design_estimate(const PreparedDesign& d, const Sample& s, const SpatialPopulation& pop,
                              const std::vector<double>& pi) {
    if (is_sequence_design(d.design()))
        return yhat_w(s.units, pop.y, pi, sample_size(d.design()));
    return horvitz_thompson(s.units, pop.y, pi);
}

}  // namespace detail

struct ReResult {
    double re = 0.0;
    double se = 0.0;
    double var_design = 0.0;
    double var_srswor = 0.0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo variance of the design's estimator divided by the Monte Carlo
/// variance of SRSWoR with Horvitz-Thompson at the matched sample size
/// (n = m for sequence designs). Streams are derived from the same seed with
/// distinct tags; the standard error combines both sides by the delta method.
inline ReResult relative_efficiency(const PreparedDesign& design, const SpatialPopulation& pop,
                                    std::size_t reps, std::uint64_t seed, int threads = 1) {
    const int N = pop.n_units();
    const int n = sample_size(design.design());
    const std::vector<double> pi = design_pi(design.design());
    std::vector<double> est(reps), base(reps);
    const std::vector<double> pi_srs(static_cast<std::size_t>(N), static_cast<double>(n) / N);
    parallel_for(reps, threads, [&](std::size_t k) {
        Rng rng = Rng::stream(seed, {fnv1a("re_design"), k});
        est[k] = detail::design_estimate(design, design.draw(rng), pop, pi);
        Rng rng2 = Rng::stream(seed, {fnv1a("re_srswor"), k});
        base[k] = horvitz_thompson(srswor(N, n, rng2).units, pop.y, pi_srs);
    });
    const auto md = detail::Moments::of(est);
    const auto mb = detail::Moments::of(base);
    ReResult r;
    r.var_design = md.variance();
    r.var_srswor = mb.variance();
    r.re = r.var_design / r.var_srswor;
    const double rel_d = md.variance_se() / md.variance();
    const double rel_b = mb.variance_se() / mb.variance();
    r.se = r.re * std::sqrt(rel_d * rel_d + rel_b * rel_b);
    r.reps = reps;
    r.seed = seed;
    return r;
}

/// Monte Carlo mean of the sample spatial balance (sequence samples are
/// reduced to their distinct units first).
inline McResult expected_ssb(const PreparedDesign& design, const SpatialPopulation& pop,
                             std::size_t reps, std::uint64_t seed, int threads = 1) {
    std::vector<double> vals(reps);
    parallel_for(reps, threads, [&](std::size_t k) {
        Rng rng = Rng::stream(seed, {fnv1a("essb"), k});
        vals[k] = spatial_balance(design.draw(rng).units, pop.pi, pop.coords);
    });
    const auto mo = detail::Moments::of(vals);
    return {mo.mean, std::sqrt(mo.variance() / static_cast<double>(reps)), reps, seed};
}

struct DesignMeasureReport {
    std::optional<double> xi;
    std::optional<double> re;
    std::optional<double> essb;
    std::optional<double> pr_n1;
    std::string mode;
};

struct TauXi {
    int n = 0;
    Graph contiguity;
};
struct TauRe {
    SpatialPopulation pop;
    int m = 0;
    std::size_t reps = 2000;
};
using TauSpec = std::variant<TauXi, TauRe>;

struct SearchOutcome {
    Graph best;
    double best_value = 0.0;
    std::size_t best_index = 0;
    std::size_t evaluated = 0;
    DesignMeasureReport report;
};

/// Evaluate the design measure on every candidate 2-regular graph and return
/// the minimizer (first seen on ties). Deterministic given candidate order
/// and seed.
inline SearchOutcome design_search(const std::vector<Graph>& candidates, const TauSpec& tau,
                                   std::uint64_t seed, int threads = 1) {
    if (candidates.empty()) throw std::invalid_argument("design_search: empty candidate stream");
    std::vector<double> values(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t k) {
        const Graph& g = candidates[k];
        if (const auto* tx = std::get_if<TauXi>(&tau)) {
            values[k] = xi_exact(EpssworDesign{g, tx->n}, tx->contiguity);
        } else {
            const auto& tr = std::get<TauRe>(tau);
            PreparedDesign d(EpssworDesign{g, tr.m});
            values[k] = relative_efficiency(d, tr.pop, tr.reps, mix64(seed ^ k), 1).re;
        }
    });
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] < values[best]) best = k;
    SearchOutcome out;
    out.best = candidates[best];
    out.best_value = values[best];
    out.best_index = best;
    out.evaluated = candidates.size();
    if (std::holds_alternative<TauXi>(tau)) {
        out.report.xi = values[best];
        out.report.mode = "exact";
    } else {
        out.report.re = values[best];
        out.report.mode = "mc(" + std::to_string(std::get<TauRe>(tau).reps) + ")";
    }
    return out;
}

}  // namespace gss
