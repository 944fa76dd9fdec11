#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gss/graph.hpp"
#include "gss/rng.hpp"

namespace gss {

/// Parameters of the lagged Metropolis-Hastings walk: jump weight r,
/// backtrack weight w, preference vector u (positive, sums to 1).
struct WalkConfig {
    double r = 0.0;
    double w = 0.0;
    std::vector<double> u;

    static WalkConfig uniform(int n_nodes, double r = 0.0, double w = 0.0) {
        WalkConfig cfg;
        cfg.r = r;
        cfg.w = w;
        cfg.u.assign(static_cast<std::size_t>(n_nodes), 1.0 / n_nodes);
        return cfg;
    }

    void validate(int n_nodes) const {
        if (!(r >= 0.0)) throw std::invalid_argument("WalkConfig: r must be >= 0");
        if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("WalkConfig: w must be in [0,1]");
        if (static_cast<int>(u.size()) != n_nodes)
            throw std::invalid_argument("WalkConfig: u length must equal N");
        double sum = 0.0;
        for (double v : u) {
            if (!(v > 0.0)) throw std::invalid_argument("WalkConfig: u must be strictly positive");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("WalkConfig: u must sum to 1");
    }

    std::uint64_t hash() const {
        auto bits = [](double v) {
            std::uint64_t b;
            static_assert(sizeof(b) == sizeof(v));
            __builtin_memcpy(&b, &v, sizeof(b));
            return b;
        };
        std::uint64_t h = mix64(bits(r)) ^ mix64(bits(w) + 0x9E37ULL);
        for (double v : u) h = mix64(h ^ bits(v));
        return h;
    }
};

/// Ordered pair (X_{t-1}, X_t); prev == cur occurs after a self-jump or a
/// rejected proposal.
struct PairState {
    int prev = 0;
    int cur = 0;
    friend bool operator==(const PairState& a, const PairState& b) {
        return a.prev == b.prev && a.cur == b.cur;
    }
};

namespace detail {

/// Kernel without argument validation. Returns Pr(X_{t+1}=next | cur, prev):
/// jump mass r*u_next/(d+r) for every next; backtrack/forward proposal mass
/// with Metropolis acceptance min(u_next/u_cur, 1); next == cur additionally
/// receives the total rejected proposal mass.
inline double kernel(const Graph& g, const WalkConfig& cfg, int prev, int cur, int next) {
    const double d = g.degree(cur);
    const double a_ih = g.has_edge(prev, cur) && prev != cur ? 1.0 : 0.0;
    const double denom = d + cfg.r;
    double p = cfg.r * cfg.u[next - 1] / denom;
    const bool next_adj = g.has_edge(cur, next);
    if (next == prev && next_adj) {
        p += cfg.w * 1.0 / denom * std::min(cfg.u[next - 1] / cfg.u[cur - 1], 1.0);
    }
    if (next != prev && next_adj) {
        p += (d - cfg.w * a_ih) / denom / (d - a_ih) * std::min(cfg.u[next - 1] / cfg.u[cur - 1], 1.0);
    }
    if (next == cur) {
        // rejected proposals stay at cur
        if (a_ih > 0.0 && cfg.w > 0.0)
            p += cfg.w / denom * (1.0 - std::min(cfg.u[prev - 1] / cfg.u[cur - 1], 1.0));
        const double fwd = (d - cfg.w * a_ih) / denom / (d - a_ih);
        for (int k : g.neighbors(cur))
            if (k != prev) p += fwd * (1.0 - std::min(cfg.u[k - 1] / cfg.u[cur - 1], 1.0));
    }
    return p;
}

}  // namespace detail

/// Pr(X_{t+1}=next | X_t=cur, X_{t-1}=prev). Rows sum to 1 over next.
inline double transition_probability(const Graph& g, const WalkConfig& cfg, int prev, int cur,
                                     int next) {
    cfg.validate(g.n_nodes());
    if (prev < 1 || prev > g.n_nodes() || cur < 1 || cur > g.n_nodes() || next < 1 ||
        next > g.n_nodes())
        throw std::invalid_argument("transition_probability: node id out of range");
    if (g.degree(cur) < 2)
        throw std::invalid_argument("transition_probability: walker requires degree >= 2");
    return detail::kernel(g, cfg, prev, cur, next);
}

/// One sampled step, distributed exactly as transition_probability: with
/// probability r/(d+r) jump to j ~ u (landing on cur allowed); otherwise
/// propose the backtrack with probability w*a/d, else a uniform forward
/// neighbour, and accept with min(u_j/u_cur, 1), staying at cur on rejection.
inline int step(const Graph& g, const WalkConfig& cfg, PairState state, Rng& rng) {
    const int cur = state.cur;
    const double d = g.degree(cur);
    if (d < 2) throw std::invalid_argument("step: walker requires degree >= 2");
    if (cfg.r > 0.0 && rng.uniform01() < cfg.r / (d + cfg.r)) {
        double x = rng.uniform01();
        double acc = 0.0;
        for (int j = 1; j <= g.n_nodes(); ++j) {
            acc += cfg.u[j - 1];
            if (x < acc) return j;
        }
        return g.n_nodes();
    }
    const bool prev_adj = g.has_edge(state.prev, cur) && state.prev != cur;
    int proposal = 0;
    if (prev_adj && cfg.w > 0.0 && rng.uniform01() < cfg.w / d) {
        proposal = state.prev;
    } else {
        const auto& nb = g.neighbors(cur);
        const int options = static_cast<int>(nb.size()) - (prev_adj ? 1 : 0);
        int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(options)));
        for (int cand : nb) {
            if (prev_adj && cand == state.prev) continue;
            if (k-- == 0) {
                proposal = cand;
                break;
            }
        }
    }
    const double accept = std::min(cfg.u[proposal - 1] / cfg.u[cur - 1], 1.0);
    if (accept >= 1.0 || rng.uniform01() < accept) return proposal;
    return cur;
}

/// Realized walk segment: states[0] = X_t, states[1..m] = the m-window,
/// states[m+1] = X_{t+m+1}. The outer states exist for tie detection only.
struct WalkTrace {
    std::vector<int> states;
    int m = 0;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;

    int window(int pos) const { return states[static_cast<std::size_t>(pos)]; }  // pos in 1..m
};

/// Maximal constant run of the walk at one node, bounded by differing states.
struct Tie {
    int node = 0;
    int start = 0;  // window position a
    int end = 0;    // window position b
    int order = 0;  // b - a + 1
};

/// Maximal constant runs lying fully inside window positions 2..m-1, so that
/// runs touching positions 1 or m (or the recorded outer states) are
/// discarded and 1 <= n_m <= m-2 whenever any tie exists. m < 3 yields none.
inline std::vector<Tie> extract_ties(const WalkTrace& trace) {
    std::vector<Tie> ties;
    const int m = trace.m;
    if (m < 3) return ties;
    const auto& x = trace.states;  // indices 0..m+1
    int s = 0;
    while (s <= m + 1) {
        int e = s;
        while (e + 1 <= m + 1 && x[e + 1] == x[s]) ++e;
        if (s >= 2 && e <= m - 1) ties.push_back({x[s], s, e, e - s + 1});
        s = e + 1;
    }
    return ties;
}

/// Walk started from an arbitrary state after a burn-in (default 50*N steps).
inline WalkTrace run_walk_burnin(const Graph& g, const WalkConfig& cfg, int m, Rng& rng,
                                 int burn_in = -1, std::uint64_t seed_label = 0) {
    cfg.validate(g.n_nodes());
    if (m < 1) throw std::invalid_argument("run_walk: m must be >= 1");
    if (g.min_degree() < 2) throw std::invalid_argument("run_walk: walker requires degree >= 2");
    if (cfg.r == 0.0 && !g.is_connected())
        throw std::invalid_argument("run_walk: chain reducible (disconnected graph with r=0)");
    if (burn_in < 0) burn_in = 50 * g.n_nodes();
    int cur = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n_nodes())));
    int prev = rng.pick(g.neighbors(cur));
    for (int t = 0; t < burn_in; ++t) {
        int nxt = step(g, cfg, {prev, cur}, rng);
        prev = cur;
        cur = nxt;
    }
    WalkTrace trace;
    trace.m = m;
    trace.config_hash = cfg.hash();
    trace.seed = seed_label;
    trace.states.reserve(static_cast<std::size_t>(m) + 2);
    trace.states.push_back(prev);
    trace.states.push_back(cur);
    for (int t = 0; t < m; ++t) {
        int nxt = step(g, cfg, {prev, cur}, rng);
        prev = cur;
        cur = nxt;
        trace.states.push_back(cur);
    }
    return trace;
}

}  // namespace gss
