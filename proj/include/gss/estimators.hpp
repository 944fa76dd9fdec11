#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gss/pair_chain.hpp"
#include "gss/walk.hpp"

namespace gss {

/// Horvitz-Thompson estimator of the population total over distinct units.
inline double horvitz_thompson(const std::vector<int>& units, const std::vector<double>& y,
                               const std::vector<double>& pi) {
    double tot = 0.0;
    for (int i : units) {
        const double p = pi[static_cast<std::size_t>(i - 1)];
        if (!(p > 0.0)) throw std::invalid_argument("horvitz_thompson: zero inclusion probability in sample");
        tot += y[static_cast<std::size_t>(i - 1)] / p;
    }
    return tot;
}

/// Sequence estimator (n/m) sum_j y_X / pi_X over the m visited states,
/// repeats counted with multiplicity.
inline double yhat_w(const std::vector<int>& window, const std::vector<double>& y,
                     const std::vector<double>& pi, int n) {
    const int m = static_cast<int>(window.size());
    if (m < 1) throw std::invalid_argument("yhat_w: empty sequence");
    double tot = 0.0;
    for (int x : window) tot += y[static_cast<std::size_t>(x - 1)] / pi[static_cast<std::size_t>(x - 1)];
    return static_cast<double>(n) / m * tot;
}

inline double yhat_w(const WalkTrace& trace, const std::vector<double>& y,
                     const std::vector<double>& pi, int n) {
    std::vector<int> window(trace.states.begin() + 1, trace.states.begin() + 1 + trace.m);
    return yhat_w(window, y, pi, n);
}

/// Closed-form one-step quantities around a node h for w = 0:
/// the stay probabilities p_(ih)h, p_(hh)h and the off-diagonal row p_(ih)j.
struct TieTransitionQuantities {
    int h = 0;
    double a_h = 0.0;        // sum over neighbours of min(u_j/u_h, 1)
    double stay_from_diag;   // p_(hh)h
    std::vector<double> stay;               // [i-1] -> p_(ih)h, i != h; [h-1] = p_(hh)h
    std::vector<std::vector<double>> next;  // [i-1][j-1] -> p_(ih)j for i != h, j != h
};

inline TieTransitionQuantities tie_transition_quantities(const PairChain& chain, int h) {
    const Graph& g = chain.graph();
    const WalkConfig& cfg = chain.config();
    if (cfg.w != 0.0)
        throw std::invalid_argument("tie_transition_quantities: closed forms require w = 0");
    const int N = g.n_nodes();
    const double d = g.degree(h);
    const double r = cfg.r;
    const auto& u = cfg.u;
    auto ratio = [&](int j) { return std::min(u[static_cast<std::size_t>(j - 1)] / u[static_cast<std::size_t>(h - 1)], 1.0); };

    TieTransitionQuantities q;
    q.h = h;
    for (int j : g.neighbors(h)) q.a_h += ratio(j);
    q.stay_from_diag = (r * u[static_cast<std::size_t>(h - 1)] + d - q.a_h) / (d + r);

    q.stay.assign(static_cast<std::size_t>(N), 0.0);
    q.next.assign(static_cast<std::size_t>(N), std::vector<double>(static_cast<std::size_t>(N), 0.0));
    for (int i = 1; i <= N; ++i) {
        if (i == h) {
            q.stay[static_cast<std::size_t>(i - 1)] = q.stay_from_diag;
            continue;
        }
        const bool i_adj = g.has_edge(i, h);
        double stay = r * u[static_cast<std::size_t>(h - 1)] / (d + r);
        if (!i_adj)
            stay += (d - q.a_h) / (d + r);
        else
            stay += d / (d + r) * (1.0 - (q.a_h - ratio(i)) / (d - 1.0));
        q.stay[static_cast<std::size_t>(i - 1)] = stay;
        for (int j = 1; j <= N; ++j) {
            if (j == h) continue;
            double p = r * u[static_cast<std::size_t>(j - 1)] / (d + r);
            const bool j_adj = g.has_edge(j, h);
            if (j_adj && !(i == j && i_adj)) {
                if (!i_adj)
                    p += ratio(j) / (d + r);
                else if (i != j)
                    p += d / (d - 1.0) * ratio(j) / (d + r);
            }
            q.next[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = p;
        }
    }
    return q;
}

/// Stationary probability of a tie of the given order at node h: window
/// (i, h...h, j) with i, j != h, assembled from the closed-form quantities
/// and the stationary pair law.
inline double tie_probability(const PairChain& chain, int h, int order) {
    if (order < 1) throw std::invalid_argument("tie_probability: order must be >= 1");
    TieTransitionQuantities q = tie_transition_quantities(chain, h);
    const int N = chain.n_nodes();
    double tot = 0.0;
    if (order == 1) {
        for (int i = 1; i <= N; ++i) {
            if (i == h) continue;
            const double mass = chain.pair_prob(i, h);
            if (mass == 0.0) continue;
            double row = 0.0;
            for (int j = 1; j <= N; ++j) {
                if (j == h) continue;
                row += q.next[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            }
            tot += mass * row;
        }
        return tot;
    }
    for (int i = 1; i <= N; ++i) {
        if (i == h) continue;
        tot += chain.pair_prob(i, h) * q.stay[static_cast<std::size_t>(i - 1)];
    }
    return tot * std::pow(q.stay_from_diag, order - 2) * (1.0 - q.stay_from_diag);
}

/// tie_probability for all nodes and orders 1..max_order; [k-1][h-1].
inline std::vector<std::vector<double>> tie_probability_table(const PairChain& chain, int max_order) {
    std::vector<std::vector<double>> tab(static_cast<std::size_t>(max_order),
                                         std::vector<double>(static_cast<std::size_t>(chain.n_nodes())));
    for (int h = 1; h <= chain.n_nodes(); ++h)
        for (int k = 1; k <= max_order; ++k)
            tab[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(h - 1)] = tie_probability(chain, h, k);
    return tab;
}

/// Normalize a tie-probability table order-wise into conditional laws.
inline std::vector<std::vector<double>> normalize_tie_table(std::vector<std::vector<double>> tab) {
    for (auto& row : tab) {
        double s = 0.0;
        for (double v : row) s += v;
        if (s > 0.0)
            for (double& v : row) v /= s;
    }
    return tab;
}

/// Tie estimator: mean over ties of y_h / pbar, with pbar the tie probability
/// normalized over nodes at the same order. `normalized` as from
/// normalize_tie_table.
inline double yhat_h_with_table(const std::vector<Tie>& ties, const std::vector<double>& y,
                                const std::vector<std::vector<double>>& normalized) {
    if (ties.empty()) throw std::invalid_argument("yhat_h: no ties in sequence");
    double tot = 0.0;
    for (const Tie& t : ties) {
        const double pbar = normalized[static_cast<std::size_t>(t.order - 1)][static_cast<std::size_t>(t.node - 1)];
        if (!(pbar > 0.0))
            throw std::invalid_argument(
                "yhat_h: tie probability is zero for node " + std::to_string(t.node) +
                "; use a small positive jump weight r so every node can tie");
        tot += y[static_cast<std::size_t>(t.node - 1)] / pbar;
    }
    return tot / static_cast<double>(ties.size());
}

inline double yhat_h(const std::vector<Tie>& ties, const std::vector<double>& y,
                     const PairChain& chain) {
    if (ties.empty()) throw std::invalid_argument("yhat_h: no ties in sequence");
    int max_order = 1;
    for (const Tie& t : ties) max_order = std::max(max_order, t.order);
    return yhat_h_with_table(ties, y, normalize_tie_table(tie_probability_table(chain, max_order)));
}

struct EstimateReport {
    double estimate = 0.0;
    std::string kind;
    std::optional<double> variance_estimate;
    int walks = 0;
    int m = 0;
};

/// Mean of per-walk sequence estimates with the between-walk variance of the
/// mean (sample variance divided by the number of walks).
inline EstimateReport multi_walk(const std::vector<WalkTrace>& traces, const std::vector<double>& y,
                                 const std::vector<double>& pi, int n) {
    if (traces.size() < 2) throw std::invalid_argument("multi_walk: need at least 2 walks");
    std::vector<double> est;
    est.reserve(traces.size());
    for (const auto& t : traces) est.push_back(yhat_w(t, y, pi, n));
    double mean = 0.0;
    for (double v : est) mean += v;
    mean /= static_cast<double>(est.size());
    double ss = 0.0;
    for (double v : est) ss += (v - mean) * (v - mean);
    const double var = ss / (static_cast<double>(est.size()) - 1.0) / static_cast<double>(est.size());
    EstimateReport rep;
    rep.estimate = mean;
    rep.kind = "yhat_w_multi_walk";
    rep.variance_estimate = var;
    rep.walks = static_cast<int>(traces.size());
    rep.m = traces.front().m;
    return rep;
}

}  // namespace gss
