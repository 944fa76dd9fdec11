#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gss/pair_chain.hpp"

namespace gss {

/// Max deviation between the power-iterated node marginal and the closed-form
/// law (d_h + r) u_h. Zero only where the closed form actually holds (w = 1,
/// or acceptance ratios constant over each neighbourhood, e.g. uniform u).
inline double closed_form_deviation(const PairChain& chain) {
    auto cf = chain.closed_form_node();
    double dev = 0.0;
    for (int h = 1; h <= chain.n_nodes(); ++h)
        dev = std::max(dev, std::abs(chain.node_prob(h) - cf[static_cast<std::size_t>(h - 1)]));
    return dev;
}

/// Residual of the node-marginal decomposition at the computed law:
/// p_h = p_(hh) + sum_{i in nu_h} p_(ih) + sum_{i notin nu_h, i != h} p_i r u_h/(d_i+r).
/// Holds exactly at any stationary pair law.
inline double node_inflow_residual(const PairChain& chain) {
    const Graph& g = chain.graph();
    const WalkConfig& cfg = chain.config();
    double res = 0.0;
    for (int h = 1; h <= g.n_nodes(); ++h) {
        double rhs = chain.pair_prob(h, h);
        for (int i : g.neighbors(h)) rhs += chain.pair_prob(i, h);
        if (cfg.r > 0.0)
            for (int i = 1; i <= g.n_nodes(); ++i) {
                if (i == h || g.has_edge(i, h)) continue;
                rhs += chain.node_prob(i) * cfg.r * cfg.u[h - 1] / (g.degree(i) + cfg.r);
            }
        res = std::max(res, std::abs(chain.node_prob(h) - rhs));
    }
    return res;
}

/// Residual between the two directions of forward flows through h across its
/// neighbourhood (double sums over ordered neighbour pairs).
inline double neighbour_flow_symmetry_residual(const PairChain& chain) {
    const Graph& g = chain.graph();
    const WalkConfig& cfg = chain.config();
    double res = 0.0;
    for (int h = 1; h <= g.n_nodes(); ++h) {
        const double d = g.degree(h);
        const double coef = (d - cfg.w) / (d - 1.0) / ((d + cfg.r) * cfg.u[h - 1]);
        double fwd = 0.0, rev = 0.0;
        for (int i : g.neighbors(h))
            for (int j : g.neighbors(h)) {
                if (i == j) continue;
                fwd += chain.pair_prob(i, h) * coef * std::min(cfg.u[j - 1], cfg.u[h - 1]);
                rev += chain.pair_prob(j, h) * coef * std::min(cfg.u[i - 1], cfg.u[h - 1]);
            }
        res = std::max(res, std::abs(fwd - rev));
    }
    return res;
}

/// Residual of jump-flow symmetry p_i r u_h/(d_i+r) * r u_j/(d_h+r) against
/// the reversed triple, over distinct triples (i, h, j) with i, j outside
/// nu_h, evaluated at the computed node law. Zero when r = 0 or the computed
/// law matches the closed form.
inline double jump_flow_symmetry_residual(const PairChain& chain) {
    const WalkConfig& cfg = chain.config();
    if (cfg.r <= 0.0) return 0.0;
    const Graph& g = chain.graph();
    const int n = g.n_nodes();
    double res = 0.0;
    for (int h = 1; h <= n; ++h)
        for (int i = 1; i <= n; ++i) {
            if (i == h || g.has_edge(i, h)) continue;
            for (int j = 1; j <= n; ++j) {
                if (j == h || j == i || g.has_edge(j, h)) continue;
                double fwd = chain.node_prob(i) * cfg.r / (g.degree(i) + cfg.r) * cfg.u[h - 1] *
                             cfg.r / (g.degree(h) + cfg.r) * cfg.u[j - 1];
                double rev = chain.node_prob(j) * cfg.r / (g.degree(j) + cfg.r) * cfg.u[h - 1] *
                             cfg.r / (g.degree(h) + cfg.r) * cfg.u[i - 1];
                res = std::max(res, std::abs(fwd - rev));
            }
        }
    return res;
}

/// Residual of the edge-arrival balance p_h * Delta_h = sum_{i in nu_h} p_(ih)
/// with Delta_h = r/(d_h+r) sum_{i in nu_h} u_i
///              + sum_{i in nu_h} min(u_i, u_h) / ((d_h+r) u_h),
/// evaluated at the computed stationary law.
inline double edge_arrival_departure_residual(const PairChain& chain) {
    const Graph& g = chain.graph();
    const WalkConfig& cfg = chain.config();
    double res = 0.0;
    for (int h = 1; h <= g.n_nodes(); ++h) {
        const double d = g.degree(h);
        double sum_u = 0.0, sum_min = 0.0, arrivals = 0.0;
        for (int i : g.neighbors(h)) {
            sum_u += cfg.u[i - 1];
            sum_min += std::min(cfg.u[i - 1], cfg.u[h - 1]);
            arrivals += chain.pair_prob(i, h);
        }
        const double delta = cfg.r / (d + cfg.r) * sum_u + sum_min / ((d + cfg.r) * cfg.u[h - 1]);
        res = std::max(res, std::abs(chain.node_prob(h) * delta - arrivals));
    }
    return res;
}

}  // namespace gss
