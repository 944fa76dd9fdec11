#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gss/graph.hpp"
#include "gss/rng.hpp"
#include "gss/walk.hpp"

namespace gss {

struct PairChainOptions {
    double tol = 1e-13;                  // L1 tolerance between successive iterates
    std::size_t max_iterations = 1000000;
    std::size_t max_states = 200000;     // exact mode cap on pair-state count
};

/// Exact Markov chain over ordered pairs (X_{t-1}, X_t). Rows are stored as
/// sparse local moves (proposal/backtrack/stay); random-jump mass is applied
/// analytically, so N^2-state chains with r > 0 stay tractable. The
/// stationary law is obtained by power iteration on the half-lazy chain,
/// which has the same fixed points and converges for periodic supports too.
class PairChain {
  public:
    struct RowEntry {
        int state;  // index into states()
        double p;   // local move probability (jump mass excluded)
    };

    const Graph& graph() const { return g_; }
    const WalkConfig& config() const { return cfg_; }
    int n_nodes() const { return g_.n_nodes(); }

    const std::vector<PairState>& states() const { return states_; }
    const std::vector<RowEntry>& local_row(int state) const {
        return rows_[static_cast<std::size_t>(state)];
    }
    double jump_coefficient(int state) const {
        return cfg_.r <= 0.0 ? 0.0
                             : cfg_.r / (g_.degree(states_[static_cast<std::size_t>(state)].cur) + cfg_.r);
    }

    int state_index(int prev, int cur) const {
        return index_[static_cast<std::size_t>(prev - 1) * g_.n_nodes() + (cur - 1)];
    }

    const std::vector<double>& stationary_pair() const { return pi_; }
    const std::vector<double>& stationary_node() const { return node_; }

    double pair_prob(int prev, int cur) const {
        int s = state_index(prev, cur);
        return s < 0 ? 0.0 : pi_[static_cast<std::size_t>(s)];
    }
    double node_prob(int h) const { return node_[static_cast<std::size_t>(h - 1)]; }

    /// p_hh = Pr(X_t = h | X_{t-1} = h) at equilibrium.
    double conditional_stay(int h) const {
        double ph = node_prob(h);
        return ph > 0.0 ? pair_prob(h, h) / ph : 0.0;
    }

    /// Closed-form node law (d_h + r) u_h, normalized.
    std::vector<double> closed_form_node() const {
        std::vector<double> p(static_cast<std::size_t>(g_.n_nodes()));
        double tot = 0.0;
        for (int h = 1; h <= g_.n_nodes(); ++h) {
            p[h - 1] = (g_.degree(h) + cfg_.r) * cfg_.u[h - 1];
            tot += p[h - 1];
        }
        for (double& v : p) v /= tot;
        return p;
    }

    double residual() const { return residual_; }
    std::size_t iterations() const { return iterations_; }

    PairState sample_pair(Rng& rng) const {
        double x = rng.uniform01() * cum_.back();
        auto it = std::lower_bound(cum_.begin(), cum_.end(), x);
        std::size_t k = static_cast<std::size_t>(it - cum_.begin());
        if (k >= states_.size()) k = states_.size() - 1;
        return states_[k];
    }

    /// Full kernel row over next nodes (jump mass included).
    std::vector<double> row_over_nodes(int prev, int cur) const {
        std::vector<double> row(static_cast<std::size_t>(g_.n_nodes()));
        for (int j = 1; j <= g_.n_nodes(); ++j) row[j - 1] = detail::kernel(g_, cfg_, prev, cur, j);
        return row;
    }

    /// Dense debug export: one row per from-pair, one column per to-node.
    void export_dense_csv(std::ostream& os) const {
        os << "prev,cur";
        for (int j = 1; j <= g_.n_nodes(); ++j) os << ",to_" << j;
        os << "\n";
        for (const auto& s : states_) {
            os << s.prev << "," << s.cur;
            for (double v : row_over_nodes(s.prev, s.cur)) os << "," << v;
            os << "\n";
        }
    }

    friend PairChain build_pair_chain(const Graph&, const WalkConfig&, PairChainOptions);

  private:
    Graph g_;
    WalkConfig cfg_;
    std::vector<PairState> states_;
    std::vector<int> index_;  // (prev-1)*N + (cur-1) -> state index or -1
    std::vector<std::vector<RowEntry>> rows_;
    std::vector<double> pi_;
    std::vector<double> node_;
    std::vector<double> cum_;
    double residual_ = 0.0;
    std::size_t iterations_ = 0;
};

namespace detail {

/// Strongly connected components (iterative Tarjan); returns component id per
/// state and marks components with no outgoing cross-component arc as closed.
inline void closed_components(const std::vector<std::vector<PairChain::RowEntry>>& rows,
                              std::vector<char>& keep) {
    const int S = static_cast<int>(rows.size());
    std::vector<int> num(S, -1), low(S, 0), comp(S, -1), stk;
    std::vector<char> on(S, 0);
    int counter = 0, ncomp = 0;
    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> frames;
    for (int root = 0; root < S; ++root) {
        if (num[root] >= 0) continue;
        frames.push_back({root, 0});
        num[root] = low[root] = counter++;
        stk.push_back(root);
        on[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < rows[static_cast<std::size_t>(f.v)].size()) {
                int w = rows[static_cast<std::size_t>(f.v)][f.child++].state;
                if (num[w] < 0) {
                    num[w] = low[w] = counter++;
                    stk.push_back(w);
                    on[w] = 1;
                    frames.push_back({w, 0});
                } else if (on[w]) {
                    low[f.v] = std::min(low[f.v], num[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == num[v]) {
                    for (;;) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = 0;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
            }
        }
    }
    std::vector<char> closed(static_cast<std::size_t>(ncomp), 1);
    for (int v = 0; v < S; ++v)
        for (const auto& e : rows[static_cast<std::size_t>(v)])
            if (comp[e.state] != comp[v]) closed[static_cast<std::size_t>(comp[v])] = 0;
    keep.assign(static_cast<std::size_t>(S), 0);
    for (int v = 0; v < S; ++v) keep[static_cast<std::size_t>(v)] = closed[static_cast<std::size_t>(comp[v])];
}

}  // namespace detail

inline PairChain build_pair_chain(const Graph& g, const WalkConfig& cfg, PairChainOptions opt = {}) {
    cfg.validate(g.n_nodes());
    const int n = g.n_nodes();
    if (g.min_degree() < 2) throw std::invalid_argument("build_pair_chain: walker requires degree >= 2");
    if (cfg.r == 0.0 && !g.is_connected())
        throw std::invalid_argument("build_pair_chain: chain reducible (disconnected graph with r=0)");

    PairChain chain;
    chain.g_ = g;
    chain.cfg_ = cfg;

    // Candidate support: with jumps every ordered pair can occur; without,
    // only directed edges and the diagonal (rejections, self-jumps).
    std::vector<PairState> cand;
    if (cfg.r > 0.0) {
        if (static_cast<std::size_t>(n) * n > opt.max_states)
            throw std::runtime_error(
                "build_pair_chain: pair-state count " + std::to_string(static_cast<std::size_t>(n) * n) +
                " exceeds cap " + std::to_string(opt.max_states) + "; use run_walk_burnin");
        cand.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 1; i <= n; ++i)
            for (int h = 1; h <= n; ++h) cand.push_back({i, h});
    } else {
        for (int i = 1; i <= n; ++i)
            for (int h : g.neighbors(i)) cand.push_back({i, h});
        for (int h = 1; h <= n; ++h) cand.push_back({h, h});
        if (cand.size() > opt.max_states)
            throw std::runtime_error("build_pair_chain: pair-state count exceeds cap; use run_walk_burnin");
    }

    auto build_index = [&](const std::vector<PairState>& sts) {
        std::vector<int> index(static_cast<std::size_t>(n) * n, -1);
        for (std::size_t k = 0; k < sts.size(); ++k)
            index[static_cast<std::size_t>(sts[k].prev - 1) * n + (sts[k].cur - 1)] =
                static_cast<int>(k);
        return index;
    };
    auto build_rows = [&](const std::vector<PairState>& sts, const std::vector<int>& index) {
        std::vector<std::vector<PairChain::RowEntry>> rows(sts.size());
        for (std::size_t k = 0; k < sts.size(); ++k) {
            const auto [i, h] = sts[k];
            const double jump = cfg.r / (g.degree(h) + cfg.r);
            auto add = [&](int j) {
                double p = detail::kernel(g, cfg, i, h, j) - jump * cfg.u[j - 1];
                if (p > 0.0) {
                    int to = index[static_cast<std::size_t>(h - 1) * n + (j - 1)];
                    if (to < 0) throw std::logic_error("build_pair_chain: successor outside support");
                    rows[k].push_back({to, p});
                }
            };
            for (int j : g.neighbors(h)) add(j);
            add(h);
        }
        return rows;
    };

    std::vector<int> index = build_index(cand);
    std::vector<std::vector<PairChain::RowEntry>> rows = build_rows(cand, index);

    if (cfg.r == 0.0) {
        // drop transient states: only closed communicating classes carry mass
        std::vector<char> keep;
        detail::closed_components(rows, keep);
        std::vector<PairState> kept;
        for (std::size_t k = 0; k < cand.size(); ++k)
            if (keep[k]) kept.push_back(cand[k]);
        if (kept.empty()) throw std::logic_error("build_pair_chain: empty recurrent support");
        cand.swap(kept);
        index = build_index(cand);
        rows = build_rows(cand, index);
    }

    const std::size_t S = cand.size();
    std::vector<double> p(S, 1.0 / static_cast<double>(S)), q(S), jmass(static_cast<std::size_t>(n));

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        if (cfg.r > 0.0) std::fill(jmass.begin(), jmass.end(), 0.0);
        for (std::size_t k = 0; k < S; ++k) {
            const double mass = in[k];
            if (mass == 0.0) continue;
            for (const auto& e : rows[k]) out[static_cast<std::size_t>(e.state)] += mass * e.p;
            if (cfg.r > 0.0) {
                const int h = cand[k].cur;
                jmass[static_cast<std::size_t>(h - 1)] += mass * cfg.r / (g.degree(h) + cfg.r);
            }
        }
        if (cfg.r > 0.0) {
            for (int h = 1; h <= n; ++h) {
                const double jm = jmass[static_cast<std::size_t>(h - 1)];
                if (jm == 0.0) continue;
                for (int j = 1; j <= n; ++j)
                    out[static_cast<std::size_t>(index[static_cast<std::size_t>(h - 1) * n + (j - 1)])] +=
                        jm * cfg.u[j - 1];
            }
        }
    };

    std::size_t it = 0;
    for (; it < opt.max_iterations; ++it) {
        apply(p, q);
        double diff = 0.0, tot = 0.0;
        for (std::size_t k = 0; k < S; ++k) {
            q[k] = 0.5 * p[k] + 0.5 * q[k];  // half-lazy update
            diff += std::abs(q[k] - p[k]);
            tot += q[k];
        }
        for (std::size_t k = 0; k < S; ++k) q[k] /= tot;
        p.swap(q);
        if (diff <= opt.tol) break;
    }

    apply(p, q);
    double res = 0.0;
    for (std::size_t k = 0; k < S; ++k) res += std::abs(q[k] - p[k]);
    if (res > 1e-9)
        throw std::runtime_error("build_pair_chain: power iteration did not converge (residual " +
                                 std::to_string(res) + ")");

    chain.states_ = std::move(cand);
    chain.index_ = std::move(index);
    chain.rows_ = std::move(rows);
    chain.pi_ = std::move(p);
    chain.residual_ = res;
    chain.iterations_ = it + 1;
    chain.node_.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < S; ++k)
        chain.node_[static_cast<std::size_t>(chain.states_[k].cur - 1)] += chain.pi_[k];
    chain.cum_.resize(S);
    double acc = 0.0;
    for (std::size_t k = 0; k < S; ++k) {
        acc += chain.pi_[k];
        chain.cum_[k] = acc;
    }
    return chain;
}

/// Pr(n=1): total stationary mass on diagonal pairs (h, h).
inline double prob_single_distinct(const PairChain& chain) {
    double tot = 0.0;
    for (int h = 1; h <= chain.n_nodes(); ++h) tot += chain.pair_prob(h, h);
    return tot;
}

/// Walk started exactly at equilibrium (initial pair drawn from the
/// stationary pair law).
inline WalkTrace run_walk(const PairChain& chain, int m, Rng& rng, std::uint64_t seed_label = 0) {
    if (m < 1) throw std::invalid_argument("run_walk: m must be >= 1");
    PairState s = chain.sample_pair(rng);
    WalkTrace trace;
    trace.m = m;
    trace.config_hash = chain.config().hash();
    trace.seed = seed_label;
    trace.states.reserve(static_cast<std::size_t>(m) + 2);
    trace.states.push_back(s.prev);
    trace.states.push_back(s.cur);
    for (int t = 0; t < m; ++t) {
        int nxt = step(chain.graph(), chain.config(), s, rng);
        s = {s.cur, nxt};
        trace.states.push_back(nxt);
    }
    return trace;
}

}  // namespace gss
