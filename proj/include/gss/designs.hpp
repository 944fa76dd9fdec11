#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gss/graph.hpp"
#include "gss/pair_chain.hpp"
#include "gss/rng.hpp"
#include "gss/walk.hpp"

namespace gss {

/// Realized sample. The drawn order is retained (walk sequences are ordered
/// and may repeat units); without-replacement designs yield distinct units.
struct Sample {
    std::vector<int> units;
};

inline std::vector<int> distinct_units(const Sample& s) {
    std::vector<int> u = s.units;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

/// Uniform over all C(N, n) subsets (partial Fisher-Yates).
inline Sample srswor(int n_pop, int n, Rng& rng) {
    if (n < 1 || n > n_pop) throw std::invalid_argument("srswor: need 1 <= n <= N");
    std::vector<int> pool(static_cast<std::size_t>(n_pop));
    for (int i = 0; i < n_pop; ++i) pool[i] = i + 1;
    Sample s;
    s.units.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        std::size_t j = k + rng.below(static_cast<std::uint64_t>(n_pop - k));
        std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
        s.units.push_back(pool[static_cast<std::size_t>(k)]);
    }
    return s;
}

/// Fractional-interval circular systematic sampling along the given order:
/// v ~ U[0, N), positions floor(v + k N/n) mod N. Always n distinct units.
inline Sample systematic_circular(const std::vector<int>& order, int n, Rng& rng) {
    const int N = static_cast<int>(order.size());
    if (n < 1 || n > N) throw std::invalid_argument("systematic_circular: need 1 <= n <= N");
    const double v = rng.uniform01() * N;
    Sample s;
    s.units.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        int pos = static_cast<int>(std::floor(v + k * static_cast<double>(N) / n)) % N;
        s.units.push_back(order[static_cast<std::size_t>(pos)]);
    }
    return s;
}

/// Integer-interval systematic sampling along a path; requires N divisible
/// by n (otherwise a fixed sample size is impossible).
inline Sample systematic_path(const std::vector<int>& order, int n, Rng& rng) {
    const int N = static_cast<int>(order.size());
    if (n < 1 || n > N) throw std::invalid_argument("systematic_path: need 1 <= n <= N");
    if (N % n != 0)
        throw std::invalid_argument("systematic_path: N must be divisible by n for a fixed sample size");
    const int interval = N / n;
    const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(interval)));
    Sample s;
    s.units.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) s.units.push_back(order[static_cast<std::size_t>(start + k * interval)]);
    return s;
}

/// Preference vector calibrated to inclusion probabilities:
/// u_i = pi_i / (n d_i eta) with eta = (1/n) sum_i pi_i / d_i, so that
/// d_i u_i eta = pi_i / n and sum u = 1.
struct PreferenceVector {
    std::vector<double> u;
    double eta = 0.0;
};

inline PreferenceVector preference_vector(const Graph& g, const std::vector<double>& pi, int n) {
    const int N = g.n_nodes();
    if (static_cast<int>(pi.size()) != N) throw std::invalid_argument("preference_vector: pi length mismatch");
    double sum = 0.0;
    for (double v : pi) {
        if (!(v > 0.0) || v > 1.0) throw std::invalid_argument("preference_vector: pi must lie in (0,1]");
        sum += v;
    }
    if (std::abs(sum - n) > 1e-9) throw std::invalid_argument("preference_vector: sum(pi) must equal n");
    PreferenceVector pv;
    pv.eta = 0.0;
    for (int i = 1; i <= N; ++i) pv.eta += pi[i - 1] / g.degree(i);
    pv.eta /= n;
    pv.u.resize(static_cast<std::size_t>(N));
    for (int i = 1; i <= N; ++i) pv.u[i - 1] = pi[i - 1] / (n * g.degree(i) * pv.eta);
    return pv;
}

/// Equal-probability sampling without replacement on a connected 2-regular
/// graph: uniform start node, uniform direction, n consecutive cycle nodes.
inline Sample epsswor_gss(const std::vector<int>& order, int n, Rng& rng) {
    const int N = static_cast<int>(order.size());
    if (n < 1 || n > N) throw std::invalid_argument("epsswor_gss: need 1 <= n <= N");
    const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
    const int dir = rng.bernoulli(0.5) ? 1 : -1;
    Sample s;
    s.units.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        s.units.push_back(order[static_cast<std::size_t>(((start + dir * k) % N + N) % N)]);
    return s;
}

inline Sample epsswor_gss(const Graph& cycle, int n, Rng& rng) {
    return epsswor_gss(cycle_order(cycle), n, rng);  // cycle_order rejects non-2-regular input
}

/// m-sequence of the walk at equilibrium with the calibrated preference
/// vector (r = w = 0 unless overridden). Chain construction is the expensive
/// part; reuse it across draws via the PairChain overload.
inline PairChain make_gss_chain(const Graph& g, const std::vector<double>& pi, double r = 0.0,
                                double w = 0.0) {
    double sum = 0.0;
    for (double v : pi) sum += v;
    const int n = static_cast<int>(std::lround(sum));
    PreferenceVector pv = preference_vector(g, pi, n);
    WalkConfig cfg;
    cfg.r = r;
    cfg.w = w;
    cfg.u = pv.u;
    return build_pair_chain(g, cfg);
}

inline Sample gss_sequence(const PairChain& chain, int m, Rng& rng) {
    WalkTrace t = run_walk(chain, m, rng);
    Sample s;
    s.units.assign(t.states.begin() + 1, t.states.begin() + 1 + m);
    return s;
}

inline Sample gss_sequence(const Graph& g, const std::vector<double>& pi, int m, Rng& rng,
                           double r = 0.0, double w = 0.0) {
    PairChain chain = make_gss_chain(g, pi, r, w);
    return gss_sequence(chain, m, rng);
}

/// Local pivotal method, variant 1: pick a random undecided unit, find its
/// nearest undecided neighbour (distance ties broken at random), pair them
/// only if mutually nearest (re-draw otherwise), and resolve the pair's
/// inclusion probabilities pivotally until every unit is 0 or 1.
inline Sample lpm1(const std::vector<std::array<double, 2>>& coords, std::vector<double> pi,
                   Rng& rng) {
    const int N = static_cast<int>(coords.size());
    if (static_cast<int>(pi.size()) != N) throw std::invalid_argument("lpm1: pi length mismatch");
    double sum = 0.0;
    for (double v : pi) {
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("lpm1: pi must lie in [0,1]");
        sum += v;
    }
    if (std::abs(sum - std::lround(sum)) > 1e-9)
        throw std::invalid_argument("lpm1: sum(pi) must be an integer");

    constexpr double eps = 1e-9;
    auto dist2 = [&](int a, int b) {
        const double dx = coords[a][0] - coords[b][0];
        const double dy = coords[a][1] - coords[b][1];
        return dx * dx + dy * dy;
    };
    std::vector<int> undecided;
    for (int i = 0; i < N; ++i)
        if (pi[i] > eps && pi[i] < 1.0 - eps) undecided.push_back(i);

    auto nearest = [&](int i, Rng& r2) -> std::pair<int, double> {
        double best = std::numeric_limits<double>::infinity();
        for (int k : undecided) {
            if (k == i) continue;
            best = std::min(best, dist2(i, k));
        }
        std::vector<int> ties;
        for (int k : undecided)
            if (k != i && dist2(i, k) <= best + 1e-12) ties.push_back(k);
        return {ties[r2.below(ties.size())], best};
    };

    while (undecided.size() >= 2) {
        int i = -1, j = -1;
        for (int attempt = 0;; ++attempt) {
            i = undecided[rng.below(undecided.size())];
            auto [cand, d_i] = nearest(i, rng);
            auto [back, d_j] = nearest(cand, rng);
            (void)back;
            if (dist2(i, cand) <= d_j + 1e-12) {  // i is among cand's nearest: mutual
                j = cand;
                break;
            }
            if (attempt > 100000) throw std::logic_error("lpm1: no mutually nearest pair found");
        }
        const double a = pi[i], b = pi[j], s = a + b;
        if (s < 1.0) {
            if (rng.uniform01() < b / s) {
                pi[i] = 0.0;
                pi[j] = s;
            } else {
                pi[i] = s;
                pi[j] = 0.0;
            }
        } else {
            if (rng.uniform01() < (1.0 - b) / (2.0 - s)) {
                pi[i] = 1.0;
                pi[j] = s - 1.0;
            } else {
                pi[i] = s - 1.0;
                pi[j] = 1.0;
            }
        }
        undecided.erase(std::remove_if(undecided.begin(), undecided.end(),
                                       [&](int k) { return pi[k] <= eps || pi[k] >= 1.0 - eps; }),
                        undecided.end());
    }
    if (undecided.size() == 1) {
        // conservation leaves at most rounding residue on the last unit
        int k = undecided.front();
        if (std::abs(pi[k] - 1.0) < 1e-6)
            pi[k] = 1.0;
        else if (std::abs(pi[k]) < 1e-6)
            pi[k] = 0.0;
        else
            throw std::logic_error("lpm1: non-integral probability left over");
    }
    Sample s;
    for (int i = 0; i < N; ++i)
        if (pi[i] >= 1.0 - eps) s.units.push_back(i + 1);
    return s;
}

// ---------------------------------------------------------------------------
// Design descriptions under one interface

struct SrsworDesign {
    int n_pop = 0;
    int n = 0;
};
struct SystematicDesign {
    std::vector<int> order;
    int n = 0;
    bool circular = true;
};
struct EpssworDesign {
    Graph cycle;
    int n = 0;
};
struct UnequalGssDesign {
    Graph g;
    std::vector<double> pi;
    int m = 0;
    double r = 0.0;
    double w = 0.0;
};
struct Lpm1Design {
    std::vector<std::array<double, 2>> coords;
    std::vector<double> pi;
};

using Design = std::variant<SrsworDesign, SystematicDesign, EpssworDesign, UnequalGssDesign, Lpm1Design>;

inline int population_size(const Design& d) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SrsworDesign>) return v.n_pop;
            else if constexpr (std::is_same_v<T, SystematicDesign>) return static_cast<int>(v.order.size());
            else if constexpr (std::is_same_v<T, EpssworDesign>) return v.cycle.n_nodes();
            else if constexpr (std::is_same_v<T, UnequalGssDesign>) return v.g.n_nodes();
            else return static_cast<int>(v.coords.size());
        },
        d);
}

/// Number of draws per sample: n, or the sequence length m for walk designs.
inline int sample_size(const Design& d) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SrsworDesign>) return v.n;
            else if constexpr (std::is_same_v<T, SystematicDesign>) return v.n;
            else if constexpr (std::is_same_v<T, EpssworDesign>) return v.n;
            else if constexpr (std::is_same_v<T, UnequalGssDesign>) return v.m;
            else {
                double s = 0.0;
                for (double p : v.pi) s += p;
                return static_cast<int>(std::lround(s));
            }
        },
        d);
}

/// Per-unit inclusion probabilities used by the estimator attached to the
/// design (n/N for the equal-probability kinds).
inline std::vector<double> design_pi(const Design& d) {
    const int N = population_size(d);
    return std::visit(
        [&](const auto& v) -> std::vector<double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnequalGssDesign>) return v.pi;
            else if constexpr (std::is_same_v<T, Lpm1Design>) return v.pi;
            else
                return std::vector<double>(static_cast<std::size_t>(N),
                                           static_cast<double>(sample_size(d)) / N);
        },
        d);
}

inline bool is_sequence_design(const Design& d) { return std::holds_alternative<UnequalGssDesign>(d); }

/// Draw-ready design: walk designs carry their prepared pair chain, cycle
/// designs their traversal order. Immutable and safe to share across
/// replicate threads.
class PreparedDesign {
  public:
    explicit PreparedDesign(Design d) : d_(std::move(d)) {
        if (const auto* e = std::get_if<EpssworDesign>(&d_)) {
            order_ = cycle_order(e->cycle);
            if (e->n < 1 || e->n > e->cycle.n_nodes())
                throw std::invalid_argument("epsswor_gss: need 1 <= n <= N");
        } else if (const auto* u = std::get_if<UnequalGssDesign>(&d_)) {
            if (u->m < 1) throw std::invalid_argument("gss_sequence: m must be >= 1");
            chain_.emplace(make_gss_chain(u->g, u->pi, u->r, u->w));
        }
    }

    const Design& design() const { return d_; }
    const PairChain* chain() const { return chain_ ? &*chain_ : nullptr; }

    Sample draw(Rng& rng) const {
        return std::visit(
            [&](const auto& v) -> Sample {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, SrsworDesign>) return srswor(v.n_pop, v.n, rng);
                else if constexpr (std::is_same_v<T, SystematicDesign>)
                    return v.circular ? systematic_circular(v.order, v.n, rng)
                                      : systematic_path(v.order, v.n, rng);
                else if constexpr (std::is_same_v<T, EpssworDesign>) return epsswor_gss(order_, v.n, rng);
                else if constexpr (std::is_same_v<T, UnequalGssDesign>) return gss_sequence(*chain_, v.m, rng);
                else return lpm1(v.coords, v.pi, rng);
            },
            d_);
    }

  private:
    Design d_;
    std::optional<PairChain> chain_;
    std::vector<int> order_;
};

inline bool is_enumerable(const Design& d) {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            return std::is_same_v<T, SrsworDesign> || std::is_same_v<T, SystematicDesign> ||
                   std::is_same_v<T, EpssworDesign>;
        },
        d);
}

/// Exhaustive sample space with probabilities summing to 1. Rejects
/// non-enumerable kinds (walk sequences, LPM1) and oversized SRSWoR spaces.
inline std::vector<std::pair<Sample, double>> sample_space(const Design& d) {
    constexpr std::size_t kMaxSpace = 2000000;
    if (const auto* s = std::get_if<SrsworDesign>(&d)) {
        // enumerate combinations
        double c = 1.0;
        for (int k = 1; k <= s->n; ++k) c = c * (s->n_pop - s->n + k) / k;
        if (c > static_cast<double>(kMaxSpace))
            throw std::invalid_argument("sample_space: SRSWoR space too large; use Monte Carlo");
        std::vector<std::pair<Sample, double>> out;
        std::vector<int> comb(static_cast<std::size_t>(s->n));
        for (int k = 0; k < s->n; ++k) comb[k] = k + 1;
        const double prob = 1.0 / c;
        for (;;) {
            out.push_back({Sample{comb}, prob});
            int i = s->n - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == s->n_pop - (s->n - 1 - i)) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < s->n; ++k) comb[static_cast<std::size_t>(k)] = comb[static_cast<std::size_t>(k - 1)] + 1;
        }
        return out;
    }
    if (const auto* sys = std::get_if<SystematicDesign>(&d)) {
        const int N = static_cast<int>(sys->order.size());
        const int n = sys->n;
        if (!sys->circular) {
            if (N % n != 0)
                throw std::invalid_argument("sample_space: path systematic requires N divisible by n");
            const int interval = N / n;
            std::vector<std::pair<Sample, double>> out;
            for (int start = 0; start < interval; ++start) {
                Sample smp;
                for (int k = 0; k < n; ++k)
                    smp.units.push_back(sys->order[static_cast<std::size_t>(start + k * interval)]);
                out.push_back({smp, 1.0 / interval});
            }
            return out;
        }
        // circular: the selected position set is a step function of v; cut
        // [0, N) at every point where floor(v + k N/n) increments
        std::vector<double> cuts{0.0, static_cast<double>(N)};
        for (int k = 0; k < n; ++k)
            for (int t = 0; t <= N; ++t) {
                double v = t - k * static_cast<double>(N) / n;
                v = std::fmod(std::fmod(v, N) + N, N);
                cuts.push_back(v);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                   cuts.end());
        std::map<std::vector<int>, double> mass;
        std::map<std::vector<int>, Sample> rep;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double v = 0.5 * (cuts[c] + cuts[c + 1]);
            Sample smp;
            for (int k = 0; k < n; ++k) {
                int pos = static_cast<int>(std::floor(v + k * static_cast<double>(N) / n)) % N;
                smp.units.push_back(sys->order[static_cast<std::size_t>(pos)]);
            }
            auto key = distinct_units(smp);
            mass[key] += (cuts[c + 1] - cuts[c]) / N;
            rep.emplace(key, smp);
        }
        std::vector<std::pair<Sample, double>> out;
        for (const auto& [key, p] : mass) out.push_back({rep.at(key), p});
        return out;
    }
    if (const auto* e = std::get_if<EpssworDesign>(&d)) {
        const std::vector<int> order = cycle_order(e->cycle);
        const int N = static_cast<int>(order.size());
        if (e->n < 1 || e->n > N) throw std::invalid_argument("sample_space: need 1 <= n <= N");
        if (e->n == N) return {{Sample{order}, 1.0}};
        std::vector<std::pair<Sample, double>> out;
        for (int start = 0; start < N; ++start) {
            Sample smp;
            for (int k = 0; k < e->n; ++k)
                smp.units.push_back(order[static_cast<std::size_t>((start + k) % N)]);
            out.push_back({smp, 1.0 / N});
        }
        return out;
    }
    throw std::invalid_argument("sample_space: design is not enumerable; use Monte Carlo");
}

}  // namespace gss
