#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "gss/graph.hpp"
#include "gss/rng.hpp"

namespace gss {

/// Canonical representative of a cyclic order under rotation and reflection:
/// the lexicographically smaller of the two traversals starting at node 1.
inline std::vector<int> canonical_cycle(const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    int pos = 0;
    while (pos < n && order[pos] != 1) ++pos;
    if (pos == n) throw std::invalid_argument("canonical_cycle: node 1 missing");
    std::vector<int> fwd(static_cast<std::size_t>(n)), bwd(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        fwd[k] = order[(pos + k) % n];
        bwd[k] = order[(pos - k + n) % n];
    }
    return fwd < bwd ? fwd : bwd;
}

/// All distinct Hamiltonian-cycle graphs on 1..N whose edges avoid the
/// contiguity graph, each yielded exactly once (canonical form). Exhaustive
/// over the (N-1)!/2 cycles; requires N <= 12.
inline std::vector<Graph> enumerate_noncontiguous_cycles(const Graph& contiguity,
                                                         std::size_t limit = SIZE_MAX) {
    const int n = contiguity.n_nodes();
    if (n < 3) throw std::invalid_argument("enumerate_noncontiguous_cycles: need N >= 3");
    if (n > 12)
        throw std::invalid_argument("enumerate_noncontiguous_cycles: exhaustive mode requires N <= 12; use sample_noncontiguous_cycles");
    std::vector<Graph> out;
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    for (int k = 0; k < n - 1; ++k) rest[k] = k + 2;
    do {
        // order = (1, rest...); requiring rest.front() < rest.back() keeps one
        // representative per rotation/reflection class
        if (rest.front() > rest.back()) continue;
        bool ok = !contiguity.has_edge(1, rest.front()) && !contiguity.has_edge(rest.back(), 1);
        for (std::size_t k = 0; ok && k + 1 < rest.size(); ++k)
            ok = !contiguity.has_edge(rest[k], rest[k + 1]);
        if (!ok) continue;
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(n));
        order.push_back(1);
        order.insert(order.end(), rest.begin(), rest.end());
        out.push_back(cycle_from_order(order));
        if (out.size() >= limit) break;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

/// Sampled mode for N > 12: random cycle orders, filtered and deduplicated by
/// canonical form, until `want` distinct graphs or `max_attempts` draws.
inline std::vector<Graph> sample_noncontiguous_cycles(const Graph& contiguity, std::size_t want,
                                                      std::size_t max_attempts, Rng& rng) {
    const int n = contiguity.n_nodes();
    if (n < 3) throw std::invalid_argument("sample_noncontiguous_cycles: need N >= 3");
    std::vector<Graph> out;
    std::set<std::vector<int>> seen;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) order[k] = k + 1;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < want; ++attempt) {
        rng.shuffle(order);
        bool ok = true;
        for (int k = 0; ok && k < n; ++k)
            ok = !contiguity.has_edge(order[k], order[(k + 1) % n]);
        if (!ok) continue;
        auto canon = canonical_cycle(order);
        if (seen.insert(canon).second) out.push_back(cycle_from_order(canon));
    }
    return out;
}

}  // namespace gss
