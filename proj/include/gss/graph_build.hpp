#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gss/graph.hpp"
#include "gss/rng.hpp"

namespace gss {

/// Recursive 2x2 quadrant partition of a grid into parts_per_side^2 parts.
/// parts[label] holds the node ids of one part in row-major order.
struct RecursivePartition {
    int parts_per_side = 0;
    std::vector<std::vector<int>> parts;
};

namespace detail {
inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

/// Quadrant address of part (pr, pc), most significant level first:
/// at each level the digit is 2*(row bit) + (col bit).
inline int quadrant_label(int pr, int pc, int parts_per_side) {
    int label = 0;
    for (int half = parts_per_side / 2; half >= 1; half /= 2) {
        int digit = 2 * (pr / half) + (pc / half);
        label = label * 4 + digit;
        pr %= half;
        pc %= half;
    }
    return label;
}
}  // namespace detail

inline RecursivePartition recursive_partition_order(const GridLayout& layout, int parts_per_side) {
    if (!detail::is_power_of_two(parts_per_side) || parts_per_side < 2)
        throw std::invalid_argument("recursive_partition_order: parts_per_side must be a power of two >= 2");
    if (layout.rows % parts_per_side != 0 || layout.cols % parts_per_side != 0)
        throw std::invalid_argument("recursive_partition_order: rows and cols must be divisible by parts_per_side");

    const int part_rows = layout.rows / parts_per_side;
    const int part_cols = layout.cols / parts_per_side;
    RecursivePartition p;
    p.parts_per_side = parts_per_side;
    p.parts.assign(static_cast<std::size_t>(parts_per_side) * parts_per_side, {});
    for (int r = 1; r <= layout.rows; ++r)
        for (int c = 1; c <= layout.cols; ++c) {
            int label = detail::quadrant_label((r - 1) / part_rows, (c - 1) / part_cols, parts_per_side);
            p.parts[static_cast<std::size_t>(label)].push_back(layout.id(r, c));
        }
    return p;
}

/// Non-contiguous 2-regular cycle from the recursive partition: nodes at the
/// same relative position within their part form a class (one node per part,
/// mutually non-contiguous because parts are at least 2 cells wide); each
/// class is chained in random order and the class chains are linked in a
/// cycle by edges chosen non-contiguous, re-drawing on a dead end.
inline Graph build_2regular_recursive(const GridLayout& layout, int parts_per_side,
                                      const Graph& contiguity, Rng& rng) {
    if (contiguity.n_nodes() != layout.size())
        throw std::invalid_argument("build_2regular_recursive: contiguity node count mismatch");
    if (!detail::is_power_of_two(parts_per_side) || parts_per_side < 2)
        throw std::invalid_argument("build_2regular_recursive: parts_per_side must be a power of two >= 2");
    if (layout.rows % parts_per_side != 0 || layout.cols % parts_per_side != 0)
        throw std::invalid_argument("build_2regular_recursive: rows and cols must be divisible by parts_per_side");
    const int part_rows = layout.rows / parts_per_side;
    const int part_cols = layout.cols / parts_per_side;
    if (part_rows < 2 || part_cols < 2)
        throw std::invalid_argument("build_2regular_recursive: parts too small to avoid contiguity (need part side >= 2)");

    // class id = relative position within a part; members ordered by part label
    const RecursivePartition part = recursive_partition_order(layout, parts_per_side);
    const int n_classes = part_rows * part_cols;
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(n_classes));
    for (const auto& members : part.parts)
        for (int node : members) {
            auto [r, c] = layout.row_col(node);
            int cls = ((r - 1) % part_rows) * part_cols + ((c - 1) % part_cols);
            classes[static_cast<std::size_t>(cls)].push_back(node);
        }

    constexpr int kMaxRetries = 1000;
    int retries = 0;
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(layout.size()));
    for (int cls = 0; cls < n_classes; ++cls) {
        std::vector<int> chain = classes[static_cast<std::size_t>(cls)];
        const bool last = (cls == n_classes - 1);
        for (;;) {
            rng.shuffle(chain);
            bool entry_ok = order.empty() || !contiguity.has_edge(order.back(), chain.front());
            bool exit_ok = !last || !contiguity.has_edge(chain.back(), order.front());
            if (entry_ok && exit_ok) break;
            if (++retries > kMaxRetries)
                throw std::runtime_error("build_2regular_recursive: dead end after " +
                                         std::to_string(retries) + " retries");
        }
        order.insert(order.end(), chain.begin(), chain.end());
    }
    return cycle_from_order(order);
}

/// 20x20 point-reflection graph: unit (r1, r2) is adjacent to
/// (21-r1, 21-r2); additionally the two left-half quadrants are joined by a
/// random perfect matching, likewise the right-half quadrants. Matchings are
/// re-drawn until the 2-regular result is a single connected cycle.
inline Graph build_g7(const GridLayout& layout, Rng& rng) {
    if (layout.rows != 20 || layout.cols != 20)
        throw std::invalid_argument("build_g7: layout must be exactly 20x20");
    const int L = 20;
    auto id = [&](int r1, int r2) { return layout.id(r1, r2); };

    std::vector<std::pair<int, int>> reflect;
    for (int r1 = 1; r1 <= L; ++r1)
        for (int r2 = 1; r2 <= L; ++r2) {
            int a = id(r1, r2), b = id(L - r1 + 1, L - r2 + 1);
            if (a < b) reflect.emplace_back(a, b);
        }

    // quadrants by (r1 half, r2 half); matching joins quadrants that are not
    // reflection partners, so no duplicate edge can arise
    std::vector<int> q00, q01, q10, q11;
    for (int r1 = 1; r1 <= L; ++r1)
        for (int r2 = 1; r2 <= L; ++r2) {
            (r1 <= L / 2 ? (r2 <= L / 2 ? q00 : q01) : (r2 <= L / 2 ? q10 : q11)).push_back(id(r1, r2));
        }

    constexpr int kMaxAttempts = 1000000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<int> m01 = q01, m11 = q11;
        rng.shuffle(m01);
        rng.shuffle(m11);
        std::vector<std::pair<int, int>> e = reflect;
        for (std::size_t k = 0; k < q00.size(); ++k) e.emplace_back(q00[k], m01[k]);
        for (std::size_t k = 0; k < q10.size(); ++k) e.emplace_back(q10[k], m11[k]);
        Graph g = Graph::from_edges(layout.size(), e);
        if (g.is_regular(2) && g.is_connected()) return g;
    }
    throw std::runtime_error("build_g7: failed to draw a connected matching");
}

}  // namespace gss
