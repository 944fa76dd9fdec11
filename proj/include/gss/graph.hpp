#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gss {

/// Simple undirected graph over nodes 1..N with sorted adjacency lists.
/// Immutable after construction; cheap to copy for small N, safe to share
/// across threads read-only.
class Graph {
  public:
    Graph() = default;

    /// Validates and builds: node ids in 1..n_nodes, no loops, duplicate
    /// edges collapsed.
    static Graph from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges) {
        if (n_nodes < 1) throw std::invalid_argument("Graph: n_nodes must be >= 1");
        Graph g;
        g.adj_.assign(static_cast<std::size_t>(n_nodes), {});
        for (const auto& [a, b] : edges) {
            if (a < 1 || a > n_nodes || b < 1 || b > n_nodes)
                throw std::invalid_argument("Graph: node id out of range 1..N");
            if (a == b) throw std::invalid_argument("Graph: loop edge rejected");
            g.adj_[a - 1].push_back(b);
            g.adj_[b - 1].push_back(a);
        }
        for (auto& nb : g.adj_) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
        return g;
    }

    int n_nodes() const { return static_cast<int>(adj_.size()); }

    int degree(int i) const { return static_cast<int>(at(i).size()); }

    const std::vector<int>& neighbors(int i) const { return at(i); }

    bool has_edge(int i, int j) const {
        const auto& nb = at(i);
        return std::binary_search(nb.begin(), nb.end(), j);
    }

    int min_degree() const {
        int m = n_nodes() == 0 ? 0 : degree(1);
        for (int i = 2; i <= n_nodes(); ++i) m = std::min(m, degree(i));
        return m;
    }

    bool is_regular(int k) const {
        for (int i = 1; i <= n_nodes(); ++i)
            if (degree(i) != k) return false;
        return true;
    }

    bool is_connected() const {
        const int n = n_nodes();
        if (n == 0) return false;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::queue<int> q;
        q.push(1);
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : neighbors(v))
                if (!seen[w - 1]) {
                    seen[w - 1] = 1;
                    ++cnt;
                    q.push(w);
                }
        }
        return cnt == n;
    }

    /// Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= n_nodes(); ++i)
            for (int j : at(i))
                if (i < j) e.emplace_back(i, j);
        return e;
    }

    std::size_t edge_count() const {
        std::size_t tot = 0;
        for (const auto& nb : adj_) tot += nb.size();
        return tot / 2;
    }

    /// Exchange format: first line "N", then one "i j" per line, 1-based, i<j.
    void write_edge_list(std::ostream& os) const {
        os << n_nodes() << "\n";
        for (const auto& [i, j] : edges()) os << i << " " << j << "\n";
    }

    static Graph read_edge_list(std::istream& is) {
        int n = 0;
        if (!(is >> n)) throw std::invalid_argument("edge list: missing node count");
        std::vector<std::pair<int, int>> e;
        int a, b;
        while (is >> a >> b) e.emplace_back(a, b);
        return from_edges(n, e);
    }

  private:
    const std::vector<int>& at(int i) const {
        if (i < 1 || i > n_nodes()) throw std::invalid_argument("Graph: node id out of range");
        return adj_[static_cast<std::size_t>(i - 1)];
    }
    std::vector<std::vector<int>> adj_;
};

/// Row-major numbering of an R x C grid: id(row, col) = (row-1)*C + col.
struct GridLayout {
    int rows = 0;
    int cols = 0;

    GridLayout(int r, int c) : rows(r), cols(c) {
        if (r < 1 || c < 1) throw std::invalid_argument("GridLayout: rows/cols must be >= 1");
    }

    int size() const { return rows * cols; }

    int id(int row, int col) const {
        if (row < 1 || row > rows || col < 1 || col > cols)
            throw std::invalid_argument("GridLayout: cell out of range");
        return (row - 1) * cols + col;
    }

    std::pair<int, int> row_col(int node) const {
        if (node < 1 || node > size()) throw std::invalid_argument("GridLayout: id out of range");
        return {(node - 1) / cols + 1, (node - 1) % cols + 1};
    }
};

/// Rook contiguity: horizontal/vertical grid neighbours are edges.
/// Edge count is rows*(cols-1) + cols*(rows-1).
inline Graph rook_contiguity(const GridLayout& layout) {
    if (layout.rows < 2 || layout.cols < 2)
        throw std::invalid_argument("rook_contiguity: needs rows, cols >= 2");
    std::vector<std::pair<int, int>> e;
    for (int r = 1; r <= layout.rows; ++r)
        for (int c = 1; c <= layout.cols; ++c) {
            if (c < layout.cols) e.emplace_back(layout.id(r, c), layout.id(r, c + 1));
            if (r < layout.rows) e.emplace_back(layout.id(r, c), layout.id(r + 1, c));
        }
    return Graph::from_edges(layout.size(), e);
}

/// 2-regular graph whose single cycle visits nodes in the given order.
inline Graph cycle_from_order(const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    if (n < 3) throw std::invalid_argument("cycle_from_order: need N >= 3");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : order) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("cycle_from_order: order is not a permutation of 1..N");
        seen[v - 1] = 1;
    }
    std::vector<std::pair<int, int>> e;
    for (int k = 0; k < n; ++k) e.emplace_back(order[k], order[(k + 1) % n]);
    return Graph::from_edges(n, e);
}

/// Edge (i, j) present iff absent in g, i != j.
inline Graph complement_graph(const Graph& g) {
    const int n = g.n_nodes();
    if (n < 3) throw std::invalid_argument("complement_graph: need N >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!g.has_edge(i, j)) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

/// True iff the edge sets are disjoint (same node set required).
inline bool is_noncontiguous_wrt(const Graph& g, const Graph& contiguity) {
    if (g.n_nodes() != contiguity.n_nodes())
        throw std::invalid_argument("is_noncontiguous_wrt: node-count mismatch");
    for (const auto& [i, j] : g.edges())
        if (contiguity.has_edge(i, j)) return false;
    return true;
}

/// Cyclic visiting order of a connected 2-regular graph, starting at node 1.
inline std::vector<int> cycle_order(const Graph& g) {
    const int n = g.n_nodes();
    if (n < 3 || !g.is_regular(2)) throw std::invalid_argument("cycle_order: graph is not 2-regular");
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    int prev = 0, cur = 1;
    do {
        order.push_back(cur);
        const auto& nb = g.neighbors(cur);
        int nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    } while (cur != 1 && static_cast<int>(order.size()) <= n);
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("cycle_order: graph is not a single connected cycle");
    return order;
}

}  // namespace gss
