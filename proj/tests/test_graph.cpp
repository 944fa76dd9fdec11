#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "gss/cycle_enum.hpp"
#include "gss/graph.hpp"
#include "gss/graph_build.hpp"
#include "gss/rng.hpp"

using namespace gss;

namespace {
const std::vector<int> kG4Order{3, 9, 2, 8, 4, 6, 7, 5, 1};
}

TEST_CASE("build_graph validates and collapses", "[graph]") {
    Graph tri = Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}});
    REQUIRE(tri.n_nodes() == 3);
    REQUIRE(tri.is_regular(2));

    Graph dup = Graph::from_edges(3, {{1, 2}, {2, 1}, {1, 2}, {2, 3}});
    REQUIRE(dup.edge_count() == 2);

    Graph tiny = Graph::from_edges(2, {{1, 2}});
    REQUIRE(tiny.min_degree() == 1);  // allowed here; the walker rejects it

    REQUIRE_THROWS_AS(Graph::from_edges(3, {{1, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph::from_edges(3, {{1, 4}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph::from_edges(3, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("graphs are symmetric and loop-free by construction", "[graph]") {
    Rng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        int n = rng.uniform_int(3, 15);
        std::vector<std::pair<int, int>> e;
        for (int k = 0; k < 2 * n; ++k) {
            int a = rng.uniform_int(1, n), b = rng.uniform_int(1, n);
            if (a != b) e.emplace_back(a, b);
        }
        Graph g = Graph::from_edges(n, e);
        for (int i = 1; i <= n; ++i)
            for (int j : g.neighbors(i)) {
                REQUIRE(i != j);
                REQUIRE(g.has_edge(j, i));
            }
    }
}

TEST_CASE("rook contiguity on grids", "[graph]") {
    Graph g33 = rook_contiguity(GridLayout(3, 3));
    REQUIRE(g33.edge_count() == 12);
    std::multiset<int> degs;
    for (int i = 1; i <= 9; ++i) degs.insert(g33.degree(i));
    REQUIRE(degs == std::multiset<int>{2, 2, 2, 2, 3, 3, 3, 3, 4});
    REQUIRE(g33.degree(5) == 4);  // centre under row-major numbering

    // a uniformly random distinct pair is contiguous w.p. 12/36 = 1/3
    REQUIRE(12.0 / 36.0 == Catch::Approx(1.0 / 3.0));

    Graph g22 = rook_contiguity(GridLayout(2, 2));
    REQUIRE(g22.edge_count() == 4);
    REQUIRE(g22.is_regular(2));

    Graph g20 = rook_contiguity(GridLayout(20, 20));
    REQUIRE(g20.edge_count() == 760);
    // cross-check by explicit enumeration over all pairs
    GridLayout layout(20, 20);
    std::size_t count = 0;
    for (int a = 1; a <= 400; ++a)
        for (int b = a + 1; b <= 400; ++b) {
            auto [ra, ca] = layout.row_col(a);
            auto [rb, cb] = layout.row_col(b);
            if (std::abs(ra - rb) + std::abs(ca - cb) == 1) ++count;
        }
    REQUIRE(count == 760);

    REQUIRE_THROWS_AS(rook_contiguity(GridLayout(1, 5)), std::invalid_argument);
}

TEST_CASE("cycle_from_order and the pinned 9-node cycle", "[graph]") {
    Graph tri = cycle_from_order({1, 2, 3});
    REQUIRE(tri.is_regular(2));
    REQUIRE(tri.edge_count() == 3);

    Graph rook = rook_contiguity(GridLayout(3, 3));
    Graph g4 = cycle_from_order(kG4Order);
    REQUIRE(g4.is_regular(2));
    REQUIRE(g4.is_connected());
    REQUIRE(is_noncontiguous_wrt(g4, rook));  // every cycle edge non-contiguous

    REQUIRE_THROWS_AS(cycle_from_order({1, 2, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(cycle_from_order({1, 2}), std::invalid_argument);
}

TEST_CASE("complement_graph", "[graph]") {
    Graph rook = rook_contiguity(GridLayout(3, 3));
    Graph comp = complement_graph(rook);
    REQUIRE(comp.edge_count() == 24);
    REQUIRE(comp.degree(1) == 6);  // corner: 8 - 2
    REQUIRE(comp.degree(5) == 4);  // centre: 8 - 4
    REQUIRE(is_noncontiguous_wrt(comp, rook));

    Graph k4 = Graph::from_edges(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    REQUIRE(complement_graph(k4).edge_count() == 0);
    Graph tri = cycle_from_order({1, 2, 3});
    REQUIRE(complement_graph(tri).edge_count() == 0);
}

TEST_CASE("is_noncontiguous_wrt", "[graph]") {
    Graph rook = rook_contiguity(GridLayout(3, 3));
    REQUIRE_FALSE(is_noncontiguous_wrt(rook, rook));
    Graph empty = Graph::from_edges(9, {});
    REQUIRE(is_noncontiguous_wrt(empty, rook));
    REQUIRE_THROWS_AS(is_noncontiguous_wrt(empty, Graph::from_edges(4, {})), std::invalid_argument);
}

TEST_CASE("cycle_order traversal", "[graph]") {
    Graph g4 = cycle_from_order(kG4Order);
    auto order = cycle_order(g4);
    REQUIRE(order.size() == 9);
    REQUIRE(cycle_from_order(order).edges() == g4.edges());

    // two disjoint triangles: 2-regular but not a single cycle
    Graph two = Graph::from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    REQUIRE_THROWS_AS(cycle_order(two), std::invalid_argument);
    REQUIRE_THROWS_AS(cycle_order(rook_contiguity(GridLayout(3, 3))), std::invalid_argument);
}

TEST_CASE("edge list round trip", "[graph]") {
    Graph g = cycle_from_order(kG4Order);
    std::stringstream ss;
    g.write_edge_list(ss);
    Graph back = Graph::read_edge_list(ss);
    REQUIRE(back.n_nodes() == g.n_nodes());
    REQUIRE(back.edges() == g.edges());
}

TEST_CASE("recursive partition labels and sizes", "[graph]") {
    auto p8 = recursive_partition_order(GridLayout(8, 8), 4);
    REQUIRE(p8.parts.size() == 16);
    for (const auto& part : p8.parts) REQUIRE(part.size() == 4);

    auto p20 = recursive_partition_order(GridLayout(20, 20), 4);
    REQUIRE(p20.parts.size() == 16);
    for (const auto& part : p20.parts) REQUIRE(part.size() == 25);

    auto p2 = recursive_partition_order(GridLayout(2, 2), 2);
    REQUIRE(p2.parts.size() == 4);
    for (const auto& part : p2.parts) REQUIRE(part.size() == 1);

    // every part is one contiguous block of the grid
    GridLayout layout(8, 8);
    for (const auto& part : p8.parts) {
        int rmin = 9, rmax = 0, cmin = 9, cmax = 0;
        for (int node : part) {
            auto [r, c] = layout.row_col(node);
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        REQUIRE(rmax - rmin == 1);
        REQUIRE(cmax - cmin == 1);
        REQUIRE(part.size() == 4);
    }

    REQUIRE_THROWS_AS(recursive_partition_order(GridLayout(6, 6), 4), std::invalid_argument);
    REQUIRE_THROWS_AS(recursive_partition_order(GridLayout(9, 9), 3), std::invalid_argument);
}

TEST_CASE("recursive 2-regular construction is non-contiguous", "[graph]") {
    Rng rng(7);
    GridLayout l20(20, 20);
    Graph rook20 = rook_contiguity(l20);
    Graph g6 = build_2regular_recursive(l20, 4, rook20, rng);
    REQUIRE(g6.is_regular(2));
    REQUIRE(g6.is_connected());
    REQUIRE(g6.n_nodes() == 400);
    REQUIRE(is_noncontiguous_wrt(g6, rook20));

    GridLayout l8(8, 8);
    Graph rook8 = rook_contiguity(l8);
    Graph g8 = build_2regular_recursive(l8, 4, rook8, rng);
    REQUIRE(g8.is_regular(2));
    REQUIRE(g8.is_connected());
    REQUIRE(is_noncontiguous_wrt(g8, rook8));

    GridLayout l3(3, 3);
    REQUIRE_THROWS(build_2regular_recursive(l3, 2, rook_contiguity(l3), rng));
}

TEST_CASE("point-reflection graph on the 20x20 grid", "[graph]") {
    Rng rng(11);
    GridLayout layout(20, 20);
    Graph g7 = build_g7(layout, rng);
    REQUIRE(g7.is_regular(2));
    REQUIRE(g7.is_connected());
    // unit (1,1) adjacent to (20,20) by reflection; (10,10) to (11,11)
    REQUIRE(g7.has_edge(layout.id(1, 1), layout.id(20, 20)));
    REQUIRE(g7.has_edge(layout.id(10, 10), layout.id(11, 11)));

    REQUIRE_THROWS_AS(build_g7(GridLayout(8, 8), rng), std::invalid_argument);
}

TEST_CASE("exhaustive non-contiguous cycle enumeration", "[graph]") {
    // without any constraint the number of distinct 9-cycles is 8!/2
    Graph empty9 = Graph::from_edges(9, {});
    auto all = enumerate_noncontiguous_cycles(empty9);
    REQUIRE(all.size() == 20160);

    // canonical dedup: every emitted cycle appears exactly once
    std::set<std::vector<int>> keys;
    Graph rook = rook_contiguity(GridLayout(3, 3));
    auto qualifying = enumerate_noncontiguous_cycles(rook);
    for (const auto& g : qualifying) {
        REQUIRE(is_noncontiguous_wrt(g, rook));
        keys.insert(canonical_cycle(cycle_order(g)));
    }
    REQUIRE(keys.size() == qualifying.size());

    // the pinned 9-cycle is among them
    auto g4key = canonical_cycle(kG4Order);
    REQUIRE(keys.count(g4key) == 1);

    // complete contiguity leaves nothing
    Graph k4 = Graph::from_edges(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    REQUIRE(enumerate_noncontiguous_cycles(k4).empty());
}

TEST_CASE("sampled cycle mode dedups and respects the constraint", "[graph]") {
    Rng rng(5);
    Graph rook = rook_contiguity(GridLayout(4, 4));
    auto got = sample_noncontiguous_cycles(rook, 25, 20000, rng);
    REQUIRE(!got.empty());
    std::set<std::vector<int>> keys;
    for (const auto& g : got) {
        REQUIRE(g.is_regular(2));
        REQUIRE(is_noncontiguous_wrt(g, rook));
        keys.insert(canonical_cycle(cycle_order(g)));
    }
    REQUIRE(keys.size() == got.size());
}
