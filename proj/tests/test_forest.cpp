#include <algorithm>
#include <map>
#include <numeric>

#include "ddfa/error.hpp"
#include "ddfa/forest.hpp"
#include "ddfa/graph.hpp"
#include "ddfa/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ddfa;

namespace {

std::int64_t forest_weight(const WeightedGraph& graph, const SpanningForest& forest) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int32_t> weights;
    for (const auto& e : graph.edges) weights[{e.u, e.v}] = e.weight;
    std::int64_t total = 0;
    for (auto [u, v] : forest.edges) {
        auto it = weights.find({std::min(u, v), std::max(u, v)});
        REQUIRE(it != weights.end());
        total += it->second;
    }
    return total;
}

WeightedGraph path_graph(std::uint32_t n) {
    WeightedGraph g;
    g.node_count = n;
    for (std::uint32_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1});
    return g;
}

SpanningForest forest_of_edges(std::uint32_t n,
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    return SpanningForest{n, std::move(edges)};
}

std::uint32_t cut_count(const SpanningForest& input, const Forest& output) {
    // Edges removed = input edges - surviving parent edges.
    std::size_t surviving = 0;
    for (std::uint32_t u = 0; u < output.parent.size(); ++u)
        surviving += output.parent[u] != Forest::kNoParent;
    return static_cast<std::uint32_t>(input.edges.size() - surviving);
}

SpanningForest forest_from_parents(const Forest& f) {
    SpanningForest out;
    out.node_count = static_cast<std::uint32_t>(f.node_count());
    for (std::uint32_t u = 0; u < f.node_count(); ++u)
        if (f.parent[u] != Forest::kNoParent) out.edges.emplace_back(u, f.parent[u]);
    return out;
}

}  // namespace

TEST_CASE("kruskal_mst on the toy SRG") {
    WeightedGraph srg = build_srg(oracles::toy_t1());
    SpanningForest f = kruskal_mst(srg);
    REQUIRE(f.edges.size() == 3);
    // Deterministic order: weight desc, then ids: (0,3) w2, (0,1), (0,2).
    CHECK(f.edges[0] == std::make_pair(0u, 3u));
    CHECK(f.edges[1] == std::make_pair(0u, 1u));
    CHECK(f.edges[2] == std::make_pair(0u, 2u));
    CHECK(forest_weight(srg, f) == 4);
    // Exhaustive enumeration over all spanning trees agrees.
    CHECK(oracles::max_spanning_forest_weight(4, srg.edges) == 4);
}

TEST_CASE("kruskal_mst equals the exhaustive oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        std::uint32_t n = 2 + std::uint32_t(seed % 8);  // up to 9
        WeightedGraph g = oracles::random_graph(n, 0.55, 12, seed);
        std::int64_t got = forest_weight(g, kruskal_mst(g));
        CHECK(got == oracles::max_spanning_forest_weight(n, g.edges));
    }
}

TEST_CASE("kruskal_mst trivia") {
    WeightedGraph empty;
    empty.node_count = 1;
    SpanningForest f = kruskal_mst(empty);
    CHECK(f.edges.empty());
    Forest rooted = root_and_direct(f);
    CHECK(rooted.roots == std::vector<std::uint32_t>{0});
}

TEST_CASE("central_node") {
    SUBCASE("path midpoint") {
        CHECK(central_node(forest_of_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})) == 2);
    }
    SUBCASE("star hub") {
        CHECK(central_node(forest_of_edges(5, {{3, 0}, {3, 1}, {3, 2}, {3, 4}})) == 3);
    }
    SUBCASE("toy MST center") {
        SpanningForest f = kruskal_mst(build_srg(oracles::toy_t1()));
        CHECK(central_node(f) == 0);
    }
    SUBCASE("two centers tie to the smaller id") {
        // path 0-1-2-3: centers are 1 and 2.
        CHECK(central_node(forest_of_edges(4, {{0, 1}, {1, 2}, {2, 3}})) == 1);
    }
    SUBCASE("disconnected input throws") {
        CHECK_THROWS_AS(central_node(forest_of_edges(4, {{0, 1}, {2, 3}})), InputError);
    }
}

TEST_CASE("kruskal_bounded_diameter") {
    SUBCASE("toy SRG with delta 2 keeps the whole star") {
        WeightedGraph srg = build_srg(oracles::toy_t1());
        SpanningForest f = kruskal_bounded_diameter(srg, 2);
        CHECK(f.edges.size() == 3);
        CHECK(forest_weight(srg, f) == 4);
        auto diams = tree_diameters(f);
        for (auto d : diams) CHECK(d <= 2);
    }
    SUBCASE("delta 0 keeps nothing") {
        WeightedGraph g = oracles::random_graph(8, 0.8, 9, 3);
        CHECK(kruskal_bounded_diameter(g, 0).edges.empty());
    }
    SUBCASE("slack delta matches the unconstrained weight") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            std::uint32_t n = 3 + std::uint32_t(seed % 7);
            WeightedGraph g = oracles::random_graph(n, 0.6, 10, seed * 31);
            std::int64_t bounded = forest_weight(g, kruskal_bounded_diameter(g, n));
            std::int64_t plain = forest_weight(g, kruskal_mst(g));
            CHECK(bounded == plain);
        }
    }
    SUBCASE("every output tree respects the bound") {
        for (std::uint64_t seed = 1; seed <= 15; ++seed)
            for (std::uint32_t delta : {1u, 2u, 3u, 5u}) {
                WeightedGraph g = oracles::random_graph(12, 0.4, 6, seed * 7 + delta);
                auto diams = tree_diameters(kruskal_bounded_diameter(g, delta));
                for (auto d : diams) CHECK(d <= delta);
            }
    }
}

TEST_CASE("prim_penalized") {
    SUBCASE("uniform star stays a star") {
        WeightedGraph g;
        g.node_count = 5;
        for (std::uint32_t v = 1; v < 5; ++v) g.edges.push_back({0, v, 7});
        PrimTree t = prim_penalized(g, 0);
        CHECK(t.tree.edges.size() == 4);
        for (std::uint32_t v = 1; v < 5; ++v) CHECK(t.depth[v] == 1);
    }
    SUBCASE("depth penalty beats raw similarity on the triangle") {
        // (v0,a) w5, (v0,b) w5, (a,b) w6: a joins at depth 1 (eff 3);
        // then (a,b) eff 6-4=2 < (v0,b) eff 3, so b attaches to v0.
        WeightedGraph g;
        g.node_count = 3;
        g.edges = {{0, 1, 5}, {0, 2, 5}, {1, 2, 6}};
        PrimTree t = prim_penalized(g, 0);
        REQUIRE(t.tree.edges.size() == 2);
        CHECK(t.tree.edges[0] == std::make_pair(0u, 1u));
        CHECK(t.tree.edges[1] == std::make_pair(0u, 2u));
        CHECK(t.depth[1] == 1);
        CHECK(t.depth[2] == 1);
    }
    SUBCASE("without the penalty Prim matches Kruskal's weight") {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            std::uint32_t n = 2 + std::uint32_t(seed % 8);
            WeightedGraph g = oracles::random_graph(n, 0.7, 15, seed * 13);
            // make sure it is connected: add a zero-weight path
            for (std::uint32_t i = 0; i + 1 < n; ++i) {
                bool present = false;
                for (const auto& e : g.edges)
                    if (e.u == i && e.v == i + 1) present = true;
                if (!present) g.edges.push_back({i, i + 1, 0});
            }
            std::int64_t prim_w = forest_weight(g, prim_mst(g, 0).tree);
            std::int64_t kruskal_w = forest_weight(g, kruskal_mst(g));
            CHECK(prim_w == kruskal_w);
        }
    }
    SUBCASE("disconnected input throws") {
        WeightedGraph g;
        g.node_count = 3;
        g.edges = {{0, 1, 2}};
        CHECK_THROWS_AS(prim_penalized(g, 0), InputError);
    }
}

TEST_CASE("cut_to_diameter") {
    SUBCASE("path of five with delta 2 cuts exactly once") {
        SpanningForest path = forest_of_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
        Forest out = cut_to_diameter(path, 2);
        CHECK(cut_count(path, out) == 1);
        CHECK(oracles::min_cut_count_for_diameter(5, path.edges, 2) == 1);
        auto diams = tree_diameters(forest_from_parents(out));
        for (auto d : diams) CHECK(d <= 2);
    }
    SUBCASE("slack delta cuts nothing") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto edges = oracles::random_tree(10, seed);
            SpanningForest tree = forest_of_edges(10, edges);
            std::uint32_t diam = tree_diameters(tree)[0];
            Forest out = cut_to_diameter(tree, diam);
            CHECK(cut_count(tree, out) == 0);
        }
    }
    SUBCASE("complete binary tree, delta 2") {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t v = 1; v < 15; ++v) edges.emplace_back((v - 1) / 2, v);
        SpanningForest tree = forest_of_edges(15, edges);
        Forest out = cut_to_diameter(tree, 2);
        CHECK(cut_count(tree, out) ==
              oracles::min_cut_count_for_diameter(15, tree.edges, 2));
        auto diams = tree_diameters(forest_from_parents(out));
        for (auto d : diams) CHECK(d <= 2);
    }
    SUBCASE("matches the exhaustive minimum on random trees") {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            std::uint32_t n = 2 + std::uint32_t(seed % 13);
            SpanningForest tree = forest_of_edges(n, oracles::random_tree(n, seed));
            for (std::uint32_t delta : {1u, 2u, 4u}) {
                Forest out = cut_to_diameter(tree, delta);
                CHECK(cut_count(tree, out) ==
                      oracles::min_cut_count_for_diameter(n, tree.edges, delta));
                auto diams = tree_diameters(forest_from_parents(out));
                for (auto d : diams) CHECK(d <= delta);
            }
        }
    }
    SUBCASE("delta 0 cuts every edge") {
        SpanningForest path = forest_of_edges(4, {{0, 1}, {1, 2}, {2, 3}});
        Forest out = cut_to_diameter(path, 0);
        CHECK(cut_count(path, out) == 3);
        CHECK(out.roots.size() == 4);
    }
}

TEST_CASE("root_and_direct") {
    SUBCASE("path of five roots at the midpoint") {
        Forest f = root_and_direct(forest_of_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
        CHECK(f.roots == std::vector<std::uint32_t>{2});
        CHECK(*std::max_element(f.depth.begin(), f.depth.end()) == 2);
        CHECK(f.parent[2] == Forest::kNoParent);
        CHECK(f.parent[1] == 2);
        CHECK(f.parent[0] == 1);
    }
    SUBCASE("toy MST roots at 0 with unit depths") {
        Forest f = root_and_direct(kruskal_mst(build_srg(oracles::toy_t1())));
        CHECK(f.roots == std::vector<std::uint32_t>{0});
        CHECK(f.depth == std::vector<std::uint32_t>{0, 1, 1, 1});
    }
    SUBCASE("max depth is at most ceil(diameter / 2)") {
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            std::uint32_t n = 2 + std::uint32_t(seed % 14);
            SpanningForest tree = forest_of_edges(n, oracles::random_tree(n, seed * 3));
            std::uint32_t diam = tree_diameters(tree)[0];
            Forest f = root_and_direct(tree);
            std::uint32_t max_depth = *std::max_element(f.depth.begin(), f.depth.end());
            CHECK(max_depth <= (diam + 1) / 2);
        }
    }
    SUBCASE("tree ids track components") {
        Forest f = root_and_direct(forest_of_edges(5, {{0, 1}, {3, 4}}));
        CHECK(f.roots.size() == 3);
        CHECK(f.tree_id[0] == f.tree_id[1]);
        CHECK(f.tree_id[3] == f.tree_id[4]);
        CHECK(f.tree_id[2] != f.tree_id[0]);
        CHECK(f.tree_id[2] != f.tree_id[3]);
    }
}

TEST_CASE("tree diameters are BFS-verified against the brute oracle") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::uint32_t n = 2 + std::uint32_t(seed % 12);
        auto edges = oracles::random_tree(n, seed * 17);
        // Drop one edge to create two components now and then.
        if (seed % 3 == 0 && !edges.empty()) edges.pop_back();
        SpanningForest f = forest_of_edges(n, edges);
        CHECK(tree_diameters(f) == oracles::brute_component_diameters(n, f.edges));
    }
}
