#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ddfa/graph.hpp"

namespace ddfa {

// Undirected spanning forest over nodes [0, node_count), as an edge list.
struct SpanningForest {
    std::uint32_t node_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Root-directed forest: every non-root has exactly one parent, edges point
// toward the root of each tree.
struct Forest {
    static constexpr std::uint32_t kNoParent = 0xffffffffu;

    std::vector<std::uint32_t> parent;   // kNoParent at roots
    std::vector<std::uint32_t> roots;    // one per tree, in discovery order
    std::vector<std::uint32_t> tree_id;  // index into roots
    std::vector<std::uint32_t> depth;    // parent-chain length to the root

    std::size_t node_count() const { return parent.size(); }
};

// Builds a Forest from raw parent pointers (kNoParent marks roots), checking
// acyclicity and filling roots/tree_id/depth. Used by the A-DFA pipelines
// whose defaults are parent pointers by construction.
Forest make_forest(std::vector<std::uint32_t> parent);

// Maximum spanning forest via Kruskal. Deterministic tie-breaks: weight
// descending, then smaller endpoint id, then larger endpoint id. Takes the
// graph by value because the edge list is sorted in place.
SpanningForest kruskal_mst(WeightedGraph graph);

// Node of minimal eccentricity of a connected tree, found by double BFS;
// ties go to the smaller node id. Throws InputError if disconnected.
std::uint32_t central_node(const SpanningForest& tree);

// Kruskal constrained so every tree diameter stays <= delta. Edges that
// would exceed delta are skipped; within an equal-weight group the feasible
// edge whose merge least increases the merged tree's diameter is taken
// first (ties by endpoint ids). Per-node eccentricities are recomputed over
// each merged tree, which is quadratic in the worst case by design.
SpanningForest kruskal_bounded_diameter(WeightedGraph graph, std::uint32_t delta);

struct PrimTree {
    SpanningForest tree;
    std::vector<std::uint32_t> depth;  // distance from v0 at insertion time
};

// Prim from v0 where an edge queued toward candidate v is weighted
// sim - 2^min(depth(v), 40) (saturating). A popped edge whose far endpoint
// already joined is discarded. Requires a connected graph.
PrimTree prim_penalized(const WeightedGraph& graph, std::uint32_t v0);

// Plain maximum-spanning-tree Prim, same tie-breaks, no depth penalty.
PrimTree prim_mst(const WeightedGraph& graph, std::uint32_t v0);

// Removes a minimum number of edges so every component has diameter
// <= delta (bottom-up over an arbitrary rooting), then roots each component
// at its central node and directs edges rootward.
Forest cut_to_diameter(const SpanningForest& tree, std::uint32_t delta);

// Roots every component at its central node, edges directed rootward.
Forest root_and_direct(const SpanningForest& forest);

// BFS-measured diameter of each tree, indexed by discovery order of the
// components (ascending minimum node id). Verification helper.
std::vector<std::uint32_t> tree_diameters(const SpanningForest& forest);

}  // namespace ddfa
