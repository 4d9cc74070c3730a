#include "ddfa/forest.hpp"

#include <algorithm>
#include <queue>

#include "ddfa/error.hpp"

namespace ddfa {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

class UnionFind {
public:
    explicit UnionFind(std::uint32_t n) : id_(n), size_(n, 1) {
        for (std::uint32_t i = 0; i < n; ++i) id_[i] = i;
    }

    std::uint32_t find(std::uint32_t i) {
        while (i != id_[i]) {
            id_[i] = id_[id_[i]];
            i = id_[i];
        }
        return i;
    }

    // Returns false if already joined.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        id_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::uint32_t> id_;
    std::vector<std::uint32_t> size_;
};

// (weight desc, u asc, v asc); the deterministic Kruskal order.
bool edge_before(const GraphEdge& a, const GraphEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

void sort_edges_desc(std::vector<GraphEdge>& edges) {
    if (edges.size() < 2) return;
    // Dense SRGs arrive in (u, v) order with a small weight range; a stable
    // counting pass is much cheaper than a comparison sort at 1e8 edges.
    bool uv_sorted = std::is_sorted(edges.begin(), edges.end(), [](auto& a, auto& b) {
        return a.u < b.u || (a.u == b.u && a.v < b.v);
    });
    std::int32_t lo = edges[0].weight, hi = edges[0].weight;
    for (const auto& e : edges) {
        lo = std::min(lo, e.weight);
        hi = std::max(hi, e.weight);
    }
    std::int64_t range = std::int64_t(hi) - lo + 1;
    if (uv_sorted && range <= (1 << 20) && edges.size() >= (1u << 16)) {
        std::vector<std::size_t> count(static_cast<std::size_t>(range) + 1, 0);
        for (const auto& e : edges) ++count[hi - e.weight];
        std::size_t offset = 0;
        for (auto& c : count) {
            std::size_t next = offset + c;
            c = offset;
            offset = next;
        }
        std::vector<GraphEdge> out(edges.size());
        for (const auto& e : edges) out[count[hi - e.weight]++] = e;
        edges = std::move(out);
    } else {
        std::sort(edges.begin(), edges.end(), edge_before);
    }
}

std::vector<std::vector<std::uint32_t>> adjacency_of(const SpanningForest& forest) {
    std::vector<std::vector<std::uint32_t>> adj(forest.node_count);
    for (auto [u, v] : forest.edges) {
        if (u >= forest.node_count || v >= forest.node_count || u == v)
            throw InputError("forest: bad edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

// Distances from s across one tree of `adj`; visited nodes are appended to
// `order`.
void bfs_tree(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t s,
              std::vector<std::uint32_t>& dist, std::vector<std::uint32_t>& order) {
    order.clear();
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        std::uint32_t u = order[head];
        for (std::uint32_t x : adj[u])
            if (dist[x] == kUnset) {
                dist[x] = dist[u] + 1;
                order.push_back(x);
            }
    }
}

// Center of the component containing `s`: endpoint of a diameter path, then
// the midpoint of that path; the smaller id when two candidates remain.
std::uint32_t component_center(const std::vector<std::vector<std::uint32_t>>& adj,
                               std::uint32_t s, std::vector<std::uint32_t>& dist,
                               std::vector<std::uint32_t>& order,
                               std::vector<std::uint32_t>& pred) {
    bfs_tree(adj, s, dist, order);
    std::uint32_t a = s;
    for (std::uint32_t x : order)
        if (dist[x] > dist[a] || (dist[x] == dist[a] && x < a)) a = x;
    std::vector<std::uint32_t> component = order;  // reset below
    for (std::uint32_t x : component) dist[x] = kUnset;

    dist[a] = 0;
    pred[a] = a;
    order.clear();
    order.push_back(a);
    for (std::size_t head = 0; head < order.size(); ++head) {
        std::uint32_t u = order[head];
        for (std::uint32_t x : adj[u])
            if (dist[x] == kUnset) {
                dist[x] = dist[u] + 1;
                pred[x] = u;
                order.push_back(x);
            }
    }
    std::uint32_t b = a;
    for (std::uint32_t x : order)
        if (dist[x] > dist[b] || (dist[x] == dist[b] && x < b)) b = x;

    // Walk from b toward a (pred points toward a). The center sits at
    // distance floor(length/2) from b; an odd diameter has two centers,
    // floor and floor+1, and the smaller id wins.
    std::uint32_t length = dist[b];
    std::uint32_t walk = b;
    for (std::uint32_t step = 0; step < length / 2; ++step) walk = pred[walk];
    std::uint32_t center = walk;
    if (length % 2 == 1) center = std::min(walk, pred[walk]);
    for (std::uint32_t x : order) dist[x] = kUnset;
    return center;
}

}  // namespace

Forest make_forest(std::vector<std::uint32_t> parent) {
    const std::uint32_t n = static_cast<std::uint32_t>(parent.size());
    Forest f;
    f.parent = std::move(parent);
    f.depth.assign(n, kUnset);
    f.tree_id.assign(n, kUnset);

    for (std::uint32_t u = 0; u < n; ++u) {
        std::uint32_t p = f.parent[u];
        if (p == u) throw IntegrityError("forest: self-parent at node " + std::to_string(u));
        if (p != Forest::kNoParent && p >= n)
            throw InputError("forest: parent id out of range at node " + std::to_string(u));
    }

    std::vector<std::uint32_t> chain;
    for (std::uint32_t u = 0; u < n; ++u) {
        if (f.depth[u] != kUnset) continue;
        chain.clear();
        std::uint32_t x = u;
        while (f.depth[x] == kUnset && f.parent[x] != Forest::kNoParent) {
            chain.push_back(x);
            x = f.parent[x];
            if (chain.size() > n) throw IntegrityError("forest: cycle in parent pointers");
        }
        if (f.depth[x] == kUnset) f.depth[x] = 0;      // fresh root
        if (f.tree_id[x] == kUnset) f.tree_id[x] = x;  // roots label themselves
        std::uint32_t base_depth = f.depth[x];
        std::uint32_t root = f.tree_id[x];  // root id until relabeled below
        for (std::size_t i = chain.size(); i-- > 0;) {
            f.depth[chain[i]] = ++base_depth;
            f.tree_id[chain[i]] = root;
        }
    }

    // Relabel tree ids as indices into the roots list (ascending root id).
    for (std::uint32_t u = 0; u < n; ++u)
        if (f.parent[u] == Forest::kNoParent) f.roots.push_back(u);
    std::vector<std::uint32_t> index(n, kUnset);
    for (std::uint32_t i = 0; i < f.roots.size(); ++i) index[f.roots[i]] = i;
    for (std::uint32_t u = 0; u < n; ++u) f.tree_id[u] = index[f.tree_id[u]];
    return f;
}

SpanningForest kruskal_mst(WeightedGraph graph) {
    sort_edges_desc(graph.edges);
    UnionFind uf(graph.node_count);
    SpanningForest forest;
    forest.node_count = graph.node_count;
    if (graph.node_count > 0) forest.edges.reserve(graph.node_count - 1);
    for (const auto& e : graph.edges)
        if (uf.unite(e.u, e.v)) forest.edges.emplace_back(e.u, e.v);
    return forest;
}

std::uint32_t central_node(const SpanningForest& tree) {
    if (tree.node_count == 0) throw InputError("central_node: empty tree");
    auto adj = adjacency_of(tree);
    std::vector<std::uint32_t> dist(tree.node_count, kUnset);
    std::vector<std::uint32_t> order, pred(tree.node_count, 0);
    std::uint32_t center = component_center(adj, 0, dist, order, pred);
    if (order.size() != tree.node_count) throw InputError("central_node: tree is disconnected");
    return center;
}

SpanningForest kruskal_bounded_diameter(WeightedGraph graph, std::uint32_t delta) {
    const std::uint32_t n = graph.node_count;
    sort_edges_desc(graph.edges);

    UnionFind uf(n);
    std::vector<std::vector<std::uint32_t>> adj(n);  // accepted edges only
    std::vector<std::uint32_t> ecc(n, 0);            // within the node's current tree
    std::vector<std::uint32_t> diam(n, 0);           // valid at union-find roots
    std::vector<std::uint32_t> dist(n, kUnset);
    std::vector<std::uint32_t> order_a, order_b;

    // Per-root lists of group-edge indices touching that tree; reset lazily
    // per group.
    std::vector<std::vector<std::uint32_t>> touching(n);
    std::vector<std::uint32_t> touch_epoch(n, kUnset);

    SpanningForest forest;
    forest.node_count = n;
    if (n > 0) forest.edges.reserve(n - 1);

    struct Entry {
        std::uint32_t increase, u, v, edge;
        bool operator>(const Entry& o) const {
            if (increase != o.increase) return increase > o.increase;
            if (u != o.u) return u > o.u;
            return v > o.v;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;

    // Candidate diameter if the edge (u, v) joined its two trees.
    auto merged_diameter = [&](std::uint32_t u, std::uint32_t v, std::uint32_t ru,
                               std::uint32_t rv) {
        return std::max({diam[ru], diam[rv], ecc[u] + 1 + ecc[v]});
    };

    const auto& edges = graph.edges;
    std::size_t group_begin = 0;
    std::uint32_t group_id = 0;
    while (group_begin < edges.size()) {
        std::size_t group_end = group_begin + 1;
        while (group_end < edges.size() &&
               edges[group_end].weight == edges[group_begin].weight)
            ++group_end;

        auto list_of = [&](std::uint32_t root) -> std::vector<std::uint32_t>& {
            if (touch_epoch[root] != group_id) {
                touching[root].clear();
                touch_epoch[root] = group_id;
            }
            return touching[root];
        };
        auto consider = [&](std::uint32_t eid) {
            const auto& e = edges[eid];
            std::uint32_t ru = uf.find(e.u), rv = uf.find(e.v);
            if (ru == rv) return;
            std::uint32_t cand = merged_diameter(e.u, e.v, ru, rv);
            if (cand > delta) return;  // eccentricities only grow; skip for good
            heap.push({cand - std::max(diam[ru], diam[rv]), e.u, e.v, eid});
        };

        for (std::size_t i = group_begin; i < group_end; ++i) {
            std::uint32_t eid = static_cast<std::uint32_t>(i);
            const auto& e = edges[i];
            list_of(uf.find(e.u)).push_back(eid);
            list_of(uf.find(e.v)).push_back(eid);
            consider(eid);
        }

        while (!heap.empty()) {
            Entry top = heap.top();
            heap.pop();
            const auto& e = edges[top.edge];
            std::uint32_t ru = uf.find(e.u), rv = uf.find(e.v);
            if (ru == rv) continue;
            std::uint32_t cand = merged_diameter(e.u, e.v, ru, rv);
            if (cand > delta) continue;
            if (cand - std::max(diam[ru], diam[rv]) != top.increase) continue;  // stale

            // Accept: update every node's eccentricity across both trees,
            // then re-key the group edges touching the merged tree.
            std::uint32_t ecc_u = ecc[e.u], ecc_v = ecc[e.v];
            bfs_tree(adj, e.u, dist, order_a);
            for (std::uint32_t x : order_a) {
                ecc[x] = std::max(ecc[x], dist[x] + 1 + ecc_v);
                dist[x] = kUnset;
            }
            bfs_tree(adj, e.v, dist, order_b);
            for (std::uint32_t x : order_b) {
                ecc[x] = std::max(ecc[x], dist[x] + 1 + ecc_u);
                dist[x] = kUnset;
            }
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
            forest.edges.emplace_back(e.u, e.v);
            uf.unite(ru, rv);
            std::uint32_t root = uf.find(ru);
            diam[root] = cand;

            auto& la = list_of(ru);
            auto& lb = list_of(rv);
            auto& merged = list_of(root);
            if (&merged == &la) {
                merged.insert(merged.end(), lb.begin(), lb.end());
            } else if (&merged == &lb) {
                merged.insert(merged.end(), la.begin(), la.end());
            } else {
                merged = std::move(la);
                merged.insert(merged.end(), lb.begin(), lb.end());
            }
            for (std::uint32_t eid : merged) consider(eid);
        }

        group_begin = group_end;
        ++group_id;
    }
    return forest;
}

namespace {

PrimTree prim_grow(const WeightedGraph& graph, std::uint32_t v0, bool penalized) {
    const std::uint32_t n = graph.node_count;
    if (v0 >= n) throw InputError("prim: v0 out of range");

    // CSR adjacency.
    std::vector<std::uint32_t> degree(n, 0);
    for (const auto& e : graph.edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::uint32_t u = 0; u < n; ++u) offset[u + 1] = offset[u] + degree[u];
    std::vector<std::pair<std::uint32_t, std::int32_t>> neighbors(offset[n]);
    {
        std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
        for (const auto& e : graph.edges) {
            neighbors[cursor[e.u]++] = {e.v, e.weight};
            neighbors[cursor[e.v]++] = {e.u, e.weight};
        }
    }

    struct Entry {
        std::int64_t eff;
        std::int32_t base;
        std::uint32_t u, v;
        // "worse-than" for std::priority_queue: top has max eff, then max
        // base, then min u, then min v.
        bool operator<(const Entry& o) const {
            if (eff != o.eff) return eff < o.eff;
            if (base != o.base) return base < o.base;
            if (u != o.u) return u > o.u;
            return v > o.v;
        }
    };
    std::priority_queue<Entry> heap;

    PrimTree result;
    result.tree.node_count = n;
    if (n > 0) result.tree.edges.reserve(n - 1);
    result.depth.assign(n, 0);
    std::vector<char> in_tree(n, 0);

    auto penalty = [&](std::uint32_t d) -> std::int64_t {
        if (!penalized) return 0;
        return std::int64_t(1) << std::min(d, 40u);  // saturates; ordering then
                                                     // falls back to base, ids
    };
    auto relax = [&](std::uint32_t u) {
        std::int64_t pen = penalty(result.depth[u] + 1);
        for (std::size_t i = offset[u]; i < offset[u + 1]; ++i) {
            auto [x, w] = neighbors[i];
            if (!in_tree[x]) heap.push({std::int64_t(w) - pen, w, u, x});
        }
    };

    in_tree[v0] = 1;
    relax(v0);
    while (!heap.empty()) {
        Entry e = heap.top();
        heap.pop();
        if (in_tree[e.v]) continue;  // discarded per the queue semantics
        in_tree[e.v] = 1;
        result.depth[e.v] = result.depth[e.u] + 1;
        result.tree.edges.emplace_back(e.u, e.v);
        relax(e.v);
    }
    if (result.tree.edges.size() + 1 != n)
        throw InputError("prim: input graph is disconnected");
    return result;
}

}  // namespace

PrimTree prim_penalized(const WeightedGraph& graph, std::uint32_t v0) {
    return prim_grow(graph, v0, true);
}

PrimTree prim_mst(const WeightedGraph& graph, std::uint32_t v0) {
    return prim_grow(graph, v0, false);
}

Forest cut_to_diameter(const SpanningForest& tree, std::uint32_t delta) {
    const std::uint32_t n = tree.node_count;
    // Adjacency annotated with edge indices so cuts can be reported back.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n);
    for (std::uint32_t i = 0; i < tree.edges.size(); ++i) {
        auto [u, v] = tree.edges[i];
        adj[u].emplace_back(v, i);
        adj[v].emplace_back(u, i);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    std::vector<char> cut(tree.edges.size(), 0);
    std::vector<std::uint32_t> height(n, 0);
    std::vector<char> visited(n, 0);

    // Iterative post-order per component, rooted at the smallest node id.
    struct Frame {
        std::uint32_t node, parent;
        std::uint32_t next = 0;  // next adjacency slot to descend into
    };
    std::vector<Frame> stack;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> child_heights;  // (height+1, edge)
    for (std::uint32_t r = 0; r < n; ++r) {
        if (visited[r]) continue;
        visited[r] = 1;
        stack.push_back({r, kUnset});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.node].size()) {
                auto [child, eid] = adj[f.node][f.next++];
                (void)eid;
                if (child == f.parent) continue;
                visited[child] = 1;
                stack.push_back({child, f.node});
            } else {
                // All children done: decide cuts at this node.
                child_heights.clear();
                for (auto [child, eid] : adj[f.node]) {
                    if (child == f.parent) continue;
                    child_heights.emplace_back(height[child] + 1, eid);
                }
                // Tallest first; among equals the smaller child id came
                // first in adj, so stable sort keeps the tie deterministic.
                std::stable_sort(child_heights.begin(), child_heights.end(),
                                 [](auto& a, auto& b) { return a.first > b.first; });
                std::size_t keep = 0;
                auto remaining = [&](std::size_t idx) {
                    return child_heights.size() - idx;
                };
                while (keep < child_heights.size() &&
                       (child_heights[keep].first > delta ||
                        (remaining(keep) >= 2 &&
                         child_heights[keep].first + child_heights[keep + 1].first > delta))) {
                    cut[child_heights[keep].second] = 1;
                    ++keep;
                }
                height[f.node] = keep < child_heights.size() ? child_heights[keep].first : 0;
                stack.pop_back();
            }
        }
    }

    SpanningForest pruned;
    pruned.node_count = n;
    for (std::uint32_t i = 0; i < tree.edges.size(); ++i)
        if (!cut[i]) pruned.edges.push_back(tree.edges[i]);
    return root_and_direct(pruned);
}

Forest root_and_direct(const SpanningForest& forest) {
    const std::uint32_t n = forest.node_count;
    auto adj = adjacency_of(forest);

    Forest out;
    out.parent.assign(n, Forest::kNoParent);
    out.tree_id.assign(n, kUnset);
    out.depth.assign(n, 0);

    std::vector<std::uint32_t> dist(n, kUnset);
    std::vector<std::uint32_t> order, pred(n, 0);
    std::vector<char> done(n, 0);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (done[s]) continue;
        std::uint32_t center = component_center(adj, s, dist, order, pred);
        std::uint32_t tree = static_cast<std::uint32_t>(out.roots.size());
        out.roots.push_back(center);

        // BFS from the center: parents point back toward it.
        dist[center] = 0;
        order.clear();
        order.push_back(center);
        for (std::size_t head = 0; head < order.size(); ++head) {
            std::uint32_t u = order[head];
            done[u] = 1;
            out.tree_id[u] = tree;
            for (std::uint32_t x : adj[u])
                if (dist[x] == kUnset) {
                    dist[x] = dist[u] + 1;
                    out.parent[x] = u;
                    out.depth[x] = out.depth[u] + 1;
                    order.push_back(x);
                }
        }
        for (std::uint32_t x : order) dist[x] = kUnset;
    }
    return out;
}

std::vector<std::uint32_t> tree_diameters(const SpanningForest& forest) {
    const std::uint32_t n = forest.node_count;
    auto adj = adjacency_of(forest);
    std::vector<std::uint32_t> dist(n, kUnset);
    std::vector<std::uint32_t> order;
    std::vector<char> done(n, 0);
    std::vector<std::uint32_t> diameters;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (done[s]) continue;
        bfs_tree(adj, s, dist, order);
        std::uint32_t a = s;
        for (std::uint32_t x : order) {
            done[x] = 1;
            if (dist[x] > dist[a] || (dist[x] == dist[a] && x < a)) a = x;
        }
        for (std::uint32_t x : order) dist[x] = kUnset;
        bfs_tree(adj, a, dist, order);
        std::uint32_t far = 0;
        for (std::uint32_t x : order) {
            far = std::max(far, dist[x]);
            dist[x] = kUnset;
        }
        diameters.push_back(far);
    }
    return diameters;
}

}  // namespace ddfa
