#include "ddfa/pipeline.hpp"

#include <chrono>

#include "ddfa/error.hpp"

namespace ddfa {

const char* to_string(Algo a) {
    switch (a) {
        case Algo::orig: return "orig";
        case Algo::orig_sp: return "orig-sp";
        case Algo::refined: return "refined";
        case Algo::refined_sp: return "refined-sp";
        case Algo::cut: return "cut";
        case Algo::cut_sp: return "cut-sp";
        case Algo::adfa: return "adfa";
        case Algo::adfa_sp: return "adfa-sp";
    }
    return "?";
}

std::optional<Algo> parse_algo(std::string_view name) {
    for (Algo a : all_algos())
        if (name == to_string(a)) return a;
    return std::nullopt;
}

std::vector<Algo> all_algos() {
    return {Algo::orig, Algo::orig_sp, Algo::refined, Algo::refined_sp,
            Algo::cut,  Algo::cut_sp,  Algo::adfa,    Algo::adfa_sp};
}

bool algo_is_sparse(Algo a) {
    return a == Algo::orig_sp || a == Algo::refined_sp || a == Algo::cut_sp ||
           a == Algo::adfa_sp;
}

bool algo_bounds_longest_delay(Algo a) {
    return a == Algo::refined || a == Algo::refined_sp || a == Algo::cut || a == Algo::cut_sp;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

// Best lower-depth default per state, scanning all candidate pairs. A
// default is worth taking only when it saves at least one transition,
// i.e. sim >= 2; best_sim starts at 1 so the strict compare enforces that.
std::vector<std::uint32_t> adfa_parents_dense(const Dfa& dfa,
                                              const std::vector<std::uint32_t>& depths) {
    const std::uint32_t n = dfa.state_count;
    std::vector<std::uint32_t> parent(n, Forest::kNoParent);
    for (StateId u = 0; u < n; ++u) {
        if (depths[u] == 0) continue;
        std::uint32_t best_sim = 1;
        StateId best = kNoState;
        std::uint32_t best_depth = 0;
        for (StateId v = 0; v < n; ++v) {
            if (depths[v] >= depths[u]) continue;
            std::uint32_t s = similarity(dfa, u, v);
            bool better = s > best_sim ||
                          (best != kNoState && s == best_sim && depths[v] < best_depth);
            if (better) {
                best_sim = s;
                best = v;
                best_depth = depths[v];
            }
        }
        if (best != kNoState) parent[u] = best;
    }
    return parent;
}

// LSH-sampled variant: each sampled partner with lower depth may replace the
// current default when strictly more similar. "No default yet" is encoded as
// best_sim = 1, so any candidate saving at least one transition wins.
std::vector<std::uint32_t> adfa_parents_sparse(const Dfa& dfa,
                                               const std::vector<std::uint32_t>& depths,
                                               const LshParams& lsh) {
    const std::uint32_t n = dfa.state_count;
    std::vector<std::uint32_t> parent(n, Forest::kNoParent);
    std::vector<std::uint32_t> best_sim(n, 1);
    lsh_partner_rounds(dfa, lsh, [&](StateId u, StateId v) {
        if (depths[v] >= depths[u]) return;
        std::uint32_t s = similarity(dfa, u, v);
        if (s > best_sim[u]) {
            best_sim[u] = s;
            parent[u] = v;
        }
    });
    return parent;
}

}  // namespace

CompressionResult compress(const Dfa& dfa, const AlgoSpec& spec) {
    if (dfa.state_count == 0) throw InputError("compress: empty DFA");
    const bool sparse = algo_is_sparse(spec.algo);
    const bool bounded = algo_bounds_longest_delay(spec.algo);
    if (bounded && spec.L < 1) throw InputError("compress: L must be >= 1");

    CompressionReport rep;
    rep.algorithm = to_string(spec.algo);
    rep.L = bounded ? spec.L : 0;
    rep.k = sparse ? spec.lsh.k : 0;
    rep.r = sparse ? spec.lsh.r : 0;
    rep.seed = sparse ? spec.lsh.seed : 0;
    rep.n = dfa.state_count;
    rep.alphabet_size = dfa.alphabet_size;
    rep.labeled_before = std::uint64_t(dfa.state_count) * dfa.alphabet_size;

    D2fa d2fa;
    Clock::time_point t0 = Clock::now(), t1, t2, t3;
    switch (spec.algo) {
        case Algo::orig:
        case Algo::orig_sp:
        case Algo::refined:
        case Algo::refined_sp: {
            WeightedGraph graph =
                sparse ? build_ssrg(dfa, spec.lsh) : build_srg(dfa, spec.dense_cap);
            rep.srg_edge_count = graph.edges.size();
            t1 = Clock::now();
            SpanningForest sf =
                bounded ? kruskal_bounded_diameter(std::move(graph), 2 * spec.L)
                        : kruskal_mst(std::move(graph));
            Forest forest = root_and_direct(sf);
            t2 = Clock::now();
            d2fa = build_from_forest(dfa, forest);
            t3 = Clock::now();
            break;
        }
        case Algo::cut:
        case Algo::cut_sp: {
            WeightedGraph graph =
                sparse ? build_ssrg(dfa, spec.lsh) : build_srg(dfa, spec.dense_cap);
            rep.srg_edge_count = graph.edges.size();
            t1 = Clock::now();
            // Plain similarity MST first, only to pick the growth center.
            SpanningForest similarity_tree = kruskal_mst(graph);
            std::uint32_t v0 = central_node(similarity_tree);
            similarity_tree = {};
            PrimTree penalized = prim_penalized(graph, v0);
            Forest forest = cut_to_diameter(penalized.tree, 2 * spec.L);
            t2 = Clock::now();
            d2fa = build_from_forest(dfa, forest);
            t3 = Clock::now();
            break;
        }
        case Algo::adfa:
        case Algo::adfa_sp: {
            std::vector<std::uint32_t> depths = bfs_depths(dfa);
            t1 = Clock::now();
            std::vector<std::uint32_t> parent =
                sparse ? adfa_parents_sparse(dfa, depths, spec.lsh)
                       : adfa_parents_dense(dfa, depths);
            Forest forest = make_forest(std::move(parent));
            t2 = Clock::now();
            d2fa = build_from_forest(dfa, forest);
            t3 = Clock::now();
            break;
        }
    }

    rep.t_graph_ms = ms_between(t0, t1);
    rep.t_forest_ms = ms_between(t1, t2);
    rep.t_build_ms = ms_between(t2, t3);
    rep.t_total_ms = ms_between(t0, t3);
    rep.labeled_after = d2fa.labeled_count();
    rep.default_count = d2fa.defaults_count();
    rep.total_after = rep.labeled_after + rep.default_count;
    rep.compression_ratio = double(rep.total_after) / double(rep.labeled_before);
    rep.longest_delay = longest_delay(d2fa);
    return {std::move(d2fa), std::move(rep)};
}

CompressionResult compress_orig(const Dfa& dfa, bool sparse, const LshParams& lsh,
                                std::uint32_t dense_cap) {
    AlgoSpec spec;
    spec.algo = sparse ? Algo::orig_sp : Algo::orig;
    spec.lsh = lsh;
    spec.dense_cap = dense_cap;
    return compress(dfa, spec);
}

CompressionResult compress_refined(const Dfa& dfa, std::uint32_t L, bool sparse,
                                   const LshParams& lsh, std::uint32_t dense_cap) {
    AlgoSpec spec;
    spec.algo = sparse ? Algo::refined_sp : Algo::refined;
    spec.L = L;
    spec.lsh = lsh;
    spec.dense_cap = dense_cap;
    return compress(dfa, spec);
}

CompressionResult compress_cut(const Dfa& dfa, std::uint32_t L, bool sparse,
                               const LshParams& lsh, std::uint32_t dense_cap) {
    AlgoSpec spec;
    spec.algo = sparse ? Algo::cut_sp : Algo::cut;
    spec.L = L;
    spec.lsh = lsh;
    spec.dense_cap = dense_cap;
    return compress(dfa, spec);
}

CompressionResult compress_adfa(const Dfa& dfa) {
    AlgoSpec spec;
    spec.algo = Algo::adfa;
    return compress(dfa, spec);
}

CompressionResult compress_adfa_sparse(const Dfa& dfa, const LshParams& lsh) {
    AlgoSpec spec;
    spec.algo = Algo::adfa_sp;
    spec.lsh = lsh;
    return compress(dfa, spec);
}

}  // namespace ddfa
