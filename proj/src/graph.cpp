#include "ddfa/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "ddfa/error.hpp"
#include "ddfa/rng.hpp"

namespace ddfa {

WeightedGraph build_srg(const Dfa& dfa, std::uint32_t dense_cap) {
    const std::uint32_t n = dfa.state_count;
    const std::uint32_t m = dfa.alphabet_size;
    if (n > dense_cap)
        throw InputError("build_srg: " + std::to_string(n) + " states exceeds dense cap " +
                         std::to_string(dense_cap));
    WeightedGraph g;
    g.node_count = n;
    g.edges.reserve(std::size_t(n) * (n - 1) / 2);
    const StateId* table = dfa.transitions.data();
    for (std::uint32_t u = 0; u < n; ++u) {
        const StateId* ru = table + std::size_t(u) * m;
        for (std::uint32_t v = u + 1; v < n; ++v) {
            const StateId* rv = table + std::size_t(v) * m;
            std::uint32_t w = 0;
            for (std::uint32_t c = 0; c < m; ++c) w += (ru[c] == rv[c]);
            g.edges.push_back({u, v, static_cast<std::int32_t>(w)});
        }
    }
    return g;
}

std::uint64_t lsh_signature(const Dfa& dfa, StateId v, std::span<const std::uint32_t> chars,
                            std::uint64_t round_seed) {
    // Seeded mixing over the ordered target sequence; a stand-in for a
    // standard sequence-hashing scheme with negligible collision rate.
    std::uint64_t h = round_seed ^ 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t c : chars) {
        std::uint64_t t = dfa.next(v, c);
        h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27;
    }
    h *= 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

void lsh_partner_rounds(const Dfa& dfa, const LshParams& params,
                        const std::function<void(StateId, StateId)>& on_pair) {
    const std::uint32_t n = dfa.state_count;
    const std::uint32_t m = dfa.alphabet_size;
    if (params.k == 0 || params.k > m)
        throw InputError("lsh: k must be in [1, alphabet_size]");
    if (n < 2) return;

    SplitMix64 base(params.seed);
    std::vector<std::uint32_t> chars(m);
    std::vector<std::pair<std::uint64_t, StateId>> keyed(n);

    for (std::uint32_t round = 0; round < params.r; ++round) {
        SplitMix64 rng = base.split(round);
        // k distinct characters: partial Fisher-Yates over a fresh iota.
        std::iota(chars.begin(), chars.end(), 0u);
        for (std::uint32_t i = 0; i < params.k; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(rng.next_below(m - i));
            std::swap(chars[i], chars[j]);
        }
        std::uint64_t round_seed = rng.next();
        std::span<const std::uint32_t> sample(chars.data(), params.k);
        for (StateId v = 0; v < n; ++v)
            keyed[v] = {lsh_signature(dfa, v, sample, round_seed), v};
        std::sort(keyed.begin(), keyed.end());

        // Buckets are maximal runs of equal hash; ids ascend within a run.
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i + 1;
            while (j < n && keyed[j].first == keyed[i].first) ++j;
            std::size_t size = j - i;
            if (size >= 2) {
                for (std::size_t p = i; p < j; ++p) {
                    std::uint64_t pick = rng.next_below(size - 1);
                    if (pick >= p - i) ++pick;  // uniform over the others
                    on_pair(keyed[p].second, keyed[i + pick].second);
                }
            }
            i = j;
        }
    }
}

WeightedGraph build_ssrg(const Dfa& dfa, const LshParams& params) {
    const std::uint32_t n = dfa.state_count;
    WeightedGraph g;
    g.node_count = n;
    if (n < 2) return g;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(std::size_t(n) + std::size_t(params.r) * 4);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(std::size_t(n) * 2);
    auto insert_pair = [&](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        std::uint64_t key = (std::uint64_t(a) << 32) | b;
        if (seen.insert(key).second) pairs.emplace_back(a, b);
    };

    // Connectivity star at the start state, then the sampled pairs.
    for (StateId u = 0; u < n; ++u)
        if (u != dfa.start) insert_pair(dfa.start, u);
    lsh_partner_rounds(dfa, params, insert_pair);

    // Similarity weights once per unique edge, after all rounds.
    g.edges.reserve(pairs.size());
    for (auto [a, b] : pairs)
        g.edges.push_back({a, b, static_cast<std::int32_t>(similarity(dfa, a, b))});
    return g;
}

void write_graph(const WeightedGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out << "SRG 1\n" << graph.node_count << " " << graph.edges.size() << "\n";
    for (const auto& e : graph.edges) out << e.u << " " << e.v << " " << e.weight << "\n";
    if (!out) throw InputError("write failed: " + path);
}

}  // namespace ddfa
