#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ddfa/dfa.hpp"

namespace ddfa {

struct GraphEdge {
    std::uint32_t u = 0;  // u < v always
    std::uint32_t v = 0;
    std::int32_t weight = 0;  // similarity, in [0, alphabet_size]
};

// Undirected similarity graph over DFA states (SRG or SSRG).
// No self edges, no duplicate pairs.
struct WeightedGraph {
    std::uint32_t node_count = 0;
    std::vector<GraphEdge> edges;
};

// Dense space reduction graph: every state pair, weighted by similarity.
// Quadratic in states by design; refuses inputs above dense_cap states.
WeightedGraph build_srg(const Dfa& dfa, std::uint32_t dense_cap = 100'000);

struct LshParams {
    std::uint32_t k = 8;    // distinct characters sampled per round
    std::uint32_t r = 512;  // rounds
    std::uint64_t seed = 1;
};

// Hash of the target sequence delta(v, chars[0]), ..., delta(v, chars[k-1]).
// Equal sequences hash equal under the same round_seed.
std::uint64_t lsh_signature(const Dfa& dfa, StateId v,
                            std::span<const std::uint32_t> chars,
                            std::uint64_t round_seed);

// Runs r rounds of LSH bucketing: each round samples k distinct characters,
// buckets states by the hash of their target sequences, and for every state
// in a bucket of size >= 2 reports one uniformly chosen partner from the
// same bucket. Deterministic in params.seed. Shared by the SSRG build and
// the sparse A-DFA pipeline.
void lsh_partner_rounds(const Dfa& dfa, const LshParams& params,
                        const std::function<void(StateId u, StateId v)>& on_pair);

// Sparse space reduction graph: a star at the start state plus the sampled
// partner pairs, weighted by similarity once per unique edge.
WeightedGraph build_ssrg(const Dfa& dfa, const LshParams& params);

// Debug dump: "SRG 1" header followed by "u v w" lines.
void write_graph(const WeightedGraph& graph, const std::string& path);

}  // namespace ddfa
