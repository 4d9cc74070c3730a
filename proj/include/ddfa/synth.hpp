#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddfa/dfa.hpp"

namespace ddfa {

// Random DFA whose states fall into cluster_count groups sharing a prototype
// row; a `noise` fraction of cells is independently re-randomized per state.
// Deterministic in seed.
//
// Transition targets are drawn uniformly from the first min(n, alphabet_size)
// states, so two independently randomized cells agree with probability
// 1/min(n, alphabet_size). Reachability from the start state is patched in
// afterwards: zero-noise DFAs patch prototype cells cluster-wide (keeping
// intra-cluster rows identical), noisy DFAs thread unreached states on a
// chain of single-cell per-state patches (keeping cell independence).
Dfa generate_clustered_dfa(std::uint32_t n, std::uint32_t alphabet_size,
                           std::uint32_t cluster_count, double noise, std::uint64_t seed);

struct RuleGenOptions {
    std::uint32_t rule_count = 12;
    double mean_length = 30.0;           // pattern body length, before the ".*" prefix
    double wildcard_rate = 0.5;          // fraction of rules using * + ?
    double length_restrict_rate = 0.25;  // fraction of rules using {n} / {n,m}
    std::uint32_t alphabet_size = 256;
};

// Synthetic signature-style rule set. Every pattern starts with ".*", stays
// within the supported regex subset, and escapes non-alphanumeric bytes as
// \xHH so the rules survive a line-oriented rule file. Counted repetitions
// use n in [2, 8] and spans of at most 6 (uniform), chosen small enough to
// keep compiled DFAs at desk scale.
std::vector<std::string> generate_rule_set(const RuleGenOptions& opts, std::uint64_t seed);

}  // namespace ddfa
