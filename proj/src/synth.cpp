#include "ddfa/synth.hpp"

#include <algorithm>
#include <cmath>

#include "ddfa/error.hpp"
#include "ddfa/rng.hpp"

namespace ddfa {

namespace {

std::vector<StateId> reachable_front(const Dfa& dfa, std::vector<char>& seen) {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<StateId> queue;
    queue.reserve(dfa.state_count);
    seen[dfa.start] = 1;
    queue.push_back(dfa.start);
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (StateId t : dfa.row(queue[head]))
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
    return queue;
}

}  // namespace

Dfa generate_clustered_dfa(std::uint32_t n, std::uint32_t alphabet_size,
                           std::uint32_t cluster_count, double noise, std::uint64_t seed) {
    if (n == 0) throw InputError("generate_clustered_dfa: n must be positive");
    if (alphabet_size == 0)
        throw InputError("generate_clustered_dfa: alphabet size must be positive");
    if (cluster_count == 0 || cluster_count > n)
        throw InputError("generate_clustered_dfa: cluster_count must be in [1, n]");
    if (noise < 0.0 || noise > 1.0)
        throw InputError("generate_clustered_dfa: noise must be in [0, 1]");

    const std::uint32_t m = alphabet_size;
    const std::uint32_t pool = std::min(n, m);  // targets concentrate on a core, IDS-like
    SplitMix64 rng(mix64(seed, 0x636c7573746572ULL));

    // Contiguous clusters; cluster g owns [bounds[g], bounds[g+1]).
    std::vector<std::uint32_t> cluster_of(n);
    std::vector<std::uint32_t> bounds(cluster_count + 1);
    for (std::uint32_t g = 0; g <= cluster_count; ++g)
        bounds[g] = static_cast<std::uint32_t>(std::uint64_t(n) * g / cluster_count);
    for (std::uint32_t g = 0; g < cluster_count; ++g)
        for (std::uint32_t u = bounds[g]; u < bounds[g + 1]; ++u) cluster_of[u] = g;

    std::vector<StateId> prototype(std::size_t(cluster_count) * m);
    for (auto& cell : prototype) cell = static_cast<StateId>(rng.next_below(pool));

    Dfa dfa;
    dfa.state_count = n;
    dfa.alphabet_size = m;
    dfa.start = 0;
    dfa.accepting.assign(n, false);
    dfa.transitions.resize(std::size_t(n) * m);
    for (StateId u = 0; u < n; ++u) {
        const StateId* proto = prototype.data() + std::size_t(cluster_of[u]) * m;
        StateId* row = dfa.transitions.data() + std::size_t(u) * m;
        std::copy(proto, proto + m, row);
    }
    if (noise > 0.0) {
        for (StateId u = 0; u < n; ++u) {
            StateId* row = dfa.transitions.data() + std::size_t(u) * m;
            for (std::uint32_t c = 0; c < m; ++c)
                if (rng.next_unit() < noise) row[c] = static_cast<StateId>(rng.next_below(pool));
        }
    }

    // The last state of each cluster accepts.
    for (std::uint32_t g = 0; g < cluster_count; ++g) dfa.accepting[bounds[g + 1] - 1] = true;

    // Reachability patching.
    //
    // Zero noise: patch prototype cells, applied to every state of the
    // cluster, so intra-cluster rows stay identical (and intra-cluster
    // similarity stays exactly |alphabet|). A patched cell is locked and
    // never reused; a patch can orphan the cell's previous target, so sweep
    // to a fixpoint. If the prototype cells run out, or noise is nonzero
    // (where cluster-wide forced-match columns would skew similarities up),
    // thread the unreached states on a chain of single-cell per-state
    // patches instead, each host state hosting exactly one chain edge.
    std::vector<char> seen(n, 0);
    bool prototype_patching = noise == 0.0;
    std::vector<char> locked;
    if (prototype_patching) locked.assign(std::size_t(cluster_count) * m, 0);
    StateId host = dfa.start;
    std::uint32_t sweeps = 0;
    while (true) {
        auto order = reachable_front(dfa, seen);
        if (order.size() == n) break;
        if (++sweeps > n) throw IntegrityError("generate_clustered_dfa: patching diverged");
        if (prototype_patching) {
            std::vector<char> cluster_reachable(cluster_count, 0);
            for (StateId u : order) cluster_reachable[cluster_of[u]] = 1;
            std::size_t cell = 0;  // scans (cluster, char) lexicographically
            const std::size_t cell_count = locked.size();
            for (StateId v = 0; v < n; ++v) {
                if (seen[v]) continue;
                while (cell < cell_count && (locked[cell] || !cluster_reachable[cell / m]))
                    ++cell;
                if (cell == cell_count) {
                    prototype_patching = false;  // capacity exhausted
                    break;
                }
                locked[cell] = 1;
                std::uint32_t g = static_cast<std::uint32_t>(cell / m);
                std::uint32_t c = static_cast<std::uint32_t>(cell % m);
                prototype[cell] = v;
                for (StateId u = bounds[g]; u < bounds[g + 1]; ++u)
                    dfa.transitions[std::size_t(u) * m + c] = v;
                seen[v] = 1;  // provisional; the next sweep re-derives the truth
            }
        } else {
            for (StateId v = 0; v < n; ++v) {
                if (seen[v]) continue;
                std::uint32_t c = static_cast<std::uint32_t>(mix64(seed, v) % m);
                dfa.transitions[std::size_t(host) * m + c] = v;
                host = v;
                seen[v] = 1;  // provisional, as above
            }
        }
    }

    return dfa;
}

namespace {

void append_escaped_byte(std::string& out, std::uint32_t byte) {
    bool plain = (byte >= 'a' && byte <= 'z') || (byte >= 'A' && byte <= 'Z') ||
                 (byte >= '0' && byte <= '9');
    if (plain) {
        out += static_cast<char>(byte);
    } else {
        static const char* hex = "0123456789abcdef";
        out += "\\x";
        out += hex[(byte >> 4) & 0xf];
        out += hex[byte & 0xf];
    }
}

}  // namespace

std::vector<std::string> generate_rule_set(const RuleGenOptions& opts, std::uint64_t seed) {
    if (opts.alphabet_size == 0 || opts.alphabet_size > 256)
        throw InputError("generate_rule_set: alphabet size must be in [1, 256]");
    if (opts.mean_length < 1.0) throw InputError("generate_rule_set: mean_length too small");

    SplitMix64 rng(mix64(seed, 0x72756c6573ULL));
    std::vector<std::string> rules;
    rules.reserve(opts.rule_count);
    for (std::uint32_t i = 0; i < opts.rule_count; ++i) {
        bool use_wildcards = rng.next_unit() < opts.wildcard_rate;
        bool use_restrict = rng.next_unit() < opts.length_restrict_rate;
        // Length roughly geometric around the mean, clipped to [4, 4*mean].
        double span = opts.mean_length;
        std::uint32_t len = static_cast<std::uint32_t>(
            std::clamp(span * (0.5 + 1.5 * rng.next_unit()), 4.0, 4.0 * span));
        std::string body;
        std::uint32_t restrict_at = use_restrict ? 2 + std::uint32_t(rng.next_below(len - 2)) : len;
        for (std::uint32_t pos = 0; pos < len; ++pos) {
            double roll = rng.next_unit();
            if (roll < 0.70) {  // literal byte
                append_escaped_byte(body, std::uint32_t(rng.next_below(opts.alphabet_size)));
            } else if (roll < 0.85) {  // small class
                body += '[';
                if (rng.next_unit() < 0.25) body += '^';
                std::uint32_t width = 2 + std::uint32_t(rng.next_below(4));
                for (std::uint32_t j = 0; j < width; ++j)
                    append_escaped_byte(body, std::uint32_t(rng.next_below(opts.alphabet_size)));
                body += ']';
            } else {  // dot
                body += '.';
            }
            if (pos == restrict_at) {
                std::uint32_t lo = 2 + std::uint32_t(rng.next_below(7));  // 2..8
                switch (rng.next_below(3)) {
                    case 0: body += "{" + std::to_string(lo) + "}"; break;
                    case 1: body += "{" + std::to_string(lo) + ",}"; break;
                    default:
                        body += "{" + std::to_string(lo) + "," +
                                std::to_string(lo + std::uint32_t(rng.next_below(7))) + "}";
                }
            } else if (use_wildcards && rng.next_unit() < 0.12) {
                switch (rng.next_below(3)) {
                    case 0: body += '*'; break;
                    case 1: body += '+'; break;
                    default: body += '?';
                }
            }
        }
        rules.push_back(".*" + body);
    }
    return rules;
}

}  // namespace ddfa
