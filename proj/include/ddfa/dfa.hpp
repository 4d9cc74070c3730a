#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddfa {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = 0xffffffffu;

// Complete deterministic automaton: a dense n x |alphabet| transition table.
// Every cell holds a valid state id, every state is reachable from start.
struct Dfa {
    std::uint32_t state_count = 0;
    std::uint32_t alphabet_size = 0;
    std::vector<StateId> transitions;  // row-major: transitions[u * alphabet_size + c]
    StateId start = 0;
    std::vector<bool> accepting;       // size state_count

    std::span<const StateId> row(StateId u) const {
        return {transitions.data() + std::size_t(u) * alphabet_size, alphabet_size};
    }
    StateId next(StateId u, std::uint32_t c) const {
        return transitions[std::size_t(u) * alphabet_size + c];
    }
    bool is_accepting(StateId u) const { return accepting[u]; }
    std::vector<StateId> accepting_ids() const;
};

// Number of characters on which the rows of u and v agree. Symmetric;
// similarity(dfa, u, u) == alphabet_size. Hot path, hence inline.
inline std::uint32_t similarity(const Dfa& dfa, StateId u, StateId v) {
    const StateId* a = dfa.transitions.data() + std::size_t(u) * dfa.alphabet_size;
    const StateId* b = dfa.transitions.data() + std::size_t(v) * dfa.alphabet_size;
    std::uint32_t count = 0;
    for (std::uint32_t c = 0; c < dfa.alphabet_size; ++c) count += (a[c] == b[c]);
    return count;
}

// Shortest-path distance (in transitions) from start to every state.
// All states are reachable for a valid Dfa, so every entry is defined.
std::vector<std::uint32_t> bfs_depths(const Dfa& dfa);

// States with no path from start; empty for a valid Dfa.
std::vector<StateId> unreachable_states(const Dfa& dfa);

// Runs the plain DFA on a byte string and returns the end state.
// Bytes must be below alphabet_size.
StateId run_dfa(const Dfa& dfa, std::string_view input);

// Shape, range and reachability checks; throws InputError on violation.
void validate_dfa(const Dfa& dfa);

// Line-oriented text format (see README). read_dfa validates on load.
Dfa read_dfa(const std::string& path);
void write_dfa(const Dfa& dfa, const std::string& path);
Dfa parse_dfa_text(std::string_view text, const std::string& origin = "<string>");
std::string format_dfa_text(const Dfa& dfa);

}  // namespace ddfa
