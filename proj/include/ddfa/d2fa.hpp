#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddfa/dfa.hpp"
#include "ddfa/forest.hpp"

namespace ddfa {

// Delayed DFA: per-state sparse labeled transitions plus at most one
// unlabeled default transition. A missing labeled transition is resolved by
// following defaults until a state carries the character.
struct D2fa {
    std::uint32_t state_count = 0;
    std::uint32_t alphabet_size = 0;
    StateId start = 0;
    std::vector<bool> accepting;
    // Sorted by character. States at the root of a default chain keep a
    // full row.
    std::vector<std::vector<std::pair<std::uint16_t, StateId>>> labeled;
    std::vector<StateId> default_of;  // kNoState when absent

    bool has_default(StateId u) const { return default_of[u] != kNoState; }
    // Target of the labeled c-transition at u, or kNoState if absent.
    StateId lookup(StateId u, std::uint32_t c) const;
    std::uint64_t labeled_count() const;
    std::uint64_t defaults_count() const;
};

struct Resolution {
    StateId state = kNoState;
    std::uint32_t delay = 0;  // default transitions followed
};

// Follows defaults from u until a c-labeled transition is found. Throws
// IntegrityError on a defaultless state without c or after n default hops.
Resolution resolve(const D2fa& d2fa, StateId u, std::uint32_t c);

struct MatchResult {
    StateId end_state = kNoState;
    bool accepted = false;
    std::uint64_t matching_delay = 0;
    std::vector<std::size_t> accepting_positions;  // prefix lengths >= 1
};

// Simulates the D2FA on a byte string from the start state, accumulating
// the per-character resolution delays.
MatchResult match_string(const D2fa& d2fa, std::string_view input);

// Maximum resolve delay over all (state, character) pairs.
std::uint32_t longest_delay(const D2fa& d2fa);

// Turns a default-transition forest into a D2FA: parents become defaults;
// a labeled transition (u, c) survives iff u is a root or its target
// differs from the parent's target in the original DFA.
D2fa build_from_forest(const Dfa& dfa, const Forest& forest);

struct VerifyResult {
    enum class Status { ok, shape_mismatch, transition_mismatch };
    Status status = Status::ok;
    StateId state = kNoState;  // witness for transition_mismatch
    std::uint32_t character = 0;
    std::string detail;

    explicit operator bool() const { return status == Status::ok; }
};

// Structural equivalence: resolve(u, c) lands on delta(u, c) for every
// (u, c). Stronger than language equality and O(n * alphabet).
VerifyResult verify_equivalent(const Dfa& dfa, const D2fa& d2fa);

// Checks that every (state, character) pair resolves. Handles arbitrary
// default graphs, including cycles: a cycle is fine only if every character
// is labeled somewhere on it. Throws IntegrityError on violation.
void validate_resolution_total(const D2fa& d2fa);

// Text format round-trip (see README). read_d2fa validates on load.
D2fa read_d2fa(const std::string& path);
void write_d2fa(const D2fa& d2fa, const std::string& path);
D2fa parse_d2fa_text(std::string_view text, const std::string& origin = "<string>");
std::string format_d2fa_text(const D2fa& d2fa);

}  // namespace ddfa
