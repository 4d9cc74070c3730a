#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddfa/dfa.hpp"

namespace ddfa {

struct CompileOptions {
    bool minimize = false;              // Hopcroft-minimize the result
    std::size_t state_cap = 2'000'000;  // fail with "DFA blow-up" above this
};

// Compiles the union of the patterns into a complete DFA over symbols
// [0, alphabet_size). Acceptance means at least one whole pattern matches;
// streaming search patterns are written with a leading ".*".
//
// Supported syntax: literals, escapes (\n \t \r \f \v \0 \a, \xHH, \d \D
// \w \s \S \W, and identity escapes), '.', classes [...] / [^...] with
// ranges, postfix * + ? {n} {n,} {n,m}, alternation '|', grouping '(...)'.
// Matching is byte-exact; a dead state is materialized when needed so the
// table stays total.
Dfa compile_regex_set(const std::vector<std::string>& rules, std::uint32_t alphabet_size,
                      const CompileOptions& opts = {});

// Hopcroft minimization of a complete DFA. Exposed for the compile flag and
// for tooling; the compressors take whatever DFA they are given.
Dfa minimize_dfa(const Dfa& dfa);

// One pattern per line; blank lines and lines whose first non-space byte is
// '#' are skipped. `lines` keeps the 1-based line number of each pattern for
// diagnostics ('#' elsewhere stays part of the pattern).
struct RuleFile {
    std::vector<std::string> patterns;
    std::vector<std::size_t> lines;
};

RuleFile read_rule_file(const std::string& path);
RuleFile parse_rule_text(std::string_view text);

}  // namespace ddfa
