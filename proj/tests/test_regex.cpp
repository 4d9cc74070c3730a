#include <string>
#include <vector>

#include "ddfa/error.hpp"
#include "ddfa/regex.hpp"
#include "ddfa/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ddfa;

namespace {

// Checks DFA acceptance against the independent backtracking oracle on every
// string of length <= max_len over [0, alphabet).
void check_against_oracle(const std::vector<std::string>& rules, std::uint32_t alphabet,
                          std::size_t max_len) {
    Dfa dfa = compile_regex_set(rules, alphabet);
    std::string s;
    // Iterative odometer over all strings of length 0..max_len.
    for (std::size_t len = 0; len <= max_len; ++len) {
        s.assign(len, char(0));
        while (true) {
            bool dfa_accepts = dfa.is_accepting(run_dfa(dfa, s));
            bool oracle_accepts = false;
            for (const auto& rule : rules)
                if (oracles::regex_match(rule, s, alphabet)) {
                    oracle_accepts = true;
                    break;
                }
            if (dfa_accepts != oracle_accepts) {
                CAPTURE(len);
                REQUIRE(dfa_accepts == oracle_accepts);
            }
            std::size_t i = 0;
            for (; i < len; ++i) {
                if (static_cast<unsigned char>(s[i]) + 1u < alphabet) {
                    ++s[i];
                    break;
                }
                s[i] = 0;
            }
            if (i == len) break;
        }
    }
}

}  // namespace

TEST_CASE("compile .*ab") {
    Dfa dfa = compile_regex_set({".*ab"}, 256);
    CHECK(dfa.state_count == 3);
    CHECK(dfa.is_accepting(run_dfa(dfa, "ab")));
    CHECK(dfa.is_accepting(run_dfa(dfa, "xxab")));
    CHECK(dfa.is_accepting(run_dfa(dfa, "aab")));
    CHECK(!dfa.is_accepting(run_dfa(dfa, "aba")));
    CHECK(!dfa.is_accepting(run_dfa(dfa, "")));
}

TEST_CASE("compile .*ab agrees with the oracle on short strings") {
    // Exhaustive strings over a 3-byte probe alphabet {a, b, c}.
    Dfa dfa = compile_regex_set({".*ab"}, 256);
    std::vector<char> probe{'a', 'b', 'c'};
    std::string s;
    for (std::size_t len = 0; len <= 4; ++len) {
        std::vector<std::size_t> idx(len, 0);
        while (true) {
            s.clear();
            for (std::size_t i = 0; i < len; ++i) s += probe[idx[i]];
            CHECK(dfa.is_accepting(run_dfa(dfa, s)) == oracles::regex_match(".*ab", s, 256));
            std::size_t i = 0;
            for (; i < len; ++i) {
                if (++idx[i] < probe.size()) break;
                idx[i] = 0;
            }
            if (i == len) break;
        }
    }
}

TEST_CASE("empty rule set compiles to a single sink") {
    Dfa dfa = compile_regex_set({}, 256);
    CHECK(dfa.state_count == 1);
    CHECK(!dfa.accepting[0]);
    for (std::uint32_t c = 0; c < 256; ++c) CHECK(dfa.next(0, c) == 0);
}

TEST_CASE("figure-style union over a 5-symbol alphabet") {
    // .*((ab+c+)|(cd+)|(bd+e)) with a..e remapped to bytes 0..4.
    std::string pattern = ".*((\\x00\\x01+\\x02+)|(\\x02\\x03+)|(\\x01\\x03+\\x04))";
    Dfa dfa = compile_regex_set({pattern}, 5);
    CHECK(unreachable_states(dfa).empty());
    // Language equality against the oracle on all strings of length <= 6.
    std::string s;
    for (std::size_t len = 0; len <= 6; ++len) {
        s.assign(len, char(0));
        while (true) {
            CHECK(dfa.is_accepting(run_dfa(dfa, s)) == oracles::regex_match(pattern, s, 5));
            std::size_t i = 0;
            for (; i < len; ++i) {
                if (static_cast<unsigned char>(s[i]) + 1u < 5) {
                    ++s[i];
                    break;
                }
                s[i] = 0;
            }
            if (i == len) break;
        }
    }
}

TEST_CASE("oracle equivalence across the feature corpus") {
    // Each set exercises part of the supported subset; alphabets are small
    // so exhaustive string enumeration stays cheap.
    check_against_oracle({"\\x00\\x01"}, 4, 6);
    check_against_oracle({"\\x00*\\x01+\\x02?"}, 4, 6);
    check_against_oracle({"(\\x00|\\x01\\x02)*"}, 4, 6);
    check_against_oracle({"[\\x00\\x02]+", "[^\\x01]\\x03"}, 4, 6);
    check_against_oracle({"\\x00{3}", "\\x01{2,}", "\\x02{1,3}"}, 4, 6);
    check_against_oracle({".\\x01.", "\\x00.*\\x03"}, 4, 6);
    check_against_oracle({"(\\x00(\\x01|\\x02)+)|(\\x03?\\x00)"}, 4, 6);
    check_against_oracle({"[\\x00-\\x03]{2,4}"}, 6, 5);
    check_against_oracle({".*\\x05\\x06", "\\x07+"}, 8, 6);
    check_against_oracle({"\\x00[\\x01-\\x04]*\\x05{2}"}, 8, 5);
}

TEST_CASE("generated rule sets agree with the oracle") {
    RuleGenOptions opts;
    opts.rule_count = 5;
    opts.mean_length = 6;
    opts.alphabet_size = 5;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto rules = generate_rule_set(opts, seed);
        REQUIRE(rules.size() == 5);
        check_against_oracle(rules, 5, 5);
    }
}

TEST_CASE("syntax errors carry rule index and offset") {
    try {
        compile_regex_set({"ok", "ab["}, 256);
        FAIL("expected RegexSyntaxError");
    } catch (const RegexSyntaxError& e) {
        CHECK(e.rule_index() == 1);
        CHECK(e.offset() == 3);
    }
    CHECK_THROWS_AS(compile_regex_set({"*a"}, 256), RegexSyntaxError);
    CHECK_THROWS_AS(compile_regex_set({"(a"}, 256), RegexSyntaxError);
    CHECK_THROWS_AS(compile_regex_set({"a{3,1}"}, 256), RegexSyntaxError);
    CHECK_THROWS_AS(compile_regex_set({"a\\x2"}, 256), RegexSyntaxError);
    CHECK_THROWS_AS(compile_regex_set({"[b-a]"}, 256), RegexSyntaxError);
    // Bytes outside a restricted alphabet are rejected.
    CHECK_THROWS_AS(compile_regex_set({"ab"}, 5), RegexSyntaxError);
}

TEST_CASE("state cap aborts oversized compilations") {
    CompileOptions opts;
    opts.state_cap = 8;
    CHECK_THROWS_WITH_AS(compile_regex_set({"\\x00{40}"}, 4, opts),
                         doctest::Contains("DFA blow-up"), InputError);
}

TEST_CASE("literal brace and class edge cases") {
    // '{' that does not open a valid count is a literal.
    Dfa brace = compile_regex_set({"a{b", "c{2x"}, 256);
    CHECK(brace.is_accepting(run_dfa(brace, "a{b")));
    CHECK(brace.is_accepting(run_dfa(brace, "c{2x")));
    CHECK(!brace.is_accepting(run_dfa(brace, "ab")));
    CHECK(oracles::regex_match("a{b", "a{b", 256));
    CHECK_THROWS_AS(compile_regex_set({"a{300000}"}, 256), RegexSyntaxError);
    // ']' first in a class is a literal; so is a trailing '-'.
    Dfa cls = compile_regex_set({"[]a]", "[x-]"}, 256);
    for (const char* yes : {"]", "a", "x", "-"}) CHECK(cls.is_accepting(run_dfa(cls, yes)));
    for (const char* no : {"b", "]a", ""}) CHECK(!cls.is_accepting(run_dfa(cls, no)));
    CHECK(oracles::regex_match("[]a]", "]", 256));
    CHECK(oracles::regex_match("[x-]", "-", 256));
}

TEST_CASE("minimization preserves the language and never grows") {
    std::vector<std::string> rules{".*\\x00\\x01", "\\x02+\\x00?"};
    CompileOptions plain, mini;
    mini.minimize = true;
    Dfa big = compile_regex_set(rules, 4, plain);
    Dfa small = compile_regex_set(rules, 4, mini);
    CHECK(small.state_count <= big.state_count);
    CHECK(oracles::language_equivalent(big, small));
    CHECK(unreachable_states(small).empty());

    // A DFA with duplicate states minimizes to fewer states.
    Dfa dup = oracles::dfa_from_rows({{1, 2}, {3, 0}, {3, 0}, {3, 3}}, 0, {3});
    Dfa reduced = minimize_dfa(dup);
    CHECK(reduced.state_count == 3);
    CHECK(oracles::language_equivalent(dup, reduced));
}

TEST_CASE("rule file parsing") {
    RuleFile rf = parse_rule_text("# comment\n\n.*ab\n  # indented comment\ncd# inline\n");
    REQUIRE(rf.patterns.size() == 2);
    CHECK(rf.patterns[0] == ".*ab");
    CHECK(rf.patterns[1] == "cd# inline");  // '#' mid-line stays in the pattern
    CHECK(rf.lines[0] == 3);
    CHECK(rf.lines[1] == 5);
}
