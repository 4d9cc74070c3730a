#include "ddfa/dfa.hpp"

#include <charconv>

#include "ddfa/error.hpp"
#include "io_util.hpp"

namespace ddfa {

std::vector<StateId> Dfa::accepting_ids() const {
    std::vector<StateId> ids;
    for (StateId u = 0; u < state_count; ++u)
        if (accepting[u]) ids.push_back(u);
    return ids;
}

std::vector<std::uint32_t> bfs_depths(const Dfa& dfa) {
    const std::uint32_t unset = 0xffffffffu;
    std::vector<std::uint32_t> depth(dfa.state_count, unset);
    std::vector<StateId> queue;
    queue.reserve(dfa.state_count);
    depth[dfa.start] = 0;
    queue.push_back(dfa.start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        StateId u = queue[head];
        for (StateId t : dfa.row(u)) {
            if (depth[t] == unset) {
                depth[t] = depth[u] + 1;
                queue.push_back(t);
            }
        }
    }
    for (StateId u = 0; u < dfa.state_count; ++u)
        if (depth[u] == unset)
            throw InputError("bfs_depths: state " + std::to_string(u) + " is unreachable");
    return depth;
}

std::vector<StateId> unreachable_states(const Dfa& dfa) {
    std::vector<char> seen(dfa.state_count, 0);
    std::vector<StateId> queue;
    queue.reserve(dfa.state_count);
    seen[dfa.start] = 1;
    queue.push_back(dfa.start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (StateId t : dfa.row(queue[head])) {
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        }
    }
    std::vector<StateId> missing;
    for (StateId u = 0; u < dfa.state_count; ++u)
        if (!seen[u]) missing.push_back(u);
    return missing;
}

StateId run_dfa(const Dfa& dfa, std::string_view input) {
    StateId u = dfa.start;
    for (unsigned char byte : input) {
        if (byte >= dfa.alphabet_size)
            throw InputError("run_dfa: input byte " + std::to_string(int(byte)) +
                             " outside alphabet of size " + std::to_string(dfa.alphabet_size));
        u = dfa.next(u, byte);
    }
    return u;
}

void validate_dfa(const Dfa& dfa) {
    if (dfa.state_count == 0) throw InputError("dfa: state count must be positive");
    if (dfa.alphabet_size == 0) throw InputError("dfa: alphabet size must be positive");
    if (dfa.transitions.size() != std::size_t(dfa.state_count) * dfa.alphabet_size)
        throw InputError("dfa: transition table size mismatch");
    if (dfa.accepting.size() != dfa.state_count)
        throw InputError("dfa: accepting flag size mismatch");
    if (dfa.start >= dfa.state_count) throw InputError("dfa: start state out of range");
    for (StateId t : dfa.transitions)
        if (t >= dfa.state_count) throw InputError("dfa: state id out of range");
    auto missing = unreachable_states(dfa);
    if (!missing.empty())
        throw InputError("dfa: unreachable state " + std::to_string(missing.front()) +
                         (missing.size() > 1
                              ? " (and " + std::to_string(missing.size() - 1) + " more)"
                              : ""));
}

Dfa parse_dfa_text(std::string_view text, const std::string& origin) {
    detail::TokenReader r(text, origin);
    if (r.expect("header") != "DFA") r.fail("malformed header (expected 'DFA 1')");
    if (r.expect_uint("format version", 0xffffffffu) != 1)
        r.fail("unsupported format version");
    if (r.expect("'states'") != "states") r.fail("malformed header (expected 'states')");
    Dfa dfa;
    dfa.state_count = static_cast<std::uint32_t>(r.expect_uint("state count", 0x7fffffffu));
    if (dfa.state_count == 0) r.fail("state count must be positive");
    if (r.expect("'alphabet'") != "alphabet") r.fail("malformed header (expected 'alphabet')");
    dfa.alphabet_size = static_cast<std::uint32_t>(r.expect_uint("alphabet size", 1u << 20));
    if (dfa.alphabet_size == 0) r.fail("alphabet size must be positive");
    if (r.expect("'start'") != "start") r.fail("malformed header (expected 'start')");
    dfa.start = static_cast<StateId>(r.expect_uint("start state", dfa.state_count - 1));
    if (r.expect("'accept'") != "accept") r.fail("malformed header (expected 'accept')");
    auto accept_count = r.expect_uint("accept count", dfa.state_count);
    dfa.accepting.assign(dfa.state_count, false);
    for (std::uint64_t i = 0; i < accept_count; ++i)
        dfa.accepting[r.expect_uint("accepting state id", dfa.state_count - 1)] = true;

    dfa.transitions.resize(std::size_t(dfa.state_count) * dfa.alphabet_size);
    std::size_t cells = dfa.transitions.size();
    for (std::size_t i = 0; i < cells; ++i) {
        std::string_view tok;
        if (!r.next(tok)) r.fail("truncated table");
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            r.fail("bad table cell '" + std::string(tok) + "'");
        if (value >= dfa.state_count) r.fail("state id out of range: " + std::string(tok));
        dfa.transitions[i] = value;
    }
    std::string_view extra;
    if (r.next(extra)) r.fail("trailing data after table: '" + std::string(extra) + "'");

    auto missing = unreachable_states(dfa);
    if (!missing.empty()) r.fail("unreachable state " + std::to_string(missing.front()));
    return dfa;
}

std::string format_dfa_text(const Dfa& dfa) {
    std::string out;
    out.reserve(std::size_t(dfa.state_count) * dfa.alphabet_size * 4 + 64);
    out += "DFA 1\n";
    out += "states " + std::to_string(dfa.state_count) + "\n";
    out += "alphabet " + std::to_string(dfa.alphabet_size) + "\n";
    out += "start " + std::to_string(dfa.start) + "\n";
    auto acc = dfa.accepting_ids();
    out += "accept " + std::to_string(acc.size());
    for (StateId id : acc) out += " " + std::to_string(id);
    out += "\n";
    for (StateId u = 0; u < dfa.state_count; ++u) {
        auto row = dfa.row(u);
        for (std::uint32_t c = 0; c < dfa.alphabet_size; ++c) {
            if (c) out += ' ';
            out += std::to_string(row[c]);
        }
        out += '\n';
    }
    return out;
}

Dfa read_dfa(const std::string& path) { return parse_dfa_text(detail::read_file(path), path); }

void write_dfa(const Dfa& dfa, const std::string& path) {
    detail::write_file(path, format_dfa_text(dfa));
}

}  // namespace ddfa
