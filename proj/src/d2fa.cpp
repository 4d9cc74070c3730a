#include "ddfa/d2fa.hpp"

#include <algorithm>
#include <charconv>

#include "ddfa/error.hpp"
#include "io_util.hpp"

namespace ddfa {

StateId D2fa::lookup(StateId u, std::uint32_t c) const {
    const auto& row = labeled[u];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& entry, std::uint32_t ch) { return entry.first < ch; });
    if (it != row.end() && it->first == c) return it->second;
    return kNoState;
}

std::uint64_t D2fa::labeled_count() const {
    std::uint64_t total = 0;
    for (const auto& row : labeled) total += row.size();
    return total;
}

std::uint64_t D2fa::defaults_count() const {
    std::uint64_t total = 0;
    for (StateId p : default_of) total += (p != kNoState);
    return total;
}

Resolution resolve(const D2fa& d2fa, StateId u, std::uint32_t c) {
    Resolution res;
    StateId x = u;
    for (std::uint32_t hops = 0; hops <= d2fa.state_count; ++hops) {
        StateId t = d2fa.lookup(x, c);
        if (t != kNoState) {
            res.state = t;
            res.delay = hops;
            return res;
        }
        if (!d2fa.has_default(x))
            throw IntegrityError("unresolvable: state " + std::to_string(x) +
                                 " has no transition for character " + std::to_string(c) +
                                 " and no default");
        x = d2fa.default_of[x];
    }
    throw IntegrityError("unresolvable: default chain from state " + std::to_string(u) +
                         " exceeds the state count (default cycle without character " +
                         std::to_string(c) + ")");
}

MatchResult match_string(const D2fa& d2fa, std::string_view input) {
    MatchResult out;
    StateId u = d2fa.start;
    std::size_t consumed = 0;
    for (unsigned char byte : input) {
        if (byte >= d2fa.alphabet_size)
            throw InputError("match: input byte " + std::to_string(int(byte)) +
                             " outside alphabet of size " + std::to_string(d2fa.alphabet_size));
        Resolution step = resolve(d2fa, u, byte);
        u = step.state;
        out.matching_delay += step.delay;
        ++consumed;
        if (d2fa.accepting[u]) out.accepting_positions.push_back(consumed);
    }
    out.end_state = u;
    out.accepted = d2fa.accepting[u];
    return out;
}

namespace {

// Resolves every state for one character in O(n) by memoizing along default
// chains. Fills target[] and delay[]; stamps mark entries valid for `epoch`.
// Returns kNoState on success, else a witness state that cannot resolve.
StateId resolve_all_for_char(const D2fa& d2fa, std::uint32_t c, std::vector<StateId>& target,
                             std::vector<std::uint32_t>& delay,
                             std::vector<std::uint32_t>& stamp, std::uint32_t epoch,
                             std::vector<StateId>& path) {
    const std::uint32_t n = d2fa.state_count;
    for (StateId u = 0; u < n; ++u) {
        if (stamp[u] == epoch) continue;
        path.clear();
        StateId x = u;
        while (true) {
            if (stamp[x] == epoch) break;  // memoized tail
            StateId t = d2fa.lookup(x, c);
            if (t != kNoState) {
                stamp[x] = epoch;
                target[x] = t;
                delay[x] = 0;
                break;
            }
            if (!d2fa.has_default(x) || path.size() > n) return x;
            path.push_back(x);
            x = d2fa.default_of[x];
        }
        StateId resolved = target[x];
        std::uint32_t hops = delay[x];
        for (std::size_t i = path.size(); i-- > 0;) {
            ++hops;
            stamp[path[i]] = epoch;
            target[path[i]] = resolved;
            delay[path[i]] = hops;
        }
    }
    return kNoState;
}

}  // namespace

std::uint32_t longest_delay(const D2fa& d2fa) {
    const std::uint32_t n = d2fa.state_count;
    std::vector<StateId> target(n), path;
    std::vector<std::uint32_t> delay(n), stamp(n, 0xffffffffu);
    std::uint32_t worst = 0;
    for (std::uint32_t c = 0; c < d2fa.alphabet_size; ++c) {
        StateId bad = resolve_all_for_char(d2fa, c, target, delay, stamp, c, path);
        if (bad != kNoState)
            throw IntegrityError("unresolvable: state " + std::to_string(bad) +
                                 " cannot resolve character " + std::to_string(c));
        for (std::uint32_t u = 0; u < n; ++u) worst = std::max(worst, delay[u]);
    }
    return worst;
}

D2fa build_from_forest(const Dfa& dfa, const Forest& forest) {
    const std::uint32_t n = dfa.state_count;
    const std::uint32_t m = dfa.alphabet_size;
    if (forest.node_count() != n)
        throw InputError("build_from_forest: forest does not span the state set");

    // Parent sanity; make_forest/root_and_direct guarantee this, but the
    // struct is open, so check before trusting it below.
    {
        std::vector<std::uint32_t> mark(n, kNoState);  // id of the walk that visited
        for (StateId u = 0; u < n; ++u) {
            StateId x = u;
            while (x != Forest::kNoParent && mark[x] == kNoState) {
                mark[x] = u;
                StateId p = forest.parent[x];
                if (p != Forest::kNoParent && p >= n)
                    throw InputError("build_from_forest: parent id out of range");
                if (p == x) throw IntegrityError("build_from_forest: cycle detected");
                x = p;
            }
            if (x != Forest::kNoParent && mark[x] == u)
                throw IntegrityError("build_from_forest: cycle detected");
        }
    }

    D2fa out;
    out.state_count = n;
    out.alphabet_size = m;
    out.start = dfa.start;
    out.accepting = dfa.accepting;
    out.default_of.assign(n, kNoState);
    out.labeled.resize(n);
    for (StateId u = 0; u < n; ++u) {
        auto row = dfa.row(u);
        StateId p = forest.parent[u];
        auto& sparse = out.labeled[u];
        if (p == Forest::kNoParent) {
            sparse.reserve(m);
            for (std::uint32_t c = 0; c < m; ++c)
                sparse.emplace_back(static_cast<std::uint16_t>(c), row[c]);
        } else {
            out.default_of[u] = p;
            auto parent_row = dfa.row(p);
            for (std::uint32_t c = 0; c < m; ++c)
                if (row[c] != parent_row[c])
                    sparse.emplace_back(static_cast<std::uint16_t>(c), row[c]);
        }
    }
    return out;
}

VerifyResult verify_equivalent(const Dfa& dfa, const D2fa& d2fa) {
    VerifyResult res;
    auto mismatch = [&](const std::string& what) {
        res.status = VerifyResult::Status::shape_mismatch;
        res.detail = what;
        return res;
    };
    if (dfa.state_count != d2fa.state_count) return mismatch("state count differs");
    if (dfa.alphabet_size != d2fa.alphabet_size) return mismatch("alphabet size differs");
    if (dfa.start != d2fa.start) return mismatch("start state differs");
    if (dfa.accepting != d2fa.accepting) return mismatch("accepting set differs");

    const std::uint32_t n = dfa.state_count;
    std::vector<StateId> target(n), path;
    std::vector<std::uint32_t> delay(n), stamp(n, 0xffffffffu);
    for (std::uint32_t c = 0; c < dfa.alphabet_size; ++c) {
        StateId bad = resolve_all_for_char(d2fa, c, target, delay, stamp, c, path);
        if (bad != kNoState) {
            res.status = VerifyResult::Status::transition_mismatch;
            res.state = bad;
            res.character = c;
            res.detail = "unresolvable";
            return res;
        }
        for (StateId u = 0; u < n; ++u) {
            if (target[u] != dfa.next(u, c)) {
                res.status = VerifyResult::Status::transition_mismatch;
                res.state = u;
                res.character = c;
                res.detail = "resolves to " + std::to_string(target[u]) + ", DFA has " +
                             std::to_string(dfa.next(u, c));
                return res;
            }
        }
    }
    return res;
}

void validate_resolution_total(const D2fa& d2fa) {
    const std::uint32_t n = d2fa.state_count;
    for (StateId u = 0; u < n; ++u)
        if (d2fa.default_of[u] == u)
            throw IntegrityError("d2fa: self default at state " + std::to_string(u));
    std::vector<StateId> target(n), path;
    std::vector<std::uint32_t> delay(n), stamp(n, 0xffffffffu);
    for (std::uint32_t c = 0; c < d2fa.alphabet_size; ++c) {
        StateId bad = resolve_all_for_char(d2fa, c, target, delay, stamp, c, path);
        if (bad != kNoState)
            throw IntegrityError("d2fa: state " + std::to_string(bad) +
                                 " cannot resolve character " + std::to_string(c));
    }
}

D2fa parse_d2fa_text(std::string_view text, const std::string& origin) {
    detail::TokenReader r(text, origin);
    if (r.expect("header") != "D2FA") r.fail("malformed header (expected 'D2FA 1')");
    if (r.expect_uint("format version", 0xffffffffu) != 1) r.fail("unsupported format version");
    if (r.expect("'states'") != "states") r.fail("malformed header (expected 'states')");
    D2fa d2fa;
    d2fa.state_count = static_cast<std::uint32_t>(r.expect_uint("state count", 0x7fffffffu));
    if (d2fa.state_count == 0) r.fail("state count must be positive");
    if (r.expect("'alphabet'") != "alphabet") r.fail("malformed header (expected 'alphabet')");
    d2fa.alphabet_size = static_cast<std::uint32_t>(r.expect_uint("alphabet size", 1u << 16));
    if (d2fa.alphabet_size == 0) r.fail("alphabet size must be positive");
    if (r.expect("'start'") != "start") r.fail("malformed header (expected 'start')");
    d2fa.start = static_cast<StateId>(r.expect_uint("start state", d2fa.state_count - 1));
    if (r.expect("'accept'") != "accept") r.fail("malformed header (expected 'accept')");
    auto accept_count = r.expect_uint("accept count", d2fa.state_count);
    d2fa.accepting.assign(d2fa.state_count, false);
    for (std::uint64_t i = 0; i < accept_count; ++i)
        d2fa.accepting[r.expect_uint("accepting state id", d2fa.state_count - 1)] = true;

    d2fa.default_of.assign(d2fa.state_count, kNoState);
    d2fa.labeled.resize(d2fa.state_count);
    for (StateId u = 0; u < d2fa.state_count; ++u) {
        if (r.expect("'default'") != "default")
            r.fail("state " + std::to_string(u) + ": expected 'default'");
        std::string_view tok = r.expect("default target or '-'");
        if (tok != "-") {
            std::uint32_t p = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), p);
            if (ec != std::errc{} || ptr != tok.data() + tok.size() || p >= d2fa.state_count)
                r.fail("state " + std::to_string(u) + ": bad default target '" +
                       std::string(tok) + "'");
            if (p == u) r.fail("state " + std::to_string(u) + ": self default");
            d2fa.default_of[u] = p;
        }
        if (r.expect("';'") != ";") r.fail("state " + std::to_string(u) + ": expected ';'");
        auto& row = d2fa.labeled[u];
        while (true) {
            std::string_view next = r.peek();
            if (next.empty() || next == "default") break;
            r.next(next);
            auto colon = next.find(':');
            if (colon == std::string_view::npos)
                r.fail("state " + std::to_string(u) + ": expected 'char:target', got '" +
                       std::string(next) + "'");
            std::uint32_t c = 0, t = 0;
            auto cs = next.substr(0, colon);
            auto ts = next.substr(colon + 1);
            auto [p1, e1] = std::from_chars(cs.data(), cs.data() + cs.size(), c);
            auto [p2, e2] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
            if (e1 != std::errc{} || p1 != cs.data() + cs.size() || e2 != std::errc{} ||
                p2 != ts.data() + ts.size())
                r.fail("state " + std::to_string(u) + ": bad transition '" + std::string(next) +
                       "'");
            if (c >= d2fa.alphabet_size)
                r.fail("state " + std::to_string(u) + ": character out of range in '" +
                       std::string(next) + "'");
            if (t >= d2fa.state_count)
                r.fail("state " + std::to_string(u) + ": state id out of range in '" +
                       std::string(next) + "'");
            row.emplace_back(static_cast<std::uint16_t>(c), t);
        }
        std::sort(row.begin(), row.end());
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i].first == row[i - 1].first)
                r.fail("state " + std::to_string(u) + ": duplicate character " +
                       std::to_string(row[i].first));
    }
    std::string_view extra;
    if (r.next(extra)) r.fail("trailing data: '" + std::string(extra) + "'");
    validate_resolution_total(d2fa);
    return d2fa;
}

std::string format_d2fa_text(const D2fa& d2fa) {
    std::string out;
    out.reserve(d2fa.labeled_count() * 8 + d2fa.state_count * 12 + 64);
    out += "D2FA 1\n";
    out += "states " + std::to_string(d2fa.state_count) + "\n";
    out += "alphabet " + std::to_string(d2fa.alphabet_size) + "\n";
    out += "start " + std::to_string(d2fa.start) + "\n";
    std::vector<StateId> acc;
    for (StateId u = 0; u < d2fa.state_count; ++u)
        if (d2fa.accepting[u]) acc.push_back(u);
    out += "accept " + std::to_string(acc.size());
    for (StateId id : acc) out += " " + std::to_string(id);
    out += "\n";
    for (StateId u = 0; u < d2fa.state_count; ++u) {
        out += "default ";
        out += d2fa.has_default(u) ? std::to_string(d2fa.default_of[u]) : "-";
        out += " ;";
        for (auto [c, t] : d2fa.labeled[u])
            out += " " + std::to_string(c) + ":" + std::to_string(t);
        out += "\n";
    }
    return out;
}

D2fa read_d2fa(const std::string& path) { return parse_d2fa_text(detail::read_file(path), path); }

void write_d2fa(const D2fa& d2fa, const std::string& path) {
    detail::write_file(path, format_d2fa_text(d2fa));
}

}  // namespace ddfa
