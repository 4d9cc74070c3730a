#include "ddfa/regex.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <unordered_map>

#include "ddfa/error.hpp"
#include "io_util.hpp"

namespace ddfa {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;
constexpr std::uint32_t kInfRep = 0xffffffffu;
constexpr std::uint32_t kRepCap = 1024;
constexpr std::size_t kNfaCap = 4'000'000;

// 256-bit character class.
using Mask = std::array<std::uint64_t, 4>;

void mask_set(Mask& m, std::uint32_t c) { m[c >> 6] |= std::uint64_t(1) << (c & 63); }

void mask_or(Mask& a, const Mask& b) {
    for (int i = 0; i < 4; ++i) a[i] |= b[i];
}

void mask_complement(Mask& m, std::uint32_t alphabet) {
    for (int i = 0; i < 4; ++i) m[i] = ~m[i];
    for (std::uint32_t c = alphabet; c < 256; ++c)
        m[c >> 6] &= ~(std::uint64_t(1) << (c & 63));
}

Mask mask_all(std::uint32_t alphabet) {
    Mask m{};
    mask_complement(m, alphabet);  // complement of empty, clipped
    return m;
}

enum class NodeKind : std::uint8_t { klass, concat, alt, star, plus, opt, repeat, empty };

struct Node {
    NodeKind kind;
    std::int32_t a = -1;
    std::int32_t b = -1;
    std::int32_t cls = -1;
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
};

struct Ast {
    std::vector<Node> nodes;
    std::vector<Mask> classes;
    std::vector<std::int32_t> roots;  // one per rule

    std::int32_t add(Node n) {
        nodes.push_back(n);
        return static_cast<std::int32_t>(nodes.size() - 1);
    }
    std::int32_t add_class(const Mask& m) {
        classes.push_back(m);
        return static_cast<std::int32_t>(classes.size() - 1);
    }
};

class PatternParser {
public:
    PatternParser(std::string_view pattern, std::size_t rule_index, std::uint32_t alphabet,
                  Ast& ast)
        : pat_(pattern), rule_(rule_index), alphabet_(alphabet), ast_(ast) {}

    std::int32_t parse() {
        std::int32_t root = parse_alt();
        if (pos_ != pat_.size()) fail("unexpected ')'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw RegexSyntaxError(rule_, pos_, msg);
    }

    bool eof() const { return pos_ >= pat_.size(); }
    char cur() const { return pat_[pos_]; }

    std::int32_t parse_alt() {
        std::int32_t left = parse_concat();
        while (!eof() && cur() == '|') {
            ++pos_;
            std::int32_t right = parse_concat();
            left = ast_.add({NodeKind::alt, left, right, -1, 0, 0});
        }
        return left;
    }

    std::int32_t parse_concat() {
        std::int32_t left = -1;
        while (!eof() && cur() != '|' && cur() != ')') {
            std::int32_t item = parse_repeat();
            left = left < 0 ? item : ast_.add({NodeKind::concat, left, item, -1, 0, 0});
        }
        return left < 0 ? ast_.add({NodeKind::empty, -1, -1, -1, 0, 0}) : left;
    }

    std::int32_t parse_repeat() {
        std::int32_t atom = parse_atom();
        while (!eof()) {
            char c = cur();
            if (c == '*') {
                atom = ast_.add({NodeKind::star, atom, -1, -1, 0, 0});
                ++pos_;
            } else if (c == '+') {
                atom = ast_.add({NodeKind::plus, atom, -1, -1, 0, 0});
                ++pos_;
            } else if (c == '?') {
                atom = ast_.add({NodeKind::opt, atom, -1, -1, 0, 0});
                ++pos_;
            } else if (c == '{') {
                std::uint32_t lo = 0, hi = 0;
                std::size_t save = pos_;
                if (!try_parse_counts(lo, hi)) {
                    pos_ = save;  // literal '{', handled as the next atom
                    break;
                }
                atom = ast_.add({NodeKind::repeat, atom, -1, -1, lo, hi});
            } else {
                break;
            }
        }
        return atom;
    }

    bool try_parse_counts(std::uint32_t& lo, std::uint32_t& hi) {
        std::size_t p = pos_ + 1;  // past '{'
        auto digits = [&](std::uint32_t& out) {
            std::size_t start = p;
            std::uint64_t val = 0;
            while (p < pat_.size() && pat_[p] >= '0' && pat_[p] <= '9') {
                val = val * 10 + (pat_[p] - '0');
                if (val > kRepCap) fail("repetition bound too large");
                ++p;
            }
            if (p == start) return false;
            out = static_cast<std::uint32_t>(val);
            return true;
        };
        if (!digits(lo)) return false;
        hi = lo;
        if (p < pat_.size() && pat_[p] == ',') {
            ++p;
            if (p < pat_.size() && pat_[p] == '}') {
                hi = kInfRep;
            } else if (!digits(hi)) {
                return false;
            }
        }
        if (p >= pat_.size() || pat_[p] != '}') return false;
        if (hi != kInfRep && hi < lo) fail("reversed repetition range");
        pos_ = p + 1;
        return true;
    }

    std::int32_t parse_atom() {
        if (eof()) fail("unexpected end of pattern");
        char c = cur();
        if (c == '(') {
            ++pos_;
            std::int32_t inner = parse_alt();
            if (eof() || cur() != ')') fail("missing ')'");
            ++pos_;
            return inner;
        }
        if (c == '.') {
            ++pos_;
            return class_node(mask_all(alphabet_));
        }
        if (c == '[') return parse_class();
        if (c == '*' || c == '+' || c == '?') fail("nothing to repeat");
        Mask m{};
        if (c == '\\') {
            Item item = parse_escape_item();
            if (item.single) {
                mask_set(m, item.byte);
            } else {
                m = item.mask;
            }
        } else {
            std::uint32_t byte = static_cast<unsigned char>(c);
            if (byte >= alphabet_) fail("character out of alphabet range");
            mask_set(m, byte);
            ++pos_;
        }
        return class_node(m);
    }

    std::int32_t class_node(const Mask& m) {
        return ast_.add({NodeKind::klass, -1, -1, ast_.add_class(m), 0, 0});
    }

    struct Item {
        bool single = true;
        std::uint32_t byte = 0;
        Mask mask{};
    };

    Item parse_escape_item() {
        // pos_ is at '\\'
        ++pos_;
        if (eof()) fail("dangling escape");
        char e = pat_[pos_++];
        Item item;
        auto klass = [&](const char* chars, bool negate) {
            item.single = false;
            for (const char* p = chars; *p; ++p)
                mask_set(item.mask, static_cast<unsigned char>(*p));
            if (negate) mask_complement(item.mask, alphabet_);
        };
        switch (e) {
            case 'n': item.byte = '\n'; break;
            case 't': item.byte = '\t'; break;
            case 'r': item.byte = '\r'; break;
            case 'f': item.byte = '\f'; break;
            case 'v': item.byte = '\v'; break;
            case 'a': item.byte = '\a'; break;
            case '0': item.byte = 0; break;
            case 'x': {
                if (pos_ + 1 >= pat_.size()) fail("bad \\x escape");
                auto hex = [&](char h) -> int {
                    if (h >= '0' && h <= '9') return h - '0';
                    if (h >= 'a' && h <= 'f') return h - 'a' + 10;
                    if (h >= 'A' && h <= 'F') return h - 'A' + 10;
                    fail("bad \\x escape");
                };
                item.byte = static_cast<std::uint32_t>(hex(pat_[pos_]) * 16 + hex(pat_[pos_ + 1]));
                pos_ += 2;
                break;
            }
            case 'd': klass("0123456789", false); break;
            case 'D': klass("0123456789", true); break;
            case 'w': klass("0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ_abcdefghijklmnopqrstuvwxyz", false); break;
            case 'W': klass("0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ_abcdefghijklmnopqrstuvwxyz", true); break;
            case 's': klass(" \t\n\r\f\v", false); break;
            case 'S': klass(" \t\n\r\f\v", true); break;
            default: item.byte = static_cast<unsigned char>(e); break;
        }
        if (item.single && item.byte >= alphabet_) fail("character out of alphabet range");
        return item;
    }

    std::int32_t parse_class() {
        // pos_ is at '['
        ++pos_;
        bool negate = false;
        if (!eof() && cur() == '^') {
            negate = true;
            ++pos_;
        }
        Mask m{};
        bool first = true;
        while (true) {
            if (eof()) fail("missing ']'");
            char c = cur();
            if (c == ']' && !first) {
                ++pos_;
                break;
            }
            first = false;
            Item item;
            if (c == '\\') {
                item = parse_escape_item();
            } else {
                item.byte = static_cast<unsigned char>(c);
                if (item.byte >= alphabet_) fail("character out of alphabet range");
                ++pos_;
            }
            if (item.single && !eof() && cur() == '-' && pos_ + 1 < pat_.size() &&
                pat_[pos_ + 1] != ']') {
                ++pos_;  // '-'
                Item high;
                if (cur() == '\\') {
                    high = parse_escape_item();
                } else {
                    high.byte = static_cast<unsigned char>(cur());
                    if (high.byte >= alphabet_) fail("character out of alphabet range");
                    ++pos_;
                }
                if (!high.single) fail("bad class range");
                if (high.byte < item.byte) fail("reversed class range");
                for (std::uint32_t b = item.byte; b <= high.byte; ++b) mask_set(m, b);
            } else if (item.single) {
                mask_set(m, item.byte);
            } else {
                mask_or(m, item.mask);
            }
        }
        if (negate) mask_complement(m, alphabet_);
        return class_node(m);
    }

    std::string_view pat_;
    std::size_t pos_ = 0;
    std::size_t rule_;
    std::uint32_t alphabet_;
    Ast& ast_;
};

// --- Thompson NFA ----------------------------------------------------------

struct NfaState {
    std::int32_t cls = -1;  // class transition when >= 0
    std::uint32_t target = kNone;
    std::uint32_t eps0 = kNone;
    std::uint32_t eps1 = kNone;
};

struct Nfa {
    std::vector<NfaState> states;
    std::vector<Mask> classes;

    std::uint32_t fresh() {
        if (states.size() >= kNfaCap) throw InputError("NFA too large: pattern set exceeds cap");
        states.push_back({});
        return static_cast<std::uint32_t>(states.size() - 1);
    }
};

// Dangling out-slot: (state << 2) | slot, slot 0 = target, 1 = eps0, 2 = eps1.
struct Frag {
    std::uint32_t start = kNone;
    std::vector<std::uint32_t> out;
};

class NfaBuilder {
public:
    NfaBuilder(Nfa& nfa, const Ast& ast) : nfa_(nfa), ast_(ast) {}

    Frag build(std::int32_t id) {
        const Node& nd = ast_.nodes[id];
        switch (nd.kind) {
            case NodeKind::klass: {
                std::uint32_t s = nfa_.fresh();
                nfa_.states[s].cls = nd.cls;
                return {s, {slot(s, 0)}};
            }
            case NodeKind::empty: {
                std::uint32_t s = nfa_.fresh();
                return {s, {slot(s, 1)}};
            }
            case NodeKind::concat: {
                Frag a = build(nd.a);
                Frag b = build(nd.b);
                patch(a.out, b.start);
                return {a.start, std::move(b.out)};
            }
            case NodeKind::alt: {
                Frag a = build(nd.a);
                Frag b = build(nd.b);
                std::uint32_t s = nfa_.fresh();
                nfa_.states[s].eps0 = a.start;
                nfa_.states[s].eps1 = b.start;
                Frag out{s, std::move(a.out)};
                out.out.insert(out.out.end(), b.out.begin(), b.out.end());
                return out;
            }
            case NodeKind::star: {
                Frag a = build(nd.a);
                std::uint32_t s = nfa_.fresh();
                nfa_.states[s].eps0 = a.start;
                patch(a.out, s);
                return {s, {slot(s, 2)}};
            }
            case NodeKind::plus: {
                Frag a = build(nd.a);
                std::uint32_t s = nfa_.fresh();
                nfa_.states[s].eps0 = a.start;
                patch(a.out, s);
                return {a.start, {slot(s, 2)}};
            }
            case NodeKind::opt: {
                Frag a = build(nd.a);
                std::uint32_t s = nfa_.fresh();
                nfa_.states[s].eps0 = a.start;
                Frag out{s, std::move(a.out)};
                out.out.push_back(slot(s, 2));
                return out;
            }
            case NodeKind::repeat: {
                std::uint32_t lo = nd.lo, hi = nd.hi;
                Frag acc;
                bool have = false;
                for (std::uint32_t i = 0; i < lo; ++i) append(acc, have, build(nd.a));
                if (hi == kInfRep) {
                    Frag a = build(nd.a);
                    std::uint32_t s = nfa_.fresh();
                    nfa_.states[s].eps0 = a.start;
                    patch(a.out, s);
                    append(acc, have, {s, {slot(s, 2)}});
                } else {
                    for (std::uint32_t i = lo; i < hi; ++i) {
                        Frag a = build(nd.a);
                        std::uint32_t s = nfa_.fresh();
                        nfa_.states[s].eps0 = a.start;
                        Frag optional{s, std::move(a.out)};
                        optional.out.push_back(slot(s, 2));
                        append(acc, have, std::move(optional));
                    }
                }
                if (!have) {  // {0} / {0,0}: the empty string
                    std::uint32_t s = nfa_.fresh();
                    return {s, {slot(s, 1)}};
                }
                return acc;
            }
        }
        throw IntegrityError("regex: bad AST node");
    }

    void patch(const std::vector<std::uint32_t>& out, std::uint32_t target) {
        for (std::uint32_t enc : out) {
            NfaState& st = nfa_.states[enc >> 2];
            switch (enc & 3) {
                case 0: st.target = target; break;
                case 1: st.eps0 = target; break;
                default: st.eps1 = target; break;
            }
        }
    }

private:
    static std::uint32_t slot(std::uint32_t state, std::uint32_t which) {
        return (state << 2) | which;
    }

    void append(Frag& acc, bool& have, Frag next) {
        if (!have) {
            acc = std::move(next);
            have = true;
        } else {
            patch(acc.out, next.start);
            acc.out = std::move(next.out);
        }
    }

    Nfa& nfa_;
    const Ast& ast_;
};

// --- Subset construction ---------------------------------------------------

struct VectorHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

class SubsetBuilder {
public:
    SubsetBuilder(const Nfa& nfa, std::uint32_t accept_state, std::uint32_t alphabet,
                  std::size_t cap)
        : nfa_(nfa),
          accept_(accept_state),
          alphabet_(alphabet),
          cap_(cap),
          stamp_(nfa.states.size(), kNone) {}

    Dfa run(std::uint32_t start_state) {
        std::vector<std::uint32_t> start{start_state};
        closure(start);
        Dfa dfa;
        dfa.alphabet_size = alphabet_;
        dfa.start = intern(std::move(start), dfa);

        std::vector<std::vector<std::uint32_t>> moves(alphabet_);
        std::map<std::vector<std::uint32_t>, StateId> move_cache;
        for (std::uint32_t id = 0; id < subsets_.size(); ++id) {
            for (auto& mv : moves) mv.clear();
            for (std::uint32_t s : subsets_[id]) {
                const NfaState& st = nfa_.states[s];
                if (st.cls < 0) continue;
                const Mask& mask = nfa_.classes[st.cls];
                for (std::uint32_t word = 0; word < 4; ++word) {
                    std::uint64_t bits = mask[word];
                    while (bits) {
                        std::uint32_t c = word * 64 +
                                          static_cast<std::uint32_t>(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        moves[c].push_back(st.target);
                    }
                }
            }
            move_cache.clear();
            StateId* row = dfa.transitions.data() + std::size_t(id) * alphabet_;
            for (std::uint32_t c = 0; c < alphabet_; ++c) {
                auto& mv = moves[c];
                std::sort(mv.begin(), mv.end());
                mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
                auto it = move_cache.find(mv);
                StateId next;
                if (it != move_cache.end()) {
                    next = it->second;
                } else {
                    std::vector<std::uint32_t> closed = mv;
                    closure(closed);
                    next = intern(std::move(closed), dfa);
                    row = dfa.transitions.data() + std::size_t(id) * alphabet_;  // may realloc
                    move_cache.emplace(mv, next);
                }
                row[c] = next;
            }
        }
        dfa.state_count = static_cast<std::uint32_t>(subsets_.size());
        return dfa;
    }

private:
    void closure(std::vector<std::uint32_t>& set) {
        ++epoch_;
        work_.assign(set.begin(), set.end());
        for (std::uint32_t s : work_) stamp_[s] = epoch_;
        set.clear();
        while (!work_.empty()) {
            std::uint32_t s = work_.back();
            work_.pop_back();
            set.push_back(s);
            const NfaState& st = nfa_.states[s];
            for (std::uint32_t e : {st.eps0, st.eps1}) {
                if (e != kNone && stamp_[e] != epoch_) {
                    stamp_[e] = epoch_;
                    work_.push_back(e);
                }
            }
        }
        std::sort(set.begin(), set.end());
    }

    StateId intern(std::vector<std::uint32_t> subset, Dfa& dfa) {
        auto it = ids_.find(subset);
        if (it != ids_.end()) return it->second;
        if (subsets_.size() >= cap_)
            throw InputError("DFA blow-up: state cap " + std::to_string(cap_) + " exceeded");
        StateId id = static_cast<StateId>(subsets_.size());
        bool accepting = std::binary_search(subset.begin(), subset.end(), accept_);
        ids_.emplace(subset, id);
        subsets_.push_back(std::move(subset));
        dfa.transitions.resize(dfa.transitions.size() + alphabet_, 0);
        dfa.accepting.push_back(accepting);
        return id;
    }

    const Nfa& nfa_;
    std::uint32_t accept_;
    std::uint32_t alphabet_;
    std::size_t cap_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> work_;
    std::unordered_map<std::vector<std::uint32_t>, StateId, VectorHash> ids_;
    std::vector<std::vector<std::uint32_t>> subsets_;
};

Dfa single_sink_dfa(std::uint32_t alphabet) {
    Dfa dfa;
    dfa.state_count = 1;
    dfa.alphabet_size = alphabet;
    dfa.start = 0;
    dfa.accepting.assign(1, false);
    dfa.transitions.assign(alphabet, 0);
    return dfa;
}

}  // namespace

Dfa compile_regex_set(const std::vector<std::string>& rules, std::uint32_t alphabet_size,
                      const CompileOptions& opts) {
    if (alphabet_size == 0 || alphabet_size > 256)
        throw InputError("compile: alphabet size must be in [1, 256]");
    if (rules.empty()) return single_sink_dfa(alphabet_size);

    Ast ast;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        PatternParser parser(rules[i], i, alphabet_size, ast);
        ast.roots.push_back(parser.parse());
    }

    Nfa nfa;
    nfa.classes = ast.classes;
    NfaBuilder builder(nfa, ast);
    std::vector<Frag> frags;
    frags.reserve(ast.roots.size());
    for (std::int32_t root : ast.roots) frags.push_back(builder.build(root));

    std::uint32_t accept = nfa.fresh();
    for (auto& frag : frags) builder.patch(frag.out, accept);

    std::uint32_t start = frags[0].start;
    for (std::size_t i = 1; i < frags.size(); ++i) {
        std::uint32_t s = nfa.fresh();
        nfa.states[s].eps0 = start;
        nfa.states[s].eps1 = frags[i].start;
        start = s;
    }

    SubsetBuilder subset(nfa, accept, alphabet_size, opts.state_cap);
    Dfa dfa = subset.run(start);
    if (opts.minimize) dfa = minimize_dfa(dfa);
    return dfa;
}

Dfa minimize_dfa(const Dfa& dfa) {
    const std::uint32_t n = dfa.state_count;
    const std::uint32_t m = dfa.alphabet_size;
    if (n <= 1) return dfa;

    // Inverse transitions, CSR keyed by (target, char).
    std::vector<std::uint32_t> inv_count(std::size_t(n) * m + 1, 0);
    for (StateId u = 0; u < n; ++u) {
        auto row = dfa.row(u);
        for (std::uint32_t c = 0; c < m; ++c) ++inv_count[std::size_t(row[c]) * m + c + 1];
    }
    for (std::size_t i = 1; i < inv_count.size(); ++i) inv_count[i] += inv_count[i - 1];
    std::vector<std::uint32_t> inv_data(std::size_t(n) * m);
    {
        std::vector<std::uint32_t> cursor(inv_count.begin(), inv_count.end() - 1);
        for (StateId u = 0; u < n; ++u) {
            auto row = dfa.row(u);
            for (std::uint32_t c = 0; c < m; ++c)
                inv_data[cursor[std::size_t(row[c]) * m + c]++] = u;
        }
    }

    // Partition refinement state.
    std::vector<std::uint32_t> elems(n), loc(n), block_of(n, 0);
    std::vector<std::uint32_t> bbegin, bend, bmarked;
    std::vector<char> in_work;  // block * m + c
    std::vector<std::pair<std::uint32_t, std::uint32_t>> work;

    std::uint32_t acc_count = 0;
    for (StateId u = 0; u < n; ++u) acc_count += dfa.accepting[u];
    std::uint32_t pos_acc = 0, pos_rej = acc_count;  // accepting first
    for (StateId u = 0; u < n; ++u) {
        std::uint32_t at = dfa.accepting[u] ? pos_acc++ : pos_rej++;
        elems[at] = u;
        loc[u] = at;
    }
    auto add_block = [&](std::uint32_t begin, std::uint32_t end) {
        std::uint32_t id = static_cast<std::uint32_t>(bbegin.size());
        bbegin.push_back(begin);
        bend.push_back(end);
        bmarked.push_back(0);
        in_work.resize(in_work.size() + m, 0);
        for (std::uint32_t i = begin; i < end; ++i) block_of[elems[i]] = id;
        return id;
    };
    auto push_work = [&](std::uint32_t block, std::uint32_t c) {
        if (!in_work[std::size_t(block) * m + c]) {
            in_work[std::size_t(block) * m + c] = 1;
            work.emplace_back(block, c);
        }
    };

    if (acc_count == 0 || acc_count == n) {
        add_block(0, n);
    } else {
        std::uint32_t a = add_block(0, acc_count);
        std::uint32_t b = add_block(acc_count, n);
        std::uint32_t smaller = (acc_count <= n - acc_count) ? a : b;
        for (std::uint32_t c = 0; c < m; ++c) push_work(smaller, c);
    }

    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> splitter_elems;
    while (!work.empty()) {
        auto [splitter, c] = work.back();
        work.pop_back();
        in_work[std::size_t(splitter) * m + c] = 0;

        // Marking below swaps elems around, possibly inside the splitter
        // block itself, so iterate over a snapshot.
        splitter_elems.assign(elems.begin() + bbegin[splitter], elems.begin() + bend[splitter]);
        touched.clear();
        for (std::uint32_t t : splitter_elems) {
            std::size_t key = std::size_t(t) * m + c;
            for (std::uint32_t j = inv_count[key]; j < inv_count[key + 1]; ++j) {
                std::uint32_t u = inv_data[j];
                std::uint32_t b = block_of[u];
                if (bmarked[b] == 0) touched.push_back(b);
                std::uint32_t dst = bbegin[b] + bmarked[b];
                std::uint32_t at = loc[u];
                if (at != dst) {
                    std::swap(elems[at], elems[dst]);
                    loc[elems[at]] = at;
                    loc[elems[dst]] = dst;
                }
                ++bmarked[b];
            }
        }
        for (std::uint32_t b : touched) {
            std::uint32_t marked = bmarked[b];
            bmarked[b] = 0;
            if (marked == bend[b] - bbegin[b]) continue;  // nothing split off
            // Marked part becomes a new block; b keeps the rest.
            std::uint32_t mid = bbegin[b] + marked;
            std::uint32_t fresh = add_block(bbegin[b], mid);
            bbegin[b] = mid;
            std::uint32_t small_block =
                (mid - bbegin[fresh] <= bend[b] - mid) ? fresh : b;
            for (std::uint32_t cc = 0; cc < m; ++cc) {
                if (in_work[std::size_t(b) * m + cc])
                    push_work(fresh, cc);
                else
                    push_work(small_block, cc);
            }
        }
    }

    // Rebuild with blocks numbered by their smallest member.
    const std::uint32_t block_count = static_cast<std::uint32_t>(bbegin.size());
    std::vector<std::uint32_t> min_member(block_count, kNone);
    for (StateId u = 0; u < n; ++u)
        min_member[block_of[u]] = std::min(min_member[block_of[u]], u);
    std::vector<std::uint32_t> order(block_count);
    for (std::uint32_t b = 0; b < block_count; ++b) order[b] = b;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return min_member[a] < min_member[b]; });
    std::vector<std::uint32_t> renumber(block_count);
    for (std::uint32_t i = 0; i < block_count; ++i) renumber[order[i]] = i;

    Dfa out;
    out.state_count = block_count;
    out.alphabet_size = m;
    out.start = renumber[block_of[dfa.start]];
    out.accepting.assign(block_count, false);
    out.transitions.resize(std::size_t(block_count) * m);
    for (std::uint32_t i = 0; i < block_count; ++i) {
        std::uint32_t rep = min_member[order[i]];
        out.accepting[i] = dfa.accepting[rep];
        auto row = dfa.row(rep);
        StateId* out_row = out.transitions.data() + std::size_t(i) * m;
        for (std::uint32_t c = 0; c < m; ++c) out_row[c] = renumber[block_of[row[c]]];
    }
    return out;
}

RuleFile parse_rule_text(std::string_view text) {
    RuleFile out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        if (line[first] == '#') continue;
        out.patterns.emplace_back(line.substr(first));
        out.lines.push_back(line_no);
    }
    return out;
}

RuleFile read_rule_file(const std::string& path) {
    return parse_rule_text(detail::read_file(path));
}

}  // namespace ddfa
