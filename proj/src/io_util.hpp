#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "ddfa/error.hpp"

namespace ddfa::detail {

// Token stream over a line-oriented text format; '#' starts a comment that
// runs to end of line.
class TokenReader {
public:
    TokenReader(std::string_view text, std::string origin)
        : text_(text), origin_(std::move(origin)) {}

    bool next(std::string_view& tok) {
        if (!peeked_.empty()) {
            tok = peeked_;
            peeked_ = {};
            return true;
        }
        return scan(tok);
    }

    // Returns the next token without consuming it; empty view at EOF.
    std::string_view peek() {
        if (peeked_.empty()) {
            std::string_view tok;
            if (scan(tok)) peeked_ = tok;
        }
        return peeked_;
    }

    std::string_view expect(const char* what) {
        std::string_view tok;
        if (!next(tok)) fail(std::string("unexpected end of input, expected ") + what);
        return tok;
    }

    std::uint64_t expect_uint(const char* what, std::uint64_t max_value) {
        std::string_view tok = expect(what);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            fail(std::string("expected ") + what + ", got '" + std::string(tok) + "'");
        if (value > max_value)
            fail(std::string(what) + " " + std::to_string(value) + " out of range");
        return value;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(origin_ + ": " + msg);
    }

private:
    bool scan(std::string_view& tok) {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) return false;
        std::size_t begin = pos_;
        while (pos_ < text_.size() &&
               !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '#')
            ++pos_;
        tok = text_.substr(begin, pos_ - begin);
        return true;
    }

    std::string_view text_;
    std::string origin_;
    std::size_t pos_ = 0;
    std::string_view peeked_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out << data;
    if (!out) throw InputError("write failed: " + path);
}

}  // namespace ddfa::detail
