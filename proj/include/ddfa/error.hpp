#pragma once

#include <stdexcept>
#include <string>

namespace ddfa {

// Bad inputs: unreadable files, malformed formats, invalid parameters.
// The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failures: corrupt D2FA, failed equivalence check.
// The CLI maps these to exit code 2.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Pattern syntax error, carrying the rule index and the byte offset of the
// offending character within that rule.
class RegexSyntaxError : public InputError {
public:
    RegexSyntaxError(std::size_t rule_index, std::size_t offset, const std::string& msg)
        : InputError("rule " + std::to_string(rule_index) + ", offset " +
                     std::to_string(offset) + ": " + msg),
          rule_index_(rule_index),
          offset_(offset) {}

    std::size_t rule_index() const { return rule_index_; }
    std::size_t offset() const { return offset_; }

private:
    std::size_t rule_index_;
    std::size_t offset_;
};

}  // namespace ddfa
