#pragma once

// Recursive-descent parser shared by MotClass and Laurent polynomial text.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' ['-'] integer)?
//   atom  := integer | 'L' | '[' name ']' | identifier | '(' expr ')'
//
// Division and negative powers are only accepted for units. Identifiers other than L are
// handed to the value policy (series variables); MotClass rejects them.

#include "mot_class.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace mhz {

namespace detail {

struct MotPolicy {
    using value_type = MotClass;
    static MotClass constant(const MotClass& c) { return c; }
    static MotClass variable(const std::string& name)
    {
        throw ValidationError("unexpected variable '" + name + "' in class expression");
    }
    static MotClass divide(const MotClass& a, const MotClass& b) { return a / b; }
    static MotClass power(const MotClass& a, int e) { return a.pow(e); }
};

template <class Policy>
class ExprParser {
public:
    using V = typename Policy::value_type;

    ExprParser(std::string_view s, const Policy& policy) : s_(s), policy_(policy) {}

    V parse()
    {
        V v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected character");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ValidationError("cannot parse '" + std::string(s_) + "': " + what + " at offset " +
                              std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    V expr()
    {
        V v = term();
        for (;;) {
            if (eat('+')) {
                v = v + term();
            } else if (eat('-')) {
                v = v - term();
            } else {
                return v;
            }
        }
    }

    V term()
    {
        V v = unary();
        for (;;) {
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                v = policy_.divide(v, unary());
            } else {
                return v;
            }
        }
    }

    V unary()
    {
        if (eat('-')) {
            return -unary();
        }
        return power();
    }

    V power()
    {
        V base = atom();
        if (!eat('^')) {
            return base;
        }
        const bool neg = eat('-');
        Int e = integer();
        if (e > 100000) {
            fail("exponent too large");
        }
        const int k = static_cast<int>(e);
        return policy_.power(base, neg ? -k : k);
    }

    Int integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer");
        }
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    V atom()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end of input");
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return policy_.constant(MotClass(integer()));
        }
        if (c == '[') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != ']') {
                ++pos_;
            }
            if (pos_ >= s_.size() || pos_ == start) {
                fail("malformed symbol");
            }
            std::string name(s_.substr(start, pos_ - start));
            ++pos_;
            return policy_.constant(MotClass::symbol(name));
        }
        if (c == '(') {
            ++pos_;
            V v = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) {
                ++pos_;
            }
            const std::string name(s_.substr(start, pos_ - start));
            if (name == "L") {
                return policy_.constant(MotClass::L());
            }
            return policy_.variable(name);
        }
        fail("unexpected character");
    }

    std::string_view s_;
    const Policy& policy_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline MotClass parse_mot(std::string_view text)
{
    detail::MotPolicy policy;
    return detail::ExprParser<detail::MotPolicy>(text, policy).parse();
}

} // namespace mhz
