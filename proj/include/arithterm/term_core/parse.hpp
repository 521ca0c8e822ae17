#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "term.hpp"

namespace arithterm {

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Term parse_all() {
        Term t = term();
        if (pos_ != s_.size()) throw SyntaxError(pos_, "trailing input");
        return t;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    void expect(char c) {
        if (peek() != c) throw SyntaxError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (!at_end() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (pos_ == start) throw SyntaxError(start, "expected a number");
        std::string d(s_.substr(start, pos_ - start));
        if (d.size() > 1 && d[0] == '0') throw SyntaxError(start, "leading zero");
        return d;
    }

    Term term() {
        if (at_end()) throw SyntaxError(pos_, "unexpected end of input");
        if (peek() != '(') return cnst(Nat(digits()));
        std::size_t open = pos_;
        ++pos_;
        std::size_t op_start = pos_;
        while (!at_end() && s_[pos_] != ' ' && s_[pos_] != ')' && s_[pos_] != '(') ++pos_;
        std::string op(s_.substr(op_start, pos_ - op_start));
        if (op.empty()) throw SyntaxError(op_start, "missing operator");
        expect(' ');
        if (op == "var") {
            std::size_t at = pos_;
            std::string d = digits();
            if (d.size() > 9) throw SyntaxError(at, "variable index too large");
            expect(')');
            return var(static_cast<std::uint32_t>(std::stoul(d)));
        }
        if (op == "hw") {
            Term a = term();
            expect(')');
            return hw(a);
        }
        Kind k;
        if (op == "+") k = Kind::Add;
        else if (op == "monus") k = Kind::Monus;
        else if (op == "div") k = Kind::FloorDiv;
        else if (op == "pow") k = Kind::Pow;
        else if (op == "*") k = Kind::Mul;
        else if (op == "mod") k = Kind::Mod;
        else if (op == "max") k = Kind::Max;
        else if (op == "gcd") k = Kind::Gcd;
        else throw UnknownOperator(open + 1, op);
        Term a = term();
        expect(' ');
        Term b = term();
        expect(')');
        return make_binary(k, a, b);
    }
};

}  // namespace detail

inline Term parse_term(std::string_view text) { return detail::Parser(text).parse_all(); }

}  // namespace arithterm
