#pragma once

#include <cctype>
#include <string>

#include "diffalg/poly.hpp"

namespace diffalg {

// Recursive-descent parser for the polynomial grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' nat]
//   base   := nat ['/' nat] | identifier | '(' expr ')'
// Whitespace is insignificant.  '/' is only allowed between integer
// literals (rational constants); exponents are non-negative integers.
template <class K> class PolyParser {
public:
    PolyParser(const std::string& text, const Ring<K>& ring) : s_(text), ring_(ring) {}

    Poly<K> parse() {
        Poly<K> p = expr();
        skip_ws();
        if (pos_ < s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    Poly<K> expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Poly<K> acc = term();
        if (neg) acc = -acc;
        while (true) {
            char c = peek();
            if (c == '+') { ++pos_; acc += term(); }
            else if (c == '-') { ++pos_; acc -= term(); }
            else break;
        }
        return acc;
    }

    Poly<K> term() {
        Poly<K> acc = factor();
        while (eat('*')) acc *= factor();
        if (peek() == '/') throw ParseError("'/' is only allowed between integer literals", pos_);
        return acc;
    }

    Poly<K> factor() {
        Poly<K> b = base();
        if (eat('^')) {
            std::size_t at = pos_;
            char c = peek();
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("exponent must be a non-negative integer", at);
            unsigned long e = natural();
            if (e > limits().max_degree) throw ResourceError("exponent exceeds degree cap");
            b = b.pow(static_cast<std::uint32_t>(e));
        }
        return b;
    }

    Poly<K> base() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly<K> p = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            K num = K::from_digits(ring_.ctx(), digits());
            if (peek() == '/') {
                ++pos_;
                std::size_t at = pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw ParseError("expected integer denominator", at);
                K den = K::from_digits(ring_.ctx(), digits());
                if (den.is_zero()) throw ParseError("zero denominator", at);
                num = num / den;
            }
            return Poly<K>::constant(ring_, num);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name = ident();
            int idx = ring_.var_index(name);
            if (idx < 0) throw ParseError("unknown variable '" + name + "'", at);
            return Poly<K>::variable(ring_, static_cast<std::size_t>(idx));
        }
        throw ParseError("expected a number, variable, or '('", pos_);
    }

    std::string digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }
    unsigned long natural() {
        std::size_t at = pos_;
        std::string d = digits();
        if (d.size() > 9) throw ParseError("integer too large here", at);
        return std::stoul(d);
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    const std::string& s_;
    const Ring<K>& ring_;
    std::size_t pos_ = 0;
};

template <class K> Poly<K> parse_poly(const std::string& text, const Ring<K>& ring) {
    return PolyParser<K>(text, ring).parse();
}

// Parse a ';'-separated list of polynomials (empty text -> empty list).
template <class K> std::vector<Poly<K>> parse_poly_list(const std::string& text, const Ring<K>& ring) {
    std::vector<Poly<K>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        std::string piece = text.substr(start, end - start);
        bool blank = true;
        for (char ch : piece)
            if (!std::isspace(static_cast<unsigned char>(ch))) { blank = false; break; }
        if (!blank) out.push_back(parse_poly(piece, ring));
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

} // namespace diffalg
