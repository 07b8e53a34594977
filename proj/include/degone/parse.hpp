#ifndef DEGONE_PARSE_HPP
#define DEGONE_PARSE_HPP

// Text grammar for polynomials and field elements.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor | factor)*     juxtaposition multiplies
//   factor  := ('+' | '-') factor | power
//   power   := atom ('^' digits)?
//   atom    := digits ('/' digits)? | 'x' | 't' | 'theta' | '(' expr ')'
//
// 'x' is the polynomial variable and 't' (or 'theta') the field generator.
// Division is only allowed by nonzero constants.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "poly.hpp"

namespace degone {

/// Sparse polynomial in x and t with rational coefficients; keys are (deg_x, deg_t).
class BiPoly {
   public:
    std::map<std::pair<int, int>, Rat> terms;

    static BiPoly constant(const Rat& c) {
        BiPoly p;
        if (c != 0) p.terms[{0, 0}] = c;
        return p;
    }
    static BiPoly var(int dx, int dt) {
        BiPoly p;
        p.terms[{dx, dt}] = 1;
        return p;
    }
    bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first == std::pair{0, 0}); }
    Rat constant_value() const { return terms.empty() ? Rat(0) : terms.begin()->second; }
    int max_x() const {
        int m = -1;
        for (const auto& [k, v] : terms) m = std::max(m, k.first);
        return m;
    }
    int max_t() const {
        int m = -1;
        for (const auto& [k, v] : terms) m = std::max(m, k.second);
        return m;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, v] : o.terms) {
            Rat s = terms[k] + v;
            if (s == 0)
                terms.erase(k);
            else
                terms[k] = s;
        }
        return *this;
    }
    BiPoly operator-() const {
        BiPoly r = *this;
        for (auto& [k, v] : r.terms) v = -v;
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (const auto& [ka, va] : a.terms)
            for (const auto& [kb, vb] : b.terms) {
                std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
                Rat s = r.terms[k] + va * vb;
                if (s == 0)
                    r.terms.erase(k);
                else
                    r.terms[k] = s;
            }
        return r;
    }
};

namespace detail {

class Parser {
   public:
    explicit Parser(std::string_view s) : s_(s) {}

    BiPoly parse_all() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
        BiPoly r = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

   private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 't';
    }

    BiPoly expr() {
        BiPoly r = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                r += term();
            } else if (peek('-')) {
                ++pos_;
                r += -term();
            } else {
                return r;
            }
        }
    }

    BiPoly term() {
        BiPoly r = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                r = r * factor();
            } else if (peek('/')) {
                std::size_t at = ++pos_;
                BiPoly d = factor();
                if (!d.is_constant() || d.constant_value() == 0)
                    throw ParseError("division by a non-constant or zero", at);
                r = r * BiPoly::constant(1 / d.constant_value());
            } else if (starts_atom()) {
                r = r * factor();
            } else {
                return r;
            }
        }
    }

    BiPoly factor() {
        if (peek('-')) {
            ++pos_;
            return -factor();
        }
        if (peek('+')) {
            ++pos_;
            return factor();
        }
        return power();
    }

    BiPoly power() {
        BiPoly base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected exponent", start);
            long e = std::stol(std::string(s_.substr(start, pos_ - start)));
            if (e > 4096) throw ParseError("exponent too large", start);
            BiPoly r = BiPoly::constant(1);
            for (long i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    BiPoly atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            BiPoly r = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return BiPoly::constant(Rat(Int(std::string(s_.substr(start, pos_ - start)))));
        }
        if (s_.substr(pos_, 5) == "theta") {
            pos_ += 5;
            return BiPoly::var(0, 1);
        }
        if (c == 't') {
            ++pos_;
            return BiPoly::var(0, 1);
        }
        if (c == 'x') {
            ++pos_;
            return BiPoly::var(1, 0);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline BiPoly parse_bipoly(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Polynomial in x with rational coefficients ("x^2 - x - 1").
inline QPoly parse_qpoly(std::string_view text) {
    BiPoly b = parse_bipoly(text);
    if (b.max_t() > 0) throw ParseError("generator 't' not allowed here", 0);
    std::vector<Rat> c(std::max(b.max_x(), 0) + 1, Rat(0));
    for (const auto& [k, v] : b.terms) c[k.first] = v;
    return QPoly(std::move(c));
}

/// Polynomial in x with integer coefficients.
inline ZPoly parse_zpoly(std::string_view text) {
    QPoly q = parse_qpoly(text);
    std::vector<Int> c;
    for (const auto& a : q.coeffs()) {
        if (a.get_den() != 1) throw ParseError("integer coefficients required", 0);
        c.push_back(a.get_num());
    }
    return ZPoly(std::move(c));
}

}  // namespace degone

#endif
