#pragma once

// Text form of polynomials over Q(zeta_N):
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := base ('^' nat)?
//   base   := rational | 'z' nat | 'x' nat | '(' expr ')'
//
// z m is e^(2 pi i / m) and x i the i-th coordinate (1-based). The printer
// emits a canonical form that parses back to the same polynomial and prints
// identically.

#include <cctype>
#include <string>
#include <string_view>

#include "torsion/poly.hpp"

namespace torsion {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view s, std::size_t n) : s_(s), n_(n) {}

    MPoly run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        MPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error("syntax", "position " + std::to_string(pos_) + ": " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'z' || c == '(';
    }
    mpz_class digits() {
        skip();
        const std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected a number");
        return mpz_class(std::string(s_.substr(b, pos_ - b)));
    }
    long small_nat(const char* what) {
        const std::size_t at = pos_;
        const mpz_class v = digits();
        if (v > 1000000000) {
            pos_ = at;
            fail(std::string(what) + " is too large");
        }
        return v.get_si();
    }

    MPoly expr() {
        bool neg = false;
        if (peek('+') || peek('-')) neg = s_[pos_++] == '-';
        MPoly r = term();
        if (neg) r = -r;
        while (peek('+') || peek('-')) {
            const bool minus = s_[pos_++] == '-';
            MPoly t = term();
            r = minus ? r - t : r + t;
        }
        return r;
    }
    MPoly term() {
        MPoly r = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                r = r * factor();
            } else if (starts_factor()) {
                r = r * factor();
            } else {
                return r;
            }
        }
    }
    MPoly factor() {
        MPoly b = base();
        if (peek('^')) {
            ++pos_;
            skip();
            b = b.pow(static_cast<int>(small_nat("exponent")));
        }
        return b;
    }
    MPoly base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const mpz_class num = digits();
            mpz_class den = 1;
            if (peek('/')) {
                ++pos_;
                const std::size_t at = pos_;
                den = digits();
                if (den == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
            }
            mpq_class q(num, den);
            q.canonicalize();
            return MPoly::constant(n_, CycloNum(q));
        }
        if (c == 'z') {
            ++pos_;
            const std::size_t at = pos_;
            const long m = small_nat("root order");
            if (m == 0) {
                pos_ = at;
                fail("z0 is not a root of unity");
            }
            return MPoly::constant(n_, CycloNum::zeta(1, m));
        }
        if (c == 'x') {
            ++pos_;
            const std::size_t at = pos_;
            const long i = small_nat("variable index");
            if (i < 1 || static_cast<std::size_t>(i) > n_) {
                pos_ = at;
                fail("variable x" + std::to_string(i) + " outside x1..x" + std::to_string(n_));
            }
            return MPoly::variable(n_, static_cast<std::size_t>(i - 1));
        }
        if (c == '(') {
            ++pos_;
            MPoly r = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return r;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

inline std::string monomial_text(const Exponent& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i + 1);
        if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

}  // namespace detail

inline MPoly parse_poly(std::string_view text, std::size_t nvars) {
    if (nvars == 0) throw Error("domain", "at least one variable is required");
    return detail::PolyParser(text, nvars).run();
}

/// Canonical text of a cyclotomic number: a rational, or a sum of
/// q * zN^i over the power basis of its minimal field.
inline std::string to_text(const CycloNum& x) {
    const CycloNum r = x.reduced();
    if (auto q = r.as_rational()) return q->get_str();
    const std::string z = "z" + std::to_string(r.conductor());
    std::string out;
    for (std::size_t i = 0; i < r.dim(); ++i) {
        mpq_class q = r.coeff(i);
        if (q == 0) continue;
        const bool neg = q < 0;
        if (neg) q = -q;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0) {
            out += q.get_str();
            continue;
        }
        if (q != 1) out += q.get_str() + "*";
        out += z;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

/// Canonical text of a polynomial, terms in decreasing lexicographic order.
inline std::string to_text(const MPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const std::string mono = detail::monomial_text(it->first);
        const CycloNum c = it->second.reduced();
        std::string piece;
        bool neg = false;
        if (auto q = c.as_rational()) {
            neg = *q < 0;
            const mpq_class a = neg ? mpq_class(-*q) : *q;
            if (mono.empty())
                piece = a.get_str();
            else if (a == 1)
                piece = mono;
            else
                piece = a.get_str() + "*" + mono;
        } else {
            piece = "(" + to_text(c) + ")";
            if (!mono.empty()) piece += "*" + mono;
        }
        if (out.empty())
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

}  // namespace torsion
