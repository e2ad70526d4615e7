#pragma once

// Sparse multivariate polynomials over cyclotomic fields, the coordinate
// twists used by the descent (sign twists, squaring, Galois action on the
// coefficients), exact evaluation at torsion points and binomial detection.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "torsion/cyclo.hpp"

namespace torsion {

using Exponent = std::vector<int>;

class MPoly {
public:
    using TermMap = std::map<Exponent, CycloNum>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const CycloNum& c) {
        MPoly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static MPoly variable(std::size_t nvars, std::size_t i) {
        Exponent e(nvars, 0);
        e.at(i) = 1;
        return monomial(nvars, e, CycloNum(1L));
    }
    static MPoly monomial(std::size_t nvars, const Exponent& e, const CycloNum& c) {
        MPoly p(nvars);
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && is_zero_exp(terms_.begin()->first)); }

    /// Adds c * x^e, dropping the term if it cancels.
    void add_term(const Exponent& e, const CycloNum& c) {
        if (e.size() != nvars_) throw Error("domain", "exponent length does not match the number of variables");
        for (int v : e)
            if (v < 0) throw Error("domain", "negative exponent");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    CycloNum coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? CycloNum() : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }
    int degree(std::size_t var) const {
        int d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, e.at(var));
        return d;
    }
    Exponent multidegree() const {
        Exponent m(nvars_, 0);
        for (auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::max(m[i], e[i]);
        return m;
    }
    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        for (auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    /// lcm of the stored coefficient conductors.
    i64 conductor() const {
        i64 N = 1;
        for (auto& [e, c] : terms_) N = lcm(N, c.conductor());
        return N;
    }
    /// lcm of the minimal conductors of the coefficients.
    i64 field_conductor() const {
        i64 N = 1;
        for (auto& [e, c] : terms_) N = lcm(N, c.minimal_conductor());
        return N;
    }
    /// All coefficients re-expressed in Q(zeta_M).
    MPoly lifted(i64 M) const {
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, c.embed(M));
        return r;
    }
    /// All coefficients at their minimal conductors.
    MPoly reduced() const {
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, c.reduced());
        return r;
    }

    /// Lexicographically largest exponent and its coefficient.
    const std::pair<const Exponent, CycloNum>& leading_term() const {
        if (terms_.empty()) throw Error("domain", "leading term of the zero polynomial");
        return *terms_.rbegin();
    }
    /// Scaled so that the leading coefficient is 1.
    MPoly monic() const {
        if (is_zero()) return *this;
        return *this * leading_term().second.inv();
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        check_same(a, b);
        MPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        check_same(a, b);
        MPoly r(a.nvars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                Exponent e(a.nvars_);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const MPoly& a, const CycloNum& s) {
        MPoly r(a.nvars_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    MPoly pow(int k) const {
        MPoly r = constant(nvars_, CycloNum(1L));
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    static std::optional<MPoly> divide(const MPoly& a, const MPoly& b) {
        check_same(a, b);
        if (b.is_zero()) throw Error("division_by_zero", "division by the zero polynomial");
        const auto& [lb, cb] = b.leading_term();
        const CycloNum cb_inv = cb.inv();
        MPoly q(a.nvars_), r = a;
        while (!r.is_zero()) {
            const auto [lr, cr] = r.leading_term();
            Exponent e(a.nvars_);
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = lr[i] - lb[i];
                if (e[i] < 0) return std::nullopt;
            }
            MPoly t = monomial(a.nvars_, e, cr * cb_inv);
            q = q + t;
            r = r - t * b;
        }
        return q;
    }

    /// Removes the largest monomial dividing every term; returns (f / x^m, m).
    std::pair<MPoly, Exponent> content_strip() const {
        Exponent m(nvars_, 0);
        if (terms_.empty()) return {*this, m};
        bool first = true;
        for (auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
            first = false;
        }
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) {
            Exponent s(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) s[i] = e[i] - m[i];
            r.terms_.emplace(s, c);
        }
        return {r, m};
    }

    /// f(eta o x) for eta in {+1,-1}^n.
    MPoly twist_signs(const std::vector<int>& eta) const {
        if (eta.size() != nvars_) throw Error("domain", "sign vector length does not match the number of variables");
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) {
            int s = 1;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (eta[i] == -1 && (e[i] & 1)) s = -s;
            r.terms_.emplace(e, s > 0 ? c : -c);
        }
        return r;
    }

    /// f(xi_1 x_1, ..., xi_n x_n) for a torsion point xi.
    MPoly twist_torsion(const TorsionPoint& xi) const {
        if (xi.size() != nvars_) throw Error("domain", "twist length does not match the number of variables");
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) r.add_term(e, c * CycloNum::root(monomial_value(xi, e)));
        return r;
    }

    /// f(x_1^2, ..., x_n^2).
    MPoly twist_square() const {
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) {
            Exponent d(e);
            for (int& v : d) v *= 2;
            r.terms_.emplace(d, c);
        }
        return r;
    }

    /// f^s: the automorphism applied coefficientwise.
    MPoly twist_galois(const GaloisAut& s) const {
        if (s.conductor() % conductor() != 0)
            throw Error("domain", "polynomial conductor " + std::to_string(conductor()) +
                                      " does not divide automorphism conductor " + std::to_string(s.conductor()));
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, c.apply(s));
        return r;
    }

    /// f(x^B): substitute x_i -> prod_j y_j^{B[i][j]} (B has nvars rows,
    /// `new_vars` columns, nonnegative entries).
    MPoly substitute_monomials(const std::vector<std::vector<int>>& B, std::size_t new_vars) const {
        MPoly r(new_vars);
        for (auto& [e, c] : terms_) {
            Exponent d(new_vars, 0);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::size_t j = 0; j < new_vars; ++j) d[j] += e[i] * B[i][j];
            r.add_term(d, c);
        }
        return r;
    }

    /// Exact value at a torsion point, in Q(zeta_M) with M = lcm(conductor, orders).
    CycloNum evaluate(const TorsionPoint& w) const {
        if (w.size() != nvars_) throw Error("domain", "point dimension does not match the number of variables");
        i64 L = conductor();
        for (auto& r : w) L = lcm(L, normalize_conductor(r.ord()));
        RootSum acc(L);
        for (auto& [e, c] : terms_) acc.add(c, monomial_value(w, e));
        return acc.value();
    }

    /// Image of f(w) in F_p; nullopt if some coefficient denominator vanishes mod p.
    /// pr.order must be a multiple of every coefficient conductor and point order.
    std::optional<u64> evaluate_mod(const TorsionPoint& w, const PrimeRoot& pr) const {
        u64 acc = 0;
        for (auto& [e, c] : terms_) {
            auto ci = c.image(pr);
            if (!ci) return std::nullopt;
            const RootOfUnity r = monomial_value(w, e);
            const u64 rv = pr.power(r.num() * (static_cast<i64>(pr.order) / r.ord()));
            acc = (acc + mulmod(*ci, rv, pr.p)) % pr.p;
        }
        return acc;
    }

private:
    static bool is_zero_exp(const Exponent& e) {
        for (int v : e)
            if (v != 0) return false;
        return true;
    }
    static void check_same(const MPoly& a, const MPoly& b) {
        if (a.nvars_ != b.nvars_) throw Error("domain", "polynomials have different numbers of variables");
    }

    std::size_t nvars_;
    TermMap terms_;
};

/// Evaluation semantics at a torsion point (exact).
inline CycloNum evaluate_at_torsion(const MPoly& f, const TorsionPoint& w) { return f.evaluate(w); }

// ---------------------------------------------------------------------------
// Binomials

struct NotBinomial {};
/// Z(f) = union over the g-th roots c' of c of the cosets { x : x^lambda = c' }.
struct TorsionBinomial {
    Exponent lambda;  // primitive, first nonzero entry positive
    RootOfUnity c;
    int multiplicity = 1;
};
/// -b/a is not a root of unity; Z(f) has no torsion points.
struct NonTorsionBinomial {
    Exponent lambda;
    int multiplicity = 1;
};
using BinomialClass = std::variant<NotBinomial, TorsionBinomial, NonTorsionBinomial>;

inline BinomialClass binomial_classify(const MPoly& f) {
    const MPoly g = f.content_strip().first;
    if (g.size() != 2) return NotBinomial{};
    auto it = g.terms().begin();
    const auto& [v, b] = *it++;
    const auto& [u, a] = *it;  // u > v lexicographically
    Exponent diff(g.nvars());
    int gg = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = u[i] - v[i];
        gg = static_cast<int>(gcd(gg, diff[i]));
    }
    for (int& d : diff) d /= gg;
    const CycloNum ratio = -(b / a);
    if (auto r = ratio.as_root_of_unity()) return TorsionBinomial{diff, *r, gg};
    return NonTorsionBinomial{diff, gg};
}

}  // namespace torsion
