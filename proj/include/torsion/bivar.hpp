#pragma once

// Bivariate elimination over Q(zeta_N): polynomials in a main variable with
// coefficients in K[other], resultants and gcds by the subresultant PRS.

#include <vector>

#include "torsion/poly.hpp"
#include "torsion/univar.hpp"

namespace torsion {

/// A polynomial in a main variable whose coefficients are univariate
/// polynomials in the remaining variable. Index = degree in the main variable.
using BPoly = std::vector<UPoly>;

namespace detail {

inline void trim(BPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int deg(const BPoly& p) { return static_cast<int>(p.size()) - 1; }

inline BPoly to_bpoly(const MPoly& f, std::size_t main_var, i64 N) {
    if (f.nvars() != 2) throw Error("domain", "bivariate operation on a polynomial with " + std::to_string(f.nvars()) + " variables");
    const std::size_t other = 1 - main_var;
    std::vector<std::vector<CycloNum>> dense(static_cast<std::size_t>(f.degree(main_var)) + 1);
    for (auto& [e, c] : f.terms()) {
        auto& row = dense[static_cast<std::size_t>(e[main_var])];
        const std::size_t k = static_cast<std::size_t>(e[other]);
        if (row.size() <= k) row.resize(k + 1, CycloNum().embed(N));
        row[k] = c.embed(N);
    }
    BPoly out;
    for (auto& row : dense) out.emplace_back(std::move(row));
    trim(out);
    return out;
}

inline MPoly from_bpoly(const BPoly& p, std::size_t main_var) {
    MPoly f(2);
    const std::size_t other = 1 - main_var;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p[i].coeffs().size(); ++j) {
            Exponent e(2);
            e[main_var] = static_cast<int>(i);
            e[other] = static_cast<int>(j);
            f.add_term(e, p[i][j]);
        }
    return f;
}

inline BPoly scale(const BPoly& p, const UPoly& s) {
    BPoly r;
    for (auto& c : p) r.push_back(c * s);
    trim(r);
    return r;
}

inline BPoly exact_div(const BPoly& p, const UPoly& s) {
    BPoly r;
    for (auto& c : p) r.push_back(UPoly::exact_div(c, s));
    return r;
}

/// lc(B)^(deg A - deg B + 1) * A  mod  B  in D[y], D = K[x].
inline BPoly prem(BPoly A, const BPoly& B) {
    const int db = deg(B);
    int e = deg(A) - db + 1;
    const UPoly& lb = B.back();
    while (!A.empty() && deg(A) >= db) {
        const std::size_t shift = static_cast<std::size_t>(deg(A) - db);
        const UPoly la = A.back();
        BPoly R(A.size());
        for (std::size_t i = 0; i < A.size(); ++i) R[i] = A[i] * lb;
        for (std::size_t j = 0; j < B.size(); ++j) R[j + shift] = R[j + shift] - la * B[j];
        trim(R);
        A = std::move(R);
        --e;
    }
    if (e > 0 && !A.empty()) A = scale(A, lb.pow(e));
    return A;
}

struct PrsResult {
    BPoly last_nonzero;  // last nonzero element of the subresultant PRS
    UPoly resultant;     // zero when the inputs share a factor of positive degree in y
};

/// Subresultant PRS for deg A >= deg B >= 0 (both nonzero).
inline PrsResult subresultant_prs(BPoly A, BPoly B) {
    int s = 1;
    if (deg(A) < deg(B)) {
        std::swap(A, B);
        if ((deg(A) % 2 == 1) && (deg(B) % 2 == 1)) s = -1;
    }
    UPoly g = UPoly::constant(CycloNum(1L)), h = g;
    PrsResult out;
    if (deg(B) == 0) {
        out.last_nonzero = B;
        out.resultant = B[0].pow(deg(A));
        if (s < 0) out.resultant = -out.resultant;
        return out;
    }
    while (true) {
        const int delta = deg(A) - deg(B);
        if ((deg(A) % 2 == 1) && (deg(B) % 2 == 1)) s = -s;
        BPoly R = prem(A, B);
        if (R.empty()) {
            out.last_nonzero = B;
            out.resultant = UPoly();
            return out;
        }
        A = std::move(B);
        B = exact_div(R, g * h.pow(delta));
        g = A.back();
        // h = g^delta / h^(delta - 1)
        if (delta == 0)
            h = h * UPoly::constant(CycloNum(1L));  // h^1 g^0
        else if (delta == 1)
            h = g;
        else
            h = UPoly::exact_div(g.pow(delta), h.pow(delta - 1));
        if (deg(B) == 0) break;
    }
    // Res = lc(B)^deg A / h^(deg A - 1)
    const int da = deg(A);
    UPoly res;
    if (da == 0)
        res = UPoly::constant(CycloNum(1L));
    else if (da == 1)
        res = B[0];
    else
        res = UPoly::exact_div(B[0].pow(da), h.pow(da - 1));
    if (s < 0) res = -res;
    out.last_nonzero = B;
    out.resultant = res;
    return out;
}

inline UPoly content(const BPoly& p) {
    UPoly g;
    for (auto& c : p) {
        g = UPoly::gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

}  // namespace detail

/// Res_var(f, g) as a univariate polynomial in the other variable (in t).
inline UPoly resultant_univar(const MPoly& f, const MPoly& g, std::size_t var) {
    if (f.is_zero() || g.is_zero()) throw Error("domain", "resultant of a zero polynomial");
    const i64 N = lcm(f.conductor(), g.conductor());
    const BPoly A = detail::to_bpoly(f, var, N), B = detail::to_bpoly(g, var, N);
    if (detail::deg(A) == 0 && detail::deg(B) == 0) return UPoly::constant(CycloNum(1L));
    return detail::subresultant_prs(A, B).resultant;
}

/// Res_var(f, g) as an MPoly in two variables (only the other variable appears).
inline MPoly resultant_bivar(const MPoly& f, const MPoly& g, std::size_t var) {
    const UPoly r = resultant_univar(f, g, var);
    MPoly out(2);
    for (std::size_t j = 0; j < r.coeffs().size(); ++j) {
        Exponent e(2, 0);
        e[1 - var] = static_cast<int>(j);
        out.add_term(e, r[j]);
    }
    return out;
}

/// A gcd of f and g up to units (monomials times nonzero scalars), returned
/// with leading coefficient 1 and no monomial content.
inline MPoly gcd_bivar(const MPoly& f, const MPoly& g) {
    if (f.nvars() != 2 || g.nvars() != 2) throw Error("domain", "gcd_bivar needs two variables");
    if (f.is_zero()) return g.content_strip().first.monic();
    if (g.is_zero()) return f.content_strip().first.monic();
    const MPoly fs = f.content_strip().first, gs = g.content_strip().first;
    const std::size_t y = 1;
    const i64 N = lcm(fs.conductor(), gs.conductor());
    BPoly A = detail::to_bpoly(fs, y, N), B = detail::to_bpoly(gs, y, N);
    const UPoly ca = detail::content(A), cb = detail::content(B);
    const UPoly cg = UPoly::gcd(ca, cb);
    A = detail::exact_div(A, ca);
    B = detail::exact_div(B, cb);
    BPoly prim;
    if (detail::deg(A) == 0 || detail::deg(B) == 0) {
        prim = {UPoly::constant(CycloNum(1L))};
    } else {
        prim = detail::subresultant_prs(A, B).last_nonzero;
        if (detail::deg(prim) == 0)
            prim = {UPoly::constant(CycloNum(1L))};
        else
            prim = detail::exact_div(prim, detail::content(prim));
    }
    const MPoly out = detail::from_bpoly(detail::scale(prim, cg), y);
    return out.content_strip().first.monic();
}

/// Univariate polynomial (in the remaining variable) obtained by fixing
/// variable `var` of a bivariate f to a root of unity.
inline UPoly specialize(const MPoly& f, std::size_t var, const RootOfUnity& r) {
    const std::size_t other = 1 - var;
    const i64 L = lcm(f.conductor(), normalize_conductor(r.ord()));
    std::vector<RootSum> acc;
    for (auto& [e, c] : f.terms()) {
        const std::size_t k = static_cast<std::size_t>(e[other]);
        while (acc.size() <= k) acc.emplace_back(L);
        acc[k].add(c, r.pow(e[var]));
    }
    std::vector<CycloNum> out;
    for (auto& a : acc) out.push_back(a.value());
    return UPoly(std::move(out));
}

/// f as a univariate polynomial in variable `var` (f must not involve the others).
inline UPoly to_univar(const MPoly& f, std::size_t var) {
    std::vector<CycloNum> c(static_cast<std::size_t>(f.degree(var)) + 1);
    for (auto& [e, v] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0) throw Error("domain", "polynomial is not univariate");
        c[static_cast<std::size_t>(e[var])] = v;
    }
    const i64 N = f.conductor();
    for (auto& x : c) x = x.embed(N);
    return UPoly(std::move(c));
}

}  // namespace torsion
