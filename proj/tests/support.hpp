#pragma once

// Random generators, independent reference computations and the randomized
// kernel property checks shared by the unit tests and the acceptance runner.

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "torsion/io.hpp"

namespace torsion::testing {

using Rng = std::mt19937_64;

inline const std::vector<i64>& small_conductors() {
    static const std::vector<i64> v{1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24};
    return v;
}

inline i64 pick(Rng& rng, const std::vector<i64>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; }

inline i64 uniform(Rng& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

inline mpq_class random_rational(Rng& rng, i64 span = 5) {
    mpq_class q(uniform(rng, -span, span), uniform(rng, 1, 3));
    q.canonicalize();
    return q;
}

/// Random element of Q(zeta_N) with a few nonzero power-basis coordinates.
inline CycloNum random_cyclo(Rng& rng, i64 N, int terms = 3) {
    std::vector<mpq_class> c(static_cast<std::size_t>(std::max<i64>(euler_phi(N), 1)), 0);
    for (int t = 0; t < terms; ++t) c[static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(c.size()) - 1))] = random_rational(rng);
    return CycloNum::from_coeffs(N, c);
}

inline CycloNum random_nonzero_cyclo(Rng& rng, i64 N) {
    while (true) {
        CycloNum x = random_cyclo(rng, N);
        if (!x.is_zero()) return x;
    }
}

inline RootOfUnity random_root(Rng& rng, i64 max_ord = 60) {
    const i64 m = uniform(rng, 1, max_ord);
    return {uniform(rng, 0, m - 1), m};
}

inline TorsionPoint random_point(Rng& rng, std::size_t n, i64 max_ord = 60) {
    TorsionPoint p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(random_root(rng, max_ord));
    return p;
}

/// Random point of mu_M^n; keeps products of points inside one small field.
inline TorsionPoint random_point_in(Rng& rng, std::size_t n, i64 M) {
    TorsionPoint p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(RootOfUnity(uniform(rng, 0, M - 1), M));
    return p;
}

inline MPoly random_poly(Rng& rng, std::size_t n, i64 N, int max_deg, int terms) {
    MPoly f(n);
    for (int t = 0; t < terms; ++t) {
        Exponent e(n);
        for (auto& x : e) x = static_cast<int>(uniform(rng, 0, max_deg));
        f.add_term(e, random_cyclo(rng, N, 2));
    }
    return f;
}

inline std::complex<double> approx(const MPoly& f, const TorsionPoint& w) {
    std::complex<double> s = 0;
    for (auto& [e, c] : f.terms()) s += c.to_complex() * monomial_value(w, e).to_complex();
    return s;
}

/// Resultant of two univariate polynomials as the determinant of the
/// Sylvester matrix, by Gaussian elimination over the field.
inline CycloNum sylvester_resultant(const UPoly& a, const UPoly& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return CycloNum();
    const std::size_t s = static_cast<std::size_t>(m + n);
    if (s == 0) return CycloNum(1L);
    std::vector<std::vector<CycloNum>> S(s, std::vector<CycloNum>(s));
    // rows: coefficients from the leading one down
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) S[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = a.coeff(static_cast<std::size_t>(m - k));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) S[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = b.coeff(static_cast<std::size_t>(n - k));
    CycloNum det(1L);
    for (std::size_t c = 0; c < s; ++c) {
        std::size_t p = c;
        while (p < s && S[p][c].is_zero()) ++p;
        if (p == s) return CycloNum();
        if (p != c) {
            std::swap(S[p], S[c]);
            det = -det;
        }
        det = det * S[c][c];
        const CycloNum inv = S[c][c].inv();
        for (std::size_t r = c + 1; r < s; ++r) {
            if (S[r][c].is_zero()) continue;
            const CycloNum f = S[r][c] * inv;
            for (std::size_t k = c; k < s; ++k) S[r][k] = S[r][k] - f * S[c][k];
        }
    }
    return det;
}

/// Coefficients of f in variable `var` (univariate in that variable) after
/// substituting a number for the other variable.
inline UPoly substitute_other(const MPoly& f, std::size_t var, const CycloNum& x0) {
    std::vector<CycloNum> c(static_cast<std::size_t>(std::max(f.degree(var), 0)) + 1);
    for (auto& [e, v] : f.terms()) {
        auto& slot = c[static_cast<std::size_t>(e[var])];
        slot = slot + v * x0.pow(e[1 - var]);
    }
    return UPoly(std::move(c));
}

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    void fail(const std::string& why) {
        if (failures++ == 0) first_failure = why;
    }
};

inline PropertyResult field_axioms(int cases, u64 seed) {
    Rng rng(seed);
    PropertyResult r{"field axioms"};
    for (int t = 0; t < cases; ++t, ++r.cases) {
        const i64 N1 = pick(rng, small_conductors()), N2 = pick(rng, small_conductors()), N3 = pick(rng, small_conductors());
        const CycloNum a = random_cyclo(rng, N1), b = random_cyclo(rng, N2), c = random_cyclo(rng, N3);
        if (!((a + b) + c == a + (b + c))) r.fail("additive associativity");
        if (!(a + b == b + a)) r.fail("additive commutativity");
        if (!((a * b) * c == a * (b * c))) r.fail("multiplicative associativity");
        if (!(a * b == b * a)) r.fail("multiplicative commutativity");
        if (!(a * (b + c) == a * b + a * c)) r.fail("distributivity");
        if (!(a - a).is_zero()) r.fail("additive inverse");
        if (!(a + CycloNum() == a) || !(a * CycloNum(1L) == a)) r.fail("identities");
        if (!a.is_zero() && !(a * a.inv()).is_one()) r.fail("multiplicative inverse");
        if (std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()) > 1e-6 * (1 + std::abs(a.to_complex() * b.to_complex())))
            r.fail("complex embedding is not multiplicative");
        if (!(a.reduced() == a)) r.fail("reduction changes the value");
    }
    return r;
}

inline PropertyResult galois_laws(int cases, u64 seed) {
    Rng rng(seed);
    PropertyResult r{"Galois automorphism laws"};
    for (int t = 0; t < cases; ++t, ++r.cases) {
        const i64 N = pick(rng, small_conductors());
        auto unit = [&]() {
            while (true) {
                const i64 a = uniform(rng, 1, std::max<i64>(N, 2));
                if (gcd(a, N) == 1) return a;
            }
        };
        const GaloisAut s(N, unit()), u(N, unit());
        const CycloNum x = random_cyclo(rng, N), y = random_cyclo(rng, N);
        if (!((x + y).apply(s) == x.apply(s) + y.apply(s))) r.fail("additivity");
        if (!((x * y).apply(s) == x.apply(s) * y.apply(s))) r.fail("multiplicativity");
        if (!(x.apply(u).apply(s) == x.apply(s.compose(u)))) r.fail("composition");
        const mpq_class q = random_rational(rng);
        if (!(CycloNum(q).apply(s) == CycloNum(q))) r.fail("rationals are fixed");
        const RootOfUnity w(uniform(rng, 0, N - 1), N);
        if (!(CycloNum::root(w, N).apply(s) == CycloNum::root(w.pow(s.exponent()), N))) r.fail("action on roots of unity");
        const i64 M = N * pick(rng, {1, 2, 3, 5});
        const i64 Mn = normalize_conductor(M);
        const GaloisAut e = s.extend_to(Mn);
        if (!(x.embed(Mn).apply(e) == x.apply(s).embed(Mn))) r.fail("extension restricts to the original");
    }
    return r;
}

inline PropertyResult twist_evaluation(int cases, u64 seed) {
    Rng rng(seed);
    PropertyResult r{"twist/evaluation commutation"};
    for (int t = 0; t < cases; ++t, ++r.cases) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
        const i64 N = pick(rng, small_conductors());
        const MPoly f = random_poly(rng, n, N, 3, 4);
        const TorsionPoint w = random_point_in(rng, n, 120);
        std::vector<int> eta(n);
        for (auto& e : eta) e = uniform(rng, 0, 1) ? -1 : 1;
        TorsionPoint ew = w, sq = w;
        for (std::size_t i = 0; i < n; ++i) {
            if (eta[i] < 0) ew[i] = w[i] * RootOfUnity(1, 2);
            sq[i] = w[i].pow(2);
        }
        if (!(f.twist_signs(eta).evaluate(w) == f.evaluate(ew))) r.fail("f(eta x) at w");
        if (!(f.twist_square().evaluate(w) == f.evaluate(sq))) r.fail("f(x^2) at w");
        const TorsionPoint xi = random_point_in(rng, n, 120);
        TorsionPoint xw(n);
        for (std::size_t i = 0; i < n; ++i) xw[i] = xi[i] * w[i];
        if (!(f.twist_torsion(xi).evaluate(w) == f.evaluate(xw))) r.fail("f(xi x) at w");
        // f^s(s(w)) = s(f(w)) with s extended to a field containing w.
        const TorsionPoint wg = random_point_in(rng, n, 120);
        i64 L = normalize_conductor(N);
        for (auto& x : wg) L = lcm(L, normalize_conductor(x.ord()));
        i64 a;
        do a = uniform(rng, 1, L); while (gcd(a, L) != 1);
        const GaloisAut sL(L, a);
        const GaloisAut sN(std::max<i64>(normalize_conductor(N), 1), mod(a, std::max<i64>(normalize_conductor(N), 1)));
        TorsionPoint sw(n);
        for (std::size_t i = 0; i < n; ++i) sw[i] = CycloNum::root(wg[i], L).apply(sL).as_root_of_unity().value();
        if (!(f.twist_galois(sN).evaluate(sw) == f.evaluate(wg).apply(sL))) r.fail("Galois twist at w");
        if (std::abs(approx(f, w) - f.evaluate(w).to_complex()) > 1e-6 * (1 + std::abs(approx(f, w)))) r.fail("exact vs floating evaluation");
    }
    return r;
}

inline PropertyResult resultant_gcd(int cases, u64 seed) {
    Rng rng(seed);
    PropertyResult r{"resultant/gcd consistency"};
    // Degenerate draws are redrawn so that `cases` valid inputs are checked.
    for (int attempts = 0; r.cases < cases && attempts < 20 * cases; ++attempts) {
        const i64 N = pick(rng, {1, 3, 4, 5, 8});
        MPoly f = random_poly(rng, 2, N, 2, 3), g = random_poly(rng, 2, N, 2, 3);
        const bool share = uniform(rng, 0, 2) == 0;
        MPoly h = random_poly(rng, 2, N, 1, 2);
        if (share && h.total_degree() > 0 && h.degree(1) > 0) {
            f = f * h;
            g = g * h;
        }
        // gcd_bivar works up to monomials; compare on monomial-free inputs.
        f = f.content_strip().first;
        g = g.content_strip().first;
        if (f.is_zero() || g.is_zero() || f.degree(1) == 0 || g.degree(1) == 0) continue;
        ++r.cases;
        const UPoly res = resultant_univar(f, g, 1);
        const MPoly d = gcd_bivar(f, g);
        const bool common_y_factor = d.degree(1) > 0;
        if (res.is_zero() != common_y_factor) r.fail("Res_y = 0 iff a common factor of positive y-degree");
        if (!MPoly::divide(f, d) || !MPoly::divide(g, d)) r.fail("gcd divides both");
        if (share && h.degree(1) > 0 && !MPoly::divide(d, h.content_strip().first)) r.fail("common factor divides gcd");
        // Specialization: Res_y(f, g)(x0) = Res(f(x0, y), g(x0, y)) when leading coefficients survive.
        const CycloNum x0 = CycloNum(random_rational(rng, 7)) + CycloNum::zeta(1, N);
        const UPoly fa = substitute_other(f, 1, x0), ga = substitute_other(g, 1, x0);
        if (fa.degree() == f.degree(1) && ga.degree() == g.degree(1)) {
            if (!(res.evaluate(x0) == sylvester_resultant(fa, ga))) r.fail("specialized resultant differs from the Sylvester determinant");
        }
        // Antisymmetry.
        const UPoly rev = resultant_univar(g, f, 1);
        const bool odd = (f.degree(1) * g.degree(1)) % 2 == 1;
        if (!(rev == (odd ? -res : res))) r.fail("Res(g, f) = (-1)^(deg f deg g) Res(f, g)");
    }
    return r;
}

}  // namespace torsion::testing
