#pragma once

// Torsion points and torsion cosets on hypersurfaces Z(f) in G_m^n.
//
// descent_solve handles n = 2 completely: every torsion point of Z(f) is a
// common zero of f and one of finitely many twisted copies of f, so the
// isolated points come out of resultants, while torsion cosets appear as
// polynomial factors (collinear supports) split off by gcds.

#include <algorithm>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "torsion/bivar.hpp"
#include "torsion/lattice.hpp"
#include "torsion/poly.hpp"
#include "torsion/univar.hpp"

namespace torsion {

enum class FieldCase { OddConductor, DivisibleBy4 };

inline const char* to_string(FieldCase c) {
    return c == FieldCase::OddConductor ? "OddConductor" : "DivisibleBy4";
}

struct MinimalField {
    i64 N = 1;
    FieldCase field_case = FieldCase::OddConductor;
};

/// Smallest Q(zeta_N) containing all coefficients, and which branch of the
/// interpolation lemma applies to it.
inline MinimalField minimal_field(const MPoly& f) {
    if (f.is_zero()) throw Error("domain", "minimal field of the zero polynomial");
    const i64 N = normalize_conductor(f.field_conductor());
    return {N, N % 4 == 0 ? FieldCase::DivisibleBy4 : FieldCase::OddConductor};
}

struct TransformTag {
    enum class Kind { Sign, SquaredGalois, Galois };
    Kind kind = Kind::Sign;
    std::vector<int> eta;
    i64 galois_exponent = 1;  // sigma: 2, tau: 1 + N/2

    std::string describe() const {
        std::string s;
        switch (kind) {
            case Kind::Sign: s = "sign"; break;
            case Kind::SquaredGalois: s = "square-sigma"; break;
            case Kind::Galois: s = "tau"; break;
        }
        s += "(";
        for (std::size_t i = 0; i < eta.size(); ++i) s += (i ? "," : "") + std::string(eta[i] < 0 ? "-" : "+");
        s += ")";
        if (kind != Kind::Sign) s += " a=" + std::to_string(galois_exponent);
        return s;
    }
};

struct Transform {
    MPoly g;
    TransformTag tag;
};

struct TransformSet {
    std::vector<Transform> items;
    FieldCase field_case = FieldCase::OddConductor;
    i64 N = 1;
};

namespace detail {

inline std::vector<int> sign_vector(std::size_t n, unsigned mask) {
    std::vector<int> eta(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) eta[i] = -1;
    return eta;
}

}  // namespace detail

/// Every torsion point of Z(f) is a zero of at least one member.
///   4 does not divide N: f(eta x) for eta != 1, and f^sigma(eta x^2) for all eta,
///                        sigma: zeta_N -> zeta_N^2;
///   4 divides N:         f(eta x) for eta != 1, and f^tau(eta x) for all eta,
///                        tau: zeta_N -> zeta_N^(1 + N/2).
inline TransformSet lemma_transforms(const MPoly& f) {
    const MinimalField mf = minimal_field(f);
    const std::size_t n = f.nvars();
    if (n > 16) throw Error("domain", "too many variables for the transform set");
    TransformSet ts;
    ts.N = mf.N;
    ts.field_case = mf.field_case;
    const MPoly fl = f.reduced().lifted(mf.N);
    const unsigned count = 1u << n;
    for (unsigned m = 1; m < count; ++m) {
        auto eta = detail::sign_vector(n, m);
        ts.items.push_back({fl.twist_signs(eta), {TransformTag::Kind::Sign, eta, 1}});
    }
    if (mf.field_case == FieldCase::OddConductor) {
        const GaloisAut sigma(mf.N, mf.N == 1 ? 1 : 2);
        const MPoly fs = fl.twist_galois(sigma);
        for (unsigned m = 0; m < count; ++m) {
            auto eta = detail::sign_vector(n, m);
            ts.items.push_back({fs.twist_signs(eta).twist_square(), {TransformTag::Kind::SquaredGalois, eta, 2}});
        }
    } else {
        const i64 a = 1 + mf.N / 2;
        const GaloisAut tau(mf.N, a);
        const MPoly ft = fl.twist_galois(tau);
        for (unsigned m = 0; m < count; ++m) {
            auto eta = detail::sign_vector(n, m);
            ts.items.push_back({ft.twist_signs(eta), {TransformTag::Kind::Galois, eta, a}});
        }
    }
    return ts;
}

// ---------------------------------------------------------------------------
// Symmetry reduction

/// f = x^shift * g(x^B) where (x^B)_i = x^(row i of B).
struct SymmetryReduction {
    MPoly g;
    IntMat B;
    IntVec shift;
    bool changed = false;
};

/// Torsion points of Z(f) are exactly the preimages under x -> x^B of those
/// of Z(g). The sign symmetries f(eta x) = u f (eta != 1) are the special
/// case where the exponent differences of f span a sublattice of index 2; any
/// proper sublattice is removed here, diagonal part first.
inline SymmetryReduction symmetry_reduce(const MPoly& f_in) {
    const std::size_t n = f_in.nvars();
    if (n != 2) throw Error("unsupported_dimension", "symmetry_reduce needs two variables");
    auto [f, shift0] = f_in.content_strip();
    SymmetryReduction out;
    out.B = {{1, 0}, {0, 1}};
    out.shift = IntVec(shift0.begin(), shift0.end());
    out.g = f;
    if (f.size() < 2) return out;
    // Diagonal part: x_i only occurs through x_i^{a_i}.
    IntVec a(n, 0);
    for (auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < n; ++i) a[i] = gcd(a[i], e[i]);
    for (auto& v : a)
        if (v == 0) v = 1;
    if (a[0] != 1 || a[1] != 1) {
        MPoly g(n);
        for (auto& [e, c] : f.terms()) g.add_term({static_cast<int>(e[0] / a[0]), static_cast<int>(e[1] / a[1])}, c);
        out.g = g;
        out.B = {{a[0], 0}, {0, a[1]}};
        out.changed = true;
        return out;
    }
    // General sublattice spanned by the exponent differences.
    const Exponent& e0 = f.terms().begin()->first;
    IntMat D;
    for (auto& [e, c] : f.terms()) D.push_back({e[0] - e0[0], e[1] - e0[1]});
    const IntMat H = hnf_rows(D, n);
    if (H.size() != 2) return out;
    const i64 det = H[0][0] * H[1][1];
    if (det == 1) return out;
    // e - e0 = e' H  with H upper triangular.
    std::vector<std::pair<IntVec, CycloNum>> t;
    i64 m0 = 0, m1 = 0;
    for (auto& [e, c] : f.terms()) {
        const i64 d0 = e[0] - e0[0], d1 = e[1] - e0[1];
        const i64 p = d0 / H[0][0];
        const i64 q = (d1 - p * H[0][1]) / H[1][1];
        t.push_back({{p, q}, c});
        m0 = std::min(m0, p);
        m1 = std::min(m1, q);
    }
    MPoly g(n);
    for (auto& [e, c] : t) g.add_term({static_cast<int>(e[0] - m0), static_cast<int>(e[1] - m1)}, c);
    out.g = g;
    out.B = H;
    out.shift = {out.shift[0] + e0[0] + m0 * H[0][0], out.shift[1] + e0[1] + m0 * H[0][1] + m1 * H[1][1]};
    out.changed = true;
    return out;
}

/// Preimage of a coset under x -> x^B.
inline std::vector<TorsionCoset> pullback(const TorsionCoset& c, const IntMat& B) {
    const std::size_t n = c.ambient();
    IntMat mu;
    std::vector<RootOfUnity> vals;
    for (auto& l : c.lattice()) {
        IntVec row(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) row[j] += l[i] * B[i][j];
        mu.push_back(row);
        vals.push_back(character(c.base(), l));
    }
    return solve_characters(mu, vals, n);
}

// ---------------------------------------------------------------------------
// Verification

/// Whether omega * H_Lambda lies in Z(f): f(omega o t^P) vanishes identically,
/// where the rows of P span the orthogonal lattice of Lambda.
inline bool coset_verify(const MPoly& f, const TorsionCoset& c) {
    if (c.ambient() != f.nvars()) throw Error("domain", "coset dimension does not match the number of variables");
    if (c.dim() == 0) return f.evaluate(c.base()).is_zero();
    const IntMat P = c.parametrization();
    i64 L = f.conductor();
    for (auto& r : c.base()) L = lcm(L, normalize_conductor(r.ord()));
    std::map<IntVec, RootSum> acc;
    for (auto& [e, coef] : f.terms()) {
        IntVec te(P.size(), 0);
        for (std::size_t j = 0; j < P.size(); ++j)
            for (std::size_t i = 0; i < e.size(); ++i) te[j] += static_cast<i64>(e[i]) * P[j][i];
        auto it = acc.try_emplace(te, L).first;
        it->second.add(coef, monomial_value(c.base(), e));
    }
    for (auto& [k, v] : acc)
        if (!v.value().is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Brute force

struct OracleOptions {
    i64 max_M = 240;
    unsigned threads = 1;
};

/// { omega in mu_M^n : f(omega) = 0 }, canonically sorted. Each point is
/// screened in F_p (p = 1 mod lcm(M, N)) and confirmed exactly when the
/// image vanishes.
inline std::vector<TorsionPoint> bruteforce_oracle(const MPoly& f, i64 M, const OracleOptions& opt = {}) {
    if (M < 1) throw Error("domain", "oracle order must be positive");
    if (M > opt.max_M) throw Error("cap_exceeded", "oracle order " + std::to_string(M) + " exceeds the cap " + std::to_string(opt.max_M));
    if (f.is_zero()) throw Error("domain", "oracle on the zero polynomial");
    const std::size_t n = f.nvars();
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(M);
    if (total > 5e8) throw Error("cap_exceeded", "oracle search space too large");
    const i64 N = f.conductor();
    const i64 L = lcm(N, M);
    PrimeRoot pr;
    std::vector<u64> cimg;
    for (int skip = 0;; ++skip) {
        pr = make_prime_root(L, skip);
        cimg.clear();
        bool ok = true;
        for (auto& [e, c] : f.terms()) {
            auto v = c.image(pr);
            if (!v) {
                ok = false;
                break;
            }
            cimg.push_back(*v);
        }
        if (ok) break;
    }
    std::vector<Exponent> exps;
    for (auto& [e, c] : f.terms()) exps.push_back(e);
    std::vector<u64> pw(static_cast<std::size_t>(M));
    {
        const u64 w = pr.power(L / M);
        u64 x = 1;
        for (auto& v : pw) {
            v = x;
            x = mulmod(x, w, pr.p);
        }
    }
    const std::size_t T = exps.size();
    auto scan = [&](i64 first_lo, i64 first_hi, std::vector<std::vector<i64>>& hits) {
        std::vector<i64> k(n, 0);
        if (n == 0) return;
        k[0] = first_lo;
        std::vector<i64> phase(T);
        while (k[0] < first_hi) {
            u64 acc = 0;
            for (std::size_t t = 0; t < T; ++t) {
                i64 s = 0;
                for (std::size_t i = 0; i < n; ++i) s += static_cast<i64>(exps[t][i]) * k[i];
                acc += mulmod(cimg[t], pw[static_cast<std::size_t>(s % M)], pr.p);
                if (acc >= pr.p) acc -= pr.p;
            }
            if (acc == 0) hits.push_back(k);
            std::size_t i = n;
            while (i-- > 0) {
                if (++k[i] < M || i == 0) break;
                k[i] = 0;
            }
        }
    };
    const unsigned th = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(M)));
    std::vector<std::vector<std::vector<i64>>> hits(th);
    if (n == 0) {
        if (f.evaluate({}).is_zero()) return {TorsionPoint{}};
        return {};
    }
    if (th == 1) {
        scan(0, M, hits[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < th; ++t) {
            const i64 lo = M * t / th, hi = M * (t + 1) / th;
            pool.emplace_back([&, lo, hi, t] { scan(lo, hi, hits[t]); });
        }
        for (auto& p : pool) p.join();
    }
    std::vector<TorsionPoint> out;
    for (auto& h : hits)
        for (auto& k : h) {
            TorsionPoint w;
            for (i64 v : k) w.emplace_back(v, M);
            if (f.evaluate(w).is_zero()) out.push_back(w);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Descent for n = 2

struct SolveOptions {
    int max_depth = 64;
    i64 max_conductor = 10000;
};

struct SolveReport {
    std::vector<TorsionCoset> isolated;
    std::vector<TorsionCoset> cosets;
    std::vector<bool> isolated_certified;
    std::vector<bool> cosets_certified;
    std::vector<std::string> diagnostics;
};

namespace detail {

struct Found {
    std::set<TorsionPoint> points;
    std::vector<TorsionCoset> cosets;

    void add_coset(const TorsionCoset& c) {
        for (auto& d : cosets)
            if (d.contains(c)) return;
        cosets.erase(std::remove_if(cosets.begin(), cosets.end(), [&](const TorsionCoset& d) { return c.contains(d); }), cosets.end());
        cosets.push_back(c);
    }
    void merge(const Found& o) {
        points.insert(o.points.begin(), o.points.end());
        for (auto& c : o.cosets) add_coset(c);
    }
};

class Descent {
public:
    Descent(const SolveOptions& opt, std::vector<std::string>& trace) : opt_(opt), trace_(trace) {}

    Found run(const MPoly& f_in, int depth) {
        if (depth > opt_.max_depth)
            throw Error("incomplete", "recursion depth cap " + std::to_string(opt_.max_depth) + " exceeded; result would be incomplete");
        const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        const MPoly f = f_in.content_strip().first.reduced();
        Found out;
        if (f.is_constant()) return out;
        const i64 N = normalize_conductor(f.field_conductor());
        if (N > opt_.max_conductor)
            throw Error("cap_exceeded", "conductor " + std::to_string(N) + " exceeds the cap " + std::to_string(opt_.max_conductor));

        if (auto lam = collinear_direction(f)) {
            trace_.push_back(pad + "collinear support, direction (" + std::to_string((*lam)[0]) + "," + std::to_string((*lam)[1]) + ")");
            return solve_collinear(f, *lam);
        }

        SymmetryReduction sr = symmetry_reduce(f);
        if (sr.changed) {
            trace_.push_back(pad + "symmetry reduction B = [[" + std::to_string(sr.B[0][0]) + "," + std::to_string(sr.B[0][1]) + "],[" +
                             std::to_string(sr.B[1][0]) + "," + std::to_string(sr.B[1][1]) + "]]");
            Found inner = run(sr.g, depth + 1);
            for (auto& p : inner.points)
                for (auto& c : pullback(TorsionCoset::point(p), sr.B)) out.points.insert(c.base());
            for (auto& c : inner.cosets)
                for (auto& d : pullback(c, sr.B)) out.add_coset(d);
            return out;
        }

        const TransformSet ts = lemma_transforms(f);
        const MPoly fl = f.lifted(ts.N);
        const std::size_t elim = fl.degree(1) <= fl.degree(0) ? 1 : 0;
        const std::size_t keep = 1 - elim;
        std::vector<MPoly> seen;
        std::size_t skipped = 0;
        for (auto& tr : ts.items) {
            const MPoly g = tr.g.content_strip().first;
            if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
            seen.push_back(g);
            const UPoly r = resultant_univar(fl, g, elim);
            if (r.is_zero()) {
                const MPoly d = gcd_bivar(fl, g);
                if (d.total_degree() == fl.total_degree() && tr.tag.kind == TransformTag::Kind::Galois)
                    return untwist(f, ts.N, tr.tag, depth, pad);
                if (d.total_degree() == fl.total_degree()) {
                    ++skipped;
                    trace_.push_back(pad + "transform " + tr.tag.describe() + " contains f; skipped");
                    continue;
                }
                auto q = MPoly::divide(fl, d);
                if (!q) throw Error("internal", "gcd does not divide f");
                trace_.push_back(pad + "split by gcd with transform " + tr.tag.describe() + " (degrees " +
                                 std::to_string(d.total_degree()) + " + " + std::to_string(q->total_degree()) + ")");
                out.merge(run(d, depth + 1));
                out.merge(run(*q, depth + 1));
                return finish(f, out);
            }
            for (auto& rm : cyclotomic_roots_univar(r)) {
                const UPoly s = specialize(fl, keep, rm.root);
                if (s.is_zero()) {
                    IntVec lam(2, 0);
                    lam[keep] = 1;
                    for (auto& c : solve_characters({lam}, {rm.root}, 2)) out.add_coset(c);
                    continue;
                }
                for (auto& sm : cyclotomic_roots_univar(s)) {
                    TorsionPoint p(2);
                    p[keep] = rm.root;
                    p[elim] = sm.root;
                    out.points.insert(p);
                }
            }
        }
        if (skipped == seen.size())
            throw Error("incomplete", "every transform contains f; no descent step is available");
        trace_.push_back(pad + "degree " + std::to_string(f.total_degree()) + " over Q(zeta_" + std::to_string(ts.N) + "), " +
                         std::to_string(seen.size()) + " transforms, " + std::to_string(out.points.size()) + " points");
        return finish(f, out);
    }

private:
    // f^tau(eta x) = c f(x). With xi_i = zeta_N where eta_i = -1 (so that
    // tau(xi) = eta xi), g(x) = f(xi x) satisfies g^tau = c g and lives in the
    // fixed field of tau. Torsion points correspond via omega = xi omega'.
    Found untwist(const MPoly& f, i64 N, const TransformTag& tag, int depth, const std::string& pad) {
        TorsionPoint xi(2);
        for (std::size_t i = 0; i < 2; ++i)
            if (tag.eta[i] == -1) xi[i] = RootOfUnity(1, N);
        const MPoly g = f.twist_torsion(xi).monic().reduced();
        if (normalize_conductor(g.field_conductor()) >= N)
            throw Error("internal", "untwisting did not lower the conductor");
        trace_.push_back(pad + "transform " + tag.describe() + " is proportional to f; substituting x -> xi x, xi = (" +
                         std::to_string(xi[0].num()) + "/" + std::to_string(xi[0].ord()) + "," + std::to_string(xi[1].num()) + "/" +
                         std::to_string(xi[1].ord()) + ")");
        const Found inner = run(g, depth + 1);
        Found out;
        for (auto& p : inner.points) out.points.insert({xi[0] * p[0], xi[1] * p[1]});
        for (auto& c : inner.cosets) out.add_coset(TorsionCoset({xi[0] * c.base()[0], xi[1] * c.base()[1]}, c.lattice()));
        return finish(f, out);
    }

    // Points verified on f, with those on cosets removed.
    static Found finish(const MPoly& f, Found out) {
        std::set<TorsionPoint> kept;
        for (auto& p : out.points) {
            bool on = false;
            for (auto& c : out.cosets)
                if (c.contains(p)) on = true;
            if (!on && f.evaluate(p).is_zero()) kept.insert(p);
        }
        out.points = std::move(kept);
        return out;
    }

    // Primitive lambda when all exponents lie on a line e0 + Z lambda.
    static std::optional<IntVec> collinear_direction(const MPoly& f) {
        const Exponent& e0 = f.terms().begin()->first;
        IntMat D;
        for (auto& [e, c] : f.terms()) D.push_back({e[0] - e0[0], e[1] - e0[1]});
        const IntMat H = hnf_rows(D, 2);
        if (H.size() != 1) return std::nullopt;
        return primitive_part(H[0]).first;
    }

    static Found solve_collinear(const MPoly& f, const IntVec& lam) {
        // f = x^e0 * h(x^lam) with h univariate (after a shift).
        const Exponent& e0 = f.terms().begin()->first;
        std::vector<std::pair<i64, CycloNum>> t;
        i64 lo = 0, hi = 0;
        for (auto& [e, c] : f.terms()) {
            const i64 d0 = e[0] - e0[0], d1 = e[1] - e0[1];
            const i64 s = lam[0] != 0 ? d0 / lam[0] : d1 / lam[1];
            t.push_back({s, c});
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        const i64 Nf = f.conductor();
        std::vector<CycloNum> h(static_cast<std::size_t>(hi - lo + 1), CycloNum().embed(Nf));
        for (auto& [s, c] : t) h[static_cast<std::size_t>(s - lo)] = c.embed(Nf);
        Found out;
        for (auto& rm : cyclotomic_roots_univar(UPoly(std::move(h))))
            for (auto& c : solve_characters({lam}, {rm.root}, 2)) out.add_coset(c);
        return out;
    }

    const SolveOptions& opt_;
    std::vector<std::string>& trace_;
};

}  // namespace detail

/// All maximal torsion cosets of Z(f) in G_m^2: isolated torsion points and
/// one-dimensional torsion cosets.
inline SolveReport descent_solve(const MPoly& f, const SolveOptions& opt = {}) {
    if (f.nvars() != 2) throw Error("unsupported_dimension", "descent_solve handles n = 2 only (got n = " + std::to_string(f.nvars()) + ")");
    if (f.is_zero()) throw Error("domain", "descent_solve on the zero polynomial");
    if (f.content_strip().first.is_constant()) throw Error("domain", "descent_solve on a monomial");
    SolveReport rep;
    detail::Descent d(opt, rep.diagnostics);
    detail::Found found = d.run(f, 0);
    std::sort(found.cosets.begin(), found.cosets.end());
    for (auto& c : found.cosets) {
        rep.cosets.push_back(c);
        rep.cosets_certified.push_back(coset_verify(f, c));
    }
    for (auto& p : found.points) {
        bool on = false;
        for (auto& c : found.cosets)
            if (c.contains(p)) on = true;
        if (on) continue;
        rep.isolated.push_back(TorsionCoset::point(p));
        rep.isolated_certified.push_back(f.evaluate(p).is_zero());
    }
    return rep;
}

}  // namespace torsion
