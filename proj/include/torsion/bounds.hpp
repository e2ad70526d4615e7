#pragma once

// Counting bounds for torsion points and cosets, evaluated exactly (big
// integers and rationals) or, where no closed rational form exists, as
// rationals rounded upward with MPFR.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsion/arith.hpp"

namespace torsion {

/// Parameters a bound may depend on; unset fields are omitted from reports.
struct BoundParams {
    std::optional<long> n, d, k, j, delta, delta0, k0, k1;
    std::optional<std::vector<long>> multidegree;
    std::optional<mpq_class> vol;
};

struct BoundReport {
    std::string name;
    BoundParams params;
    std::optional<mpq_class> value;  // exact, or an upward-rounded rational
    double log2 = 0;                 // diagnostic rendering, rounded upward
    bool exact = true;               // value equals the formula exactly
    std::string symbolic;            // closed form when value is rounded, e.g. "278784/pi"
    std::string note;
    std::string error;               // nonempty when the parameters are unsupported
};

/// Values above this many bits are rendered as log2 unless full output is requested.
inline constexpr long kRenderBits = 4096;

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error("domain", what);
}

/// 2^{2n} + 2^{n+1} - 2
inline mpz_class pow2_term(long n) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), 2, static_cast<unsigned long>(2 * n));
    mpz_ui_pow_ui(b.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
    return a + b - 2;
}

inline mpz_class zpow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline double log2_of(const mpz_class& z) {
    if (z <= 0) return -INFINITY;
    long e = 0;
    const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log2(m) + static_cast<double>(e);
}

inline double log2_of(const mpq_class& q) { return log2_of(q.get_num()) - log2_of(q.get_den()); }

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t p) { mpfr_init2(x, p); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_t x;
};

inline double up_double(const Mpfr& v) { return mpfr_get_d(v.x, MPFR_RNDU); }

}  // namespace detail

/// (2n-1)(n-1)(2^{2n}+2^{n+1}-2)
inline mpz_class bound_base(long n) {
    detail::require(n >= 1, "n must be positive");
    return mpz_class(2 * n - 1) * mpz_class(n - 1) * detail::pow2_term(n);
}

struct MainBound {
    mpz_class intro;    // base^{nd} delta^{n-j}
    mpz_class refined;  // base^{d(n-j)} delta^{n-j}
};

inline MainBound bound_main(long n, long d, long delta, long j) {
    detail::require(n >= 1, "n must be positive");
    detail::require(0 <= j && j <= d && d < n, "need 0 <= j <= d < n");
    detail::require(delta >= 1, "delta must be positive");
    const mpz_class b = bound_base(n);
    const mpz_class dl = detail::zpow(mpz_class(delta), static_cast<unsigned long>(n - j));
    return {detail::zpow(b, static_cast<unsigned long>(n * d)) * dl,
            detail::zpow(b, static_cast<unsigned long>(d * (n - j))) * dl};
}

/// Volume of the unit n-ball as q * pi^{floor(n/2)}; returns q.
inline mpq_class unit_ball_rational(long n) {
    detail::require(n >= 1, "n must be positive");
    const long m = n / 2;
    mpz_class mf;
    mpz_fac_ui(mf.get_mpz_t(), static_cast<unsigned long>(m));
    if (n % 2 == 0) return mpq_class(1, mf);
    // 2 m! (4 pi)^m / (2m+1)!
    mpz_class nf;
    mpz_fac_ui(nf.get_mpz_t(), static_cast<unsigned long>(n));
    mpq_class q(2 * mf * detail::zpow(4, static_cast<unsigned long>(m)), nf);
    q.canonicalize();
    return q;
}

/// The smallest precision-`prec` binary float >= a / pi^m (a > 0 rational).
inline mpq_class round_up_over_pi(const mpq_class& a, long m, mpfr_prec_t prec) {
    if (m == 0) return a;
    for (mpfr_prec_t w = prec + 64;; w *= 2) {
        detail::Mpfr pi_lo(w), pi_hi(w), a_lo(w), a_hi(w), lo(w), hi(w), rlo(prec), rhi(prec);
        mpfr_const_pi(pi_lo.x, MPFR_RNDD);
        mpfr_const_pi(pi_hi.x, MPFR_RNDU);
        mpfr_pow_ui(pi_lo.x, pi_lo.x, static_cast<unsigned long>(m), MPFR_RNDD);
        mpfr_pow_ui(pi_hi.x, pi_hi.x, static_cast<unsigned long>(m), MPFR_RNDU);
        mpfr_set_q(a_lo.x, a.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(a_hi.x, a.get_mpq_t(), MPFR_RNDU);
        mpfr_div(lo.x, a_lo.x, pi_hi.x, MPFR_RNDD);
        mpfr_div(hi.x, a_hi.x, pi_lo.x, MPFR_RNDU);
        mpfr_set(rlo.x, lo.x, MPFR_RNDU);
        mpfr_set(rhi.x, hi.x, MPFR_RNDU);
        if (mpfr_equal_p(rlo.x, rhi.x)) {
            mpq_class out;
            mpfr_get_q(out.get_mpq_t(), rhi.x);
            return out;
        }
        if (w > (1 << 20)) throw Error("internal", "directed rounding did not converge");
    }
}

/// c^_{n,j} * vol as an upward-rounded rational, with the closed form in `symbolic`.
inline BoundReport bound_volume(long n, long j, const mpq_class& vol, mpfr_prec_t prec = 128) {
    detail::require(n >= 1, "n must be positive");
    detail::require(0 <= j && j < n, "need 0 <= j < n");
    detail::require(vol > 0, "volume must be positive");
    BoundReport r;
    r.name = "volume";
    r.params.n = n;
    r.params.j = j;
    r.params.vol = vol;
    const mpz_class c = detail::zpow(bound_base(n), static_cast<unsigned long>((n - 1) * (n - j))) *
                        detail::zpow(2, static_cast<unsigned long>(n)) *
                        detail::zpow(mpz_class(n), static_cast<unsigned long>(2 * n));
    mpq_class a = mpq_class(c) * vol / unit_ball_rational(n);
    a.canonicalize();
    const long m = n / 2;
    r.value = round_up_over_pi(a, m, prec);
    r.exact = m == 0;
    r.log2 = detail::log2_of(*r.value);
    if (m > 0) {
        r.symbolic = a.get_str() + "/pi";
        if (m > 1) r.symbolic += "^" + std::to_string(m);
    }
    return r;
}

/// k (2^{2n}+2^{n+1}-2)(2d+1) delta0
inline mpz_class bound_theta0(long n, long k, long d, long delta0) {
    detail::require(n >= 1 && d >= 0, "need n >= 1, d >= 0");
    detail::require(k == n - d && k >= 1, "need k = n - d >= 1");
    detail::require(delta0 >= 1, "delta0 must be positive");
    return mpz_class(k) * detail::pow2_term(n) * (2 * d + 1) * delta0;
}

/// ((2n-1) k0 (2^{2n}+2^{n+1}-2))^{k0-k1+1} delta
inline mpz_class bound_theta(long n, long k0, long k1, long delta) {
    detail::require(n >= 1, "n must be positive");
    detail::require(0 <= k1 && k1 <= k0 && k0 <= n, "need k1 <= k0 <= n");
    detail::require(delta >= 1, "delta must be positive");
    const mpz_class b = mpz_class(2 * n - 1) * k0 * detail::pow2_term(n);
    return detail::zpow(b, static_cast<unsigned long>(k0 - k1 + 1)) * delta;
}

namespace detail {

inline BoundReport integer_report(std::string name, BoundParams p, const mpz_class& v) {
    BoundReport r;
    r.name = std::move(name);
    r.params = std::move(p);
    r.value = mpq_class(v);
    r.log2 = log2_of(v);
    return r;
}

inline BoundReport flagged(std::string name, BoundParams p, std::string why) {
    BoundReport r;
    r.name = std::move(name);
    r.params = std::move(p);
    r.exact = false;
    r.error = std::move(why);
    return r;
}

inline mpz_class binom(long a, long b) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

}  // namespace detail

inline BoundReport bound_schmidt(long n, long delta, double max_exact_bits = 1 << 24) {
    BoundParams p;
    p.n = n;
    p.delta = delta;
    if (n < 1 || delta < 1) return detail::flagged("schmidt", p, "needs n >= 1 and delta >= 1");
    const mpz_class B = detail::binom(n + delta, delta);
    const double bits = static_cast<double>(n * n) * std::log2(11.0 * static_cast<double>(delta)) +
                        3.0 * std::pow(B.get_d(), 2.0) * detail::log2_of(B);
    if (bits > max_exact_bits) {
        BoundReport r;
        r.name = "schmidt";
        r.params = p;
        r.exact = false;
        r.log2 = bits;
        r.note = "exact value too large; log2 only";
        return r;
    }
    const mpz_class e = 3 * B * B;
    return detail::integer_report("schmidt", p,
                                  detail::zpow(mpz_class(11 * delta), static_cast<unsigned long>(n * n)) *
                                      detail::zpow(B, e.get_ui()));
}

/// log2 of c1(n) d^{c2(n)} with c1 = n^{(3/2)(2+n)5^n}, c2 = (49 d^{n-2} - 4n - 9)/16.
inline BoundReport bound_aliev_smyth(long n, long d) {
    BoundParams p;
    p.n = n;
    p.d = d;
    if (n < 2 || d < 1) return detail::flagged("aliev_smyth", p, "needs n >= 2 and d >= 1");
    detail::Mpfr t(256), u(256), c2(256);
    // log2 c1 = (3/2)(2+n) 5^n log2 n
    mpfr_set_ui(t.x, static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_log2(t.x, t.x, MPFR_RNDU);
    mpfr_set_ui(u.x, 5, MPFR_RNDU);
    mpfr_pow_ui(u.x, u.x, static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_mul(t.x, t.x, u.x, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, static_cast<unsigned long>(3 * (2 + n)), MPFR_RNDU);
    mpfr_div_ui(t.x, t.x, 2, MPFR_RNDU);
    // c2 log2 d
    const mpz_class c2num = 49 * detail::zpow(mpz_class(d), static_cast<unsigned long>(n - 2)) - 4 * n - 9;
    mpfr_set_z(c2.x, c2num.get_mpz_t(), MPFR_RNDU);
    mpfr_div_ui(c2.x, c2.x, 16, MPFR_RNDU);
    mpfr_set_ui(u.x, static_cast<unsigned long>(d), MPFR_RNDU);
    mpfr_log2(u.x, u.x, mpfr_sgn(c2.x) >= 0 ? MPFR_RNDU : MPFR_RNDD);
    mpfr_mul(u.x, u.x, c2.x, MPFR_RNDU);
    mpfr_add(t.x, t.x, u.x, MPFR_RNDU);
    BoundReport r;
    r.name = "aliev_smyth";
    r.params = p;
    r.exact = false;
    r.log2 = detail::up_double(t);
    r.note = "c2 depends on d as printed";
    return r;
}

/// (delta (200 n^5 log(n^2 delta))^{(n-k) n (n-1)})^{n-j}, as an upward-rounded log2.
inline BoundReport bound_amoroso_viada(long n, long k, long j, long delta) {
    BoundParams p;
    p.n = n;
    p.k = k;
    p.j = j;
    p.delta = delta;
    if (n < 2 || delta < 1 || k < 1 || k > n || j < 0 || j > n - k)
        return detail::flagged("amoroso_viada", p, "needs n >= 2, 1 <= k <= n, 0 <= j <= n-k, delta >= 1");
    detail::Mpfr t(256), u(256);
    // log2(200 n^5 ln(n^2 delta))
    mpfr_set_ui(t.x, static_cast<unsigned long>(n * n * delta), MPFR_RNDU);
    mpfr_log(t.x, t.x, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, 200, MPFR_RNDU);
    mpfr_set_ui(u.x, static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_pow_ui(u.x, u.x, 5, MPFR_RNDU);
    mpfr_mul(t.x, t.x, u.x, MPFR_RNDU);
    mpfr_log2(t.x, t.x, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, static_cast<unsigned long>((n - k) * n * (n - 1)), MPFR_RNDU);
    mpfr_set_ui(u.x, static_cast<unsigned long>(delta), MPFR_RNDU);
    mpfr_log2(u.x, u.x, MPFR_RNDU);
    mpfr_add(t.x, t.x, u.x, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, static_cast<unsigned long>(n - j), MPFR_RNDU);
    BoundReport r;
    r.name = "amoroso_viada";
    r.params = p;
    r.exact = false;
    r.log2 = detail::up_double(t);
    return r;
}

/// 22 max(d_i) min(d_i) for a bivariate multidegree.
inline BoundReport bound_ruppert(const std::vector<long>& md) {
    BoundParams p;
    p.multidegree = md;
    if (md.size() != 2 || md[0] < 1 || md[1] < 1)
        return detail::flagged("ruppert", p, "needs a bivariate multidegree with positive entries");
    return detail::integer_report("ruppert", p, mpz_class(22) * std::max(md[0], md[1]) * std::min(md[0], md[1]));
}

/// 22 vol_2(Delta)
inline BoundReport bound_beukers_smyth(const mpq_class& vol) {
    BoundParams p;
    p.n = 2;
    p.vol = vol;
    if (vol <= 0) return detail::flagged("beukers_smyth", p, "needs a positive planar volume");
    BoundReport r;
    r.name = "beukers_smyth";
    r.params = p;
    r.value = mpq_class(22) * vol;
    r.value->canonicalize();
    r.log2 = detail::log2_of(*r.value);
    return r;
}

/// (2(2n-1)(n-1))^{n(n-k)} delta^n
inline BoundReport bound_non_abelian(long n, long k, long delta) {
    BoundParams p;
    p.n = n;
    p.k = k;
    p.delta = delta;
    if (n < 1 || k < 0 || k > n || delta < 1) return detail::flagged("non_abelian", p, "needs 0 <= k <= n and delta >= 1");
    return detail::integer_report(
        "non_abelian", p,
        detail::zpow(mpz_class(2 * (2 * n - 1) * (n - 1)), static_cast<unsigned long>(n * (n - k))) *
            detail::zpow(mpz_class(delta), static_cast<unsigned long>(n)));
}

/// Every competing bound the parameters allow. Missing parameters default to
/// a hypersurface (k = 1) and isolated points (j = 0); bounds whose inputs
/// are absent or out of range are returned with `error` set.
inline std::vector<BoundReport> bound_competitors(const BoundParams& in) {
    std::vector<BoundReport> out;
    const long k = in.k.value_or(1), j = in.j.value_or(0);
    auto missing = [&](const char* name, const char* what) {
        out.push_back(detail::flagged(name, in, std::string("missing parameter ") + what));
    };
    if (in.n && in.delta)
        out.push_back(bound_schmidt(*in.n, *in.delta));
    else
        missing("schmidt", "n, delta");
    if (in.n && in.d)
        out.push_back(bound_aliev_smyth(*in.n, *in.d));
    else
        missing("aliev_smyth", "n, d");
    if (in.n && in.delta)
        out.push_back(bound_amoroso_viada(*in.n, k, j, *in.delta));
    else
        missing("amoroso_viada", "n, delta");
    if (in.multidegree)
        out.push_back(bound_ruppert(*in.multidegree));
    else
        missing("ruppert", "multidegree");
    if (in.vol && (!in.n || *in.n == 2))
        out.push_back(bound_beukers_smyth(*in.vol));
    else
        missing("beukers_smyth", "vol (n = 2)");
    if (in.n && in.delta)
        out.push_back(bound_non_abelian(*in.n, k, *in.delta));
    else
        missing("non_abelian", "n, delta");
    return out;
}

/// Decimal rendering of a report value; falls back to "2^<log2>" above
/// kRenderBits unless `full` is set.
inline std::string render_value(const BoundReport& r, bool full = false) {
    if (!r.error.empty()) return "unsupported";
    if (!r.value || (!full && r.log2 > kRenderBits)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "2^%.6f", r.log2);
        return buf;
    }
    return r.value->get_str();
}

}  // namespace torsion
