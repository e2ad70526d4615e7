#pragma once

// Roots of unity and exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A CycloNum stores its coordinates in the power basis 1, z, ..., z^(phi(N)-1)
// of Q(zeta_N) = Q[z]/(Phi_N), as integer numerators over one positive common
// denominator. The conductor N is always normalized so that N != 2 (mod 4).

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "torsion/arith.hpp"

namespace torsion {

// ---------------------------------------------------------------------------
// RootOfUnity

/// e^(2 pi i num / ord) in canonical form: 0 <= num < ord, gcd(num, ord) = 1,
/// and the identity is (0, 1).
class RootOfUnity {
public:
    RootOfUnity() = default;
    RootOfUnity(i64 num, i64 ord) {
        if (ord <= 0) throw Error("domain", "root of unity order must be positive");
        num = mod(num, ord);
        i64 g = gcd(num, ord);
        if (num == 0) g = ord;
        num_ = num / g;
        ord_ = ord / g;
    }

    i64 num() const { return num_; }
    i64 ord() const { return ord_; }
    bool is_one() const { return ord_ == 1; }

    RootOfUnity operator*(const RootOfUnity& o) const {
        i64 L = lcm(ord_, o.ord_);
        return {num_ * (L / ord_) + o.num_ * (L / o.ord_), L};
    }
    RootOfUnity operator/(const RootOfUnity& o) const { return *this * o.inverse(); }
    RootOfUnity inverse() const { return {ord_ - num_, ord_}; }
    RootOfUnity pow(i64 e) const {
        // num * e can overflow only for absurd orders; reduce e first.
        return {static_cast<i64>((static_cast<__int128>(num_) * mod(e, ord_)) % ord_), ord_};
    }

    /// All k-th roots of this element, canonical and sorted.
    std::vector<RootOfUnity> roots(i64 k) const;

    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
    /// Canonical order: by (ord, num).
    friend std::strong_ordering operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
        if (auto c = a.ord_ <=> b.ord_; c != 0) return c;
        return a.num_ <=> b.num_;
    }

    std::complex<double> to_complex() const {
        double t = 2.0 * M_PI * static_cast<double>(num_) / static_cast<double>(ord_);
        return {std::cos(t), std::sin(t)};
    }

private:
    i64 num_ = 0;
    i64 ord_ = 1;
};

inline std::vector<RootOfUnity> RootOfUnity::roots(i64 k) const {
    if (k <= 0) throw Error("domain", "root index must be positive");
    std::vector<RootOfUnity> out;
    out.reserve(static_cast<std::size_t>(k));
    // x^k = e^(2 pi i num/ord)  <=>  x = e^(2 pi i (num + j ord) / (k ord)).
    for (i64 j = 0; j < k; ++j) out.emplace_back(num_ + j * ord_, k * ord_);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const RootOfUnity& r) {
    return os << "(" << r.num() << "," << r.ord() << ")";
}

using TorsionPoint = std::vector<RootOfUnity>;

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and per-conductor tables

/// Phi_N together with its nonzero lower coefficients, cached per conductor.
struct CycloField {
    i64 N = 1;
    i64 phi = 1;
    std::vector<i64> Phi;                            // degree phi, monic
    std::vector<std::pair<std::size_t, i64>> tail;  // (j, Phi[j]) for j < phi, Phi[j] != 0
};

namespace detail {

// Exact division of integer polynomials by a monic divisor (low degree first).
inline std::vector<i64> div_monic(const std::vector<i64>& a, const std::vector<i64>& b) {
    std::vector<i64> r = a;
    const std::size_t db = b.size() - 1;
    std::vector<i64> q(a.size() - db, 0);
    for (std::size_t k = a.size(); k-- > db;) {
        i64 c = r[k];
        if (c == 0) continue;
        q[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
    }
    for (std::size_t j = 0; j < db; ++j)
        if (r[j] != 0) throw Error("internal", "cyclotomic division not exact");
    return q;
}

inline std::vector<i64> cyclotomic_poly(i64 n);

inline std::vector<i64> cyclotomic_poly_uncached(i64 n) {
    if (n == 1) return {-1, 1};
    auto fac = factorize(n);
    i64 rad = 1;
    for (auto& [p, e] : fac) rad *= p;
    if (rad != n) {
        // Phi_n(x) = Phi_rad(x^(n/rad))
        auto base = cyclotomic_poly(rad);
        i64 s = n / rad;
        std::vector<i64> out(static_cast<std::size_t>((base.size() - 1) * s + 1), 0);
        for (std::size_t j = 0; j < base.size(); ++j) out[j * s] = base[j];
        return out;
    }
    // squarefree: Phi_{p m}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m
    i64 p = fac.back().first;
    i64 m = n / p;
    auto pm = cyclotomic_poly(m);
    std::vector<i64> lifted(static_cast<std::size_t>((pm.size() - 1) * p + 1), 0);
    for (std::size_t j = 0; j < pm.size(); ++j) lifted[j * p] = pm[j];
    return div_monic(lifted, pm);
}

inline std::vector<i64> cyclotomic_poly(i64 n) {
    static std::mutex mu;
    static std::map<i64, std::vector<i64>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto v = cyclotomic_poly_uncached(n);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(n, std::move(v)).first->second;
}

}  // namespace detail

/// Integer coefficients of Phi_n, lowest degree first.
inline std::vector<i64> cyclotomic_polynomial(i64 n) {
    if (n <= 0) throw Error("domain", "cyclotomic index must be positive");
    return detail::cyclotomic_poly(n);
}

/// Cached field data; safe for concurrent first use.
inline const CycloField& cyclo_field(i64 N) {
    static std::mutex mu;
    static std::map<i64, std::unique_ptr<CycloField>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return *it->second;
    auto f = std::make_unique<CycloField>();
    f->N = N;
    f->Phi = detail::cyclotomic_poly(N);
    f->phi = static_cast<i64>(f->Phi.size()) - 1;
    for (std::size_t j = 0; j + 1 < f->Phi.size(); ++j)
        if (f->Phi[j] != 0) f->tail.emplace_back(j, f->Phi[j]);
    return *cache.emplace(N, std::move(f)).first->second;
}

namespace detail {

// v -= c * k  for a machine integer k.
inline void submul_i64(mpz_class& v, const mpz_class& c, i64 k) {
    if (k >= 0)
        mpz_submul_ui(v.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    else
        mpz_addmul_ui(v.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-k));
}

// Reduce an integer vector (any length) modulo Phi_N in place; result has length phi.
inline void reduce_mod_phi(std::vector<mpz_class>& v, const CycloField& F) {
    const std::size_t phi = static_cast<std::size_t>(F.phi);
    for (std::size_t k = v.size(); k-- > phi;) {
        if (sgn(v[k]) == 0) continue;
        const mpz_class c = v[k];
        const std::size_t base = k - phi;
        for (auto& [j, pj] : F.tail) submul_i64(v[base + j], c, pj);
        v[k] = 0;
    }
    v.resize(phi);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CycloNum

class GaloisAut;

class CycloNum {
public:
    /// Zero of Q.
    CycloNum() : N_(1), num_(1), den_(1) {}
    CycloNum(long v) : N_(1), num_{mpz_class(v)}, den_(1) {}  // NOLINT(google-explicit-constructor)
    CycloNum(const mpq_class& q) : N_(1), num_{q.get_num()}, den_(q.get_den()) {}  // NOLINT

    /// From rational coordinates in the power basis of Q(zeta_N). N must be
    /// normalized; shorter vectors are padded and longer ones reduced mod Phi_N.
    static CycloNum from_coeffs(i64 N, const std::vector<mpq_class>& coeffs) {
        if (N <= 0 || N % 4 == 2) throw Error("domain", "conductor must be positive and != 2 mod 4");
        const auto& F = cyclo_field(N);
        mpz_class den = 1;
        for (auto& c : coeffs) den = lcm(den, mpz_class(c.get_den()));
        std::vector<mpz_class> num(std::max<std::size_t>(coeffs.size(), static_cast<std::size_t>(F.phi)));
        for (std::size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
        detail::reduce_mod_phi(num, F);
        CycloNum r;
        r.N_ = N;
        r.num_ = std::move(num);
        r.den_ = den;
        r.normalize();
        return r;
    }

    /// zeta_m^k placed in conductor lcm(normalize(m), N).
    static CycloNum zeta(i64 k, i64 m, i64 N = 1) {
        const RootOfUnity r(k, m);
        const i64 mm = normalize_conductor(r.ord());
        const i64 L = lcm(mm, normalize_conductor(N));
        std::vector<mpz_class> v(static_cast<std::size_t>(L));
        mpz_class sign = 1;
        i64 e;
        if (r.ord() == mm) {
            e = r.num() * (L / mm);
        } else {
            // ord = 2 mm with mm odd: zeta_ord^k = -zeta_mm^((k + mm)/2) for odd k.
            i64 kk = r.num();
            if (kk % 2 == 0) {
                e = (kk / 2) * (L / mm);
            } else {
                e = ((kk + mm) / 2 % mm) * (L / mm);
                sign = -1;
            }
        }
        v[static_cast<std::size_t>(mod(e, L))] = sign;
        return from_raw(L, std::move(v), 1);
    }

    static CycloNum root(const RootOfUnity& r, i64 N = 1) { return zeta(r.num(), r.ord(), N); }

    i64 conductor() const { return N_; }
    std::size_t dim() const { return num_.size(); }
    mpq_class coeff(std::size_t i) const {
        mpq_class q(num_.at(i), den_);
        q.canonicalize();
        return q;
    }
    std::vector<mpq_class> coeffs() const {
        std::vector<mpq_class> out;
        out.reserve(num_.size());
        for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
        return out;
    }
    const std::vector<mpz_class>& numerators() const { return num_; }
    const mpz_class& denominator() const { return den_; }

    bool is_zero() const {
        for (auto& c : num_)
            if (sgn(c) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < num_.size(); ++i)
            if (sgn(num_[i]) != 0) return false;
        return true;
    }
    bool is_one() const { return is_rational() && num_[0] == den_; }
    std::optional<mpq_class> as_rational() const {
        if (!is_rational()) return std::nullopt;
        return coeff(0);
    }

    /// Image in Q(zeta_M); requires conductor() | M.
    CycloNum embed(i64 M) const {
        if (M == N_) return *this;
        if (M <= 0 || M % 4 == 2) throw Error("domain", "target conductor must be positive and != 2 mod 4");
        if (M % N_ != 0) throw Error("domain", "target conductor " + std::to_string(M) + " is not a multiple of " + std::to_string(N_));
        const i64 s = M / N_;
        std::vector<mpz_class> v(static_cast<std::size_t>(M));
        for (std::size_t i = 0; i < num_.size(); ++i)
            if (sgn(num_[i]) != 0) v[i * static_cast<std::size_t>(s)] = num_[i];
        return from_raw(M, std::move(v), den_);
    }

    /// Least normalized N' | N with this element in Q(zeta_N').
    i64 minimal_conductor() const { return reduced().conductor(); }
    /// The same number expressed at its minimal conductor.
    CycloNum reduced() const;

    CycloNum operator-() const {
        CycloNum r = *this;
        for (auto& c : r.num_) c = -c;
        return r;
    }
    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) { return add(a, b, false); }
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) { return add(a, b, true); }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inv(); }
    CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
    CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
    CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }

    CycloNum inv() const;
    CycloNum pow(i64 e) const;
    CycloNum apply(const GaloisAut& s) const;

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        if (a.N_ == b.N_) return a.den_ == b.den_ && a.num_ == b.num_;
        return (a - b).is_zero();
    }

    /// Some k with this = zeta_k^j, if this is a root of unity.
    std::optional<RootOfUnity> as_root_of_unity() const;

    /// Floating-point value; for diagnostics only.
    std::complex<double> to_complex() const {
        std::complex<double> s = 0;
        const double d = den_.get_d();
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (sgn(num_[i]) == 0) continue;
            double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(N_);
            s += (num_[i].get_d() / d) * std::complex<double>(std::cos(t), std::sin(t));
        }
        return s;
    }

    /// Reduction modulo a prime p = 1 (mod L) where conductor() | L; empty when
    /// p divides the denominator.
    std::optional<u64> image(const PrimeRoot& pr) const {
        const u64 p = pr.p;
        const u64 dm = mpz_fdiv_ui(den_.get_mpz_t(), p);
        if (dm == 0) return std::nullopt;
        const i64 step = static_cast<i64>(pr.order) / N_;
        const u64 w = pr.power(step);
        u64 acc = 0, wp = 1;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (sgn(num_[i]) != 0) {
                u64 c = mpz_fdiv_ui(num_[i].get_mpz_t(), p);
                acc = (acc + mulmod(c, wp, p)) % p;
            }
            wp = mulmod(wp, w, p);
        }
        return mulmod(acc, pr.inv(dm), p);
    }

    /// Build from an integer vector of any length (indices are exponents of
    /// zeta_N, reduced modulo z^N - 1 and Phi_N) over a common denominator.
    static CycloNum from_raw(i64 N, std::vector<mpz_class> v, const mpz_class& den) {
        const auto& F = cyclo_field(N);
        const std::size_t n = static_cast<std::size_t>(N);
        if (v.size() > n) {
            for (std::size_t k = n; k < v.size(); ++k) v[k % n] += v[k];
            v.resize(n);
        }
        if (v.size() < static_cast<std::size_t>(F.phi)) v.resize(static_cast<std::size_t>(F.phi));
        detail::reduce_mod_phi(v, F);
        CycloNum r;
        r.N_ = N;
        r.num_ = std::move(v);
        r.den_ = den;
        r.normalize();
        return r;
    }

private:
    void normalize() {
        if (sgn(den_) < 0) {
            den_ = -den_;
            for (auto& c : num_) c = -c;
        }
        if (den_ == 1) return;
        mpz_class g = den_;
        for (auto& c : num_) {
            if (g == 1) break;
            if (sgn(c) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        if (is_zero()) {
            den_ = 1;
            return;
        }
        if (g != 1) {
            for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    static CycloNum add(const CycloNum& a, const CycloNum& b, bool negate_b) {
        if (a.N_ != b.N_) {
            const i64 L = lcm(a.N_, b.N_);
            return add(a.embed(L), b.embed(L), negate_b);
        }
        CycloNum r;
        r.N_ = a.N_;
        r.num_.resize(a.num_.size());
        if (a.den_ == b.den_) {
            for (std::size_t i = 0; i < a.num_.size(); ++i)
                if (negate_b)
                    r.num_[i] = a.num_[i] - b.num_[i];
                else
                    r.num_[i] = a.num_[i] + b.num_[i];
            r.den_ = a.den_;
        } else {
            const mpz_class g = gcd(a.den_, b.den_);
            const mpz_class fa = b.den_ / g, fb = a.den_ / g;
            for (std::size_t i = 0; i < a.num_.size(); ++i) {
                r.num_[i] = a.num_[i] * fa;
                if (negate_b)
                    r.num_[i] -= b.num_[i] * fb;
                else
                    r.num_[i] += b.num_[i] * fb;
            }
            r.den_ = a.den_ * fa;
        }
        r.normalize();
        return r;
    }

    i64 N_;
    std::vector<mpz_class> num_;
    mpz_class den_;
};

inline CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    // Scalar fast paths.
    if (a.is_rational() || b.is_rational()) {
        const CycloNum& s = a.is_rational() ? a : b;
        const CycloNum& o = a.is_rational() ? b : a;
        CycloNum r = o.embed(lcm(a.N_, b.N_));
        for (auto& c : r.num_) c *= s.num_[0];
        r.den_ *= s.den_;
        r.normalize();
        return r;
    }
    if (a.N_ != b.N_) {
        const i64 L = lcm(a.N_, b.N_);
        return a.embed(L) * b.embed(L);
    }
    const std::size_t n = a.num_.size();
    std::vector<mpz_class> prod(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a.num_[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(b.num_[j]) == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
        }
    }
    detail::reduce_mod_phi(prod, cyclo_field(a.N_));
    CycloNum r;
    r.N_ = a.N_;
    r.num_ = std::move(prod);
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
}

namespace detail {

// Dense rational polynomials for the extended Euclid in inv().
using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    const mpq_class lb = b.back();
    while (r.size() >= b.size() && !r.empty()) {
        const std::size_t s = r.size() - b.size();
        const mpq_class c = r.back() / lb;
        q[s] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[s + j] -= c * b[j];
        r.pop_back();
        trim(r);
    }
}

}  // namespace detail

inline CycloNum CycloNum::inv() const {
    if (is_zero()) throw Error("division_by_zero", "inverse of zero in a cyclotomic field");
    if (is_rational()) return CycloNum(mpq_class(den_, num_[0]));
    using detail::QPoly;
    const auto& F = cyclo_field(N_);
    QPoly r0(F.Phi.begin(), F.Phi.end());
    QPoly r1;
    for (auto& c : num_) r1.emplace_back(c);
    detail::trim(r1);
    QPoly s0{0}, s1{1};
    while (r1.size() > 1) {
        QPoly q, r;
        detail::divmod(r0, r1, q, r);
        // s2 = s0 - q s1
        QPoly s2(std::max(s0.size(), q.size() + s1.size() - 1), 0);
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        detail::trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // s1 * a = r1[0]  (mod Phi)
    std::vector<mpq_class> out;
    for (auto& c : s1) out.push_back(c / r1[0]);
    // multiply back by the stored denominator: a = num/den so a^-1 = den * (num)^-1
    CycloNum res = from_coeffs(N_, out);
    return res * CycloNum(mpq_class(den_));
}

inline CycloNum CycloNum::pow(i64 e) const {
    if (e < 0) return inv().pow(-e);
    CycloNum result = CycloNum(1L).embed(N_);
    CycloNum b = *this;
    while (e) {
        if (e & 1) result = result * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Galois automorphisms

/// sigma_a : zeta_N -> zeta_N^a on Q(zeta_N), gcd(a, N) = 1.
class GaloisAut {
public:
    GaloisAut(i64 N, i64 a) : N_(normalize_conductor(N)), a_(mod(a, N_ == 0 ? 1 : N_)) {
        if (gcd(a_, N_) != 1) throw Error("domain", "Galois exponent " + std::to_string(a) + " is not a unit mod " + std::to_string(N_));
    }
    i64 conductor() const { return N_; }
    i64 exponent() const { return a_; }
    /// (this o o)(zeta) = this(o(zeta)) = zeta^(a b)
    GaloisAut compose(const GaloisAut& o) const {
        if (o.N_ != N_) throw Error("domain", "composition of automorphisms of different fields");
        return GaloisAut(N_, static_cast<i64>((static_cast<__int128>(a_) * o.a_) % N_));
    }
    /// The automorphism of Q(zeta_M), N | M, extending this one and acting as
    /// the identity on the prime-to-N part (found by CRT).
    GaloisAut extend_to(i64 M) const {
        M = normalize_conductor(M);
        if (M % N_ != 0) throw Error("domain", "cannot extend to a field not containing the base");
        if (M == N_) return *this;
        for (i64 b = a_; b < M * N_ + M; b += N_) {
            if (gcd(b, M) != 1) continue;
            // identity on zeta_{M'} where M' is the largest divisor of M prime to N
            i64 mp = M;
            for (i64 p : prime_divisors(N_))
                while (mp % p == 0) mp /= p;
            if (mod(b, mp) == 1 % mp) return GaloisAut(M, b);
        }
        throw Error("internal", "no extension of Galois automorphism found");
    }
    friend bool operator==(const GaloisAut&, const GaloisAut&) = default;

private:
    i64 N_;
    i64 a_;
};

inline CycloNum CycloNum::apply(const GaloisAut& s) const {
    if (s.conductor() != N_) {
        if (N_ == 1) return *this;
        if (s.conductor() % N_ == 0) {
            // restriction of s to Q(zeta_N): zeta_N -> zeta_N^(a mod N)
            return apply(GaloisAut(N_, mod(s.exponent(), N_)));
        }
        return embed(lcm(N_, s.conductor())).apply(s.extend_to(lcm(N_, s.conductor())));
    }
    const std::size_t n = static_cast<std::size_t>(N_);
    std::vector<mpz_class> v(n);
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (sgn(num_[i]) != 0) v[static_cast<std::size_t>(mod(static_cast<i64>(i) * s.exponent(), N_))] += num_[i];
    return from_raw(N_, std::move(v), den_);
}

namespace detail {

// Solve x = sum_j y_j zeta_d^j (embedded in conductor N) for rational y;
// returns nullopt if x is not in Q(zeta_d).
inline std::optional<CycloNum> restrict_to(const CycloNum& x, i64 d) {
    const i64 N = x.conductor();
    const auto& Fd = cyclo_field(d);
    const std::size_t rows = x.dim();
    const std::size_t cols = static_cast<std::size_t>(Fd.phi);
    // Columns: images of zeta_d^j.
    std::vector<std::vector<mpq_class>> A(rows, std::vector<mpq_class>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j) {
        CycloNum e = CycloNum::zeta(static_cast<i64>(j), d, N);
        for (std::size_t i = 0; i < rows; ++i) A[i][j] = e.coeff(i);
    }
    for (std::size_t i = 0; i < rows; ++i) A[i][cols] = x.coeff(i);
    // Gaussian elimination.
    std::size_t r = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(A[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(A[i][c]) == 0) continue;
            const mpq_class f = A[i][c] / A[r][c];
            for (std::size_t k = c; k <= cols; ++k) A[i][k] -= f * A[r][k];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (sgn(A[i][cols]) != 0) return std::nullopt;
    std::vector<mpq_class> y(cols, 0);
    for (std::size_t i = 0; i < r; ++i) y[pivcol[i]] = A[i][cols] / A[i][pivcol[i]];
    return CycloNum::from_coeffs(d, y);
}

// Fixed by every sigma_a with a = 1 (mod d)?
inline bool fixed_by_subgroup(const CycloNum& x, i64 d) {
    const i64 N = x.conductor();
    for (i64 a = 1 + d; a < N + d; a += d) {
        i64 aa = mod(a, N);
        if (aa == 1 || gcd(aa, N) != 1) continue;
        if (!(x.apply(GaloisAut(N, aa)) == x)) return false;
    }
    return true;
}

}  // namespace detail

inline CycloNum CycloNum::reduced() const {
    if (is_rational()) return CycloNum(coeff(0));
    CycloNum cur = *this;
    bool progress = true;
    while (progress && cur.N_ > 1) {
        progress = false;
        for (i64 p : prime_divisors(cur.N_)) {
            const i64 d = normalize_conductor(cur.N_ / p);
            if (d == cur.N_) continue;
            if (!detail::fixed_by_subgroup(cur, d)) continue;
            if (auto r = detail::restrict_to(cur, d)) {
                cur = *r;
                progress = true;
                break;
            }
        }
    }
    return cur;
}

inline std::optional<RootOfUnity> CycloNum::as_root_of_unity() const {
    const CycloNum x = reduced();
    if (x.den_ != 1) return std::nullopt;
    const i64 N = x.N_;
    // Roots of unity in Q(zeta_N) form mu_lcm(2, N); the argument proposes k, exact comparison decides.
    const i64 L = lcm(2, N);
    const std::complex<double> c = x.to_complex();
    if (std::abs(std::abs(c) - 1.0) > 1e-3) return std::nullopt;
    const i64 k0 = static_cast<i64>(std::llround(std::arg(c) / (2.0 * M_PI) * static_cast<double>(L)));
    for (i64 k : {k0, k0 - 1, k0 + 1}) {
        CycloNum z = zeta(mod(k, L), L, N);
        if (z.N_ == x.N_ && z.num_ == x.num_) return RootOfUnity(mod(k, L), L);
    }
    return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, const CycloNum& x) {
    os << "[N=" << x.conductor() << ":";
    for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? "," : "") << x.coeff(i).get_str();
    return os << "]";
}

/// Position of a root of unity in conductor L: r = sign * zeta_L^exponent.
/// Requires r.ord() | 2L (L normalized).
inline i64 exponent_in(const RootOfUnity& r, i64 L, int& sign) {
    sign = 1;
    if (L % r.ord() == 0) return r.num() * (L / r.ord());
    if ((2 * L) % r.ord() != 0) throw Error("domain", "root of unity does not lie in the target field");
    // L odd, r in mu_2L: zeta_2L^j = (-1)^j * zeta_L^(j (L+1)/2)
    const i64 j = r.num() * (2 * L / r.ord());
    if (j % 2 == 0) return j / 2;
    sign = -1;
    return mod((j + L) / 2, L);
}

/// Exact accumulator for sums  sum_i c_i * r_i  with c_i in Q(zeta_N_i),
/// r_i roots of unity, all living in Q(zeta_L).
class RootSum {
public:
    explicit RootSum(i64 L) : L_(normalize_conductor(L)), v_(static_cast<std::size_t>(L_)), den_(1) {}

    i64 conductor() const { return L_; }

    void add(const CycloNum& c, const RootOfUnity& r = RootOfUnity()) {
        if (c.is_zero()) return;
        if (L_ % c.conductor() != 0) throw Error("domain", "coefficient field not contained in accumulator field");
        int sign;
        const i64 e = exponent_in(r, L_, sign);
        const mpz_class& d = c.denominator();
        if (den_ % d != 0) {
            const mpz_class nd = lcm(den_, d);
            const mpz_class f = nd / den_;
            for (auto& x : v_)
                if (sgn(x) != 0) x *= f;
            den_ = nd;
        }
        const mpz_class f = den_ / d;
        const i64 step = L_ / c.conductor();
        const auto& nums = c.numerators();
        for (std::size_t i = 0; i < nums.size(); ++i) {
            if (sgn(nums[i]) == 0) continue;
            auto& slot = v_[static_cast<std::size_t>(mod(static_cast<i64>(i) * step + e, L_))];
            if (sign > 0)
                mpz_addmul(slot.get_mpz_t(), nums[i].get_mpz_t(), f.get_mpz_t());
            else
                mpz_submul(slot.get_mpz_t(), nums[i].get_mpz_t(), f.get_mpz_t());
        }
    }

    CycloNum value() const { return CycloNum::from_raw(L_, v_, den_); }

private:
    i64 L_;
    std::vector<mpz_class> v_;
    mpz_class den_;
};

/// x^exps evaluated at a torsion point is zeta_L^k for the returned (k, L).
inline RootOfUnity monomial_value(const TorsionPoint& w, const std::vector<int>& exps) {
    RootOfUnity r;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (exps[i] != 0) r = r * w[i].pow(exps[i]);
    return r;
}

}  // namespace torsion
