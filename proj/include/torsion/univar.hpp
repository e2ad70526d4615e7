#pragma once

// Dense univariate polynomials over a cyclotomic field and the extraction of
// their roots of unity.

#include <cmath>
#include <utility>
#include <vector>

#include "torsion/cyclo.hpp"

namespace torsion {

class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<CycloNum> c) : c_(std::move(c)) { trim(); }
    static UPoly constant(const CycloNum& c) { return UPoly({c}); }
    /// c * t^k
    static UPoly monomial(std::size_t k, const CycloNum& c) {
        std::vector<CycloNum> v(k + 1);
        v[k] = c;
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const CycloNum& operator[](std::size_t i) const { return c_[i]; }
    CycloNum coeff(std::size_t i) const { return i < c_.size() ? c_[i] : CycloNum(); }
    const std::vector<CycloNum>& coeffs() const { return c_; }
    const CycloNum& lc() const {
        if (c_.empty()) throw Error("domain", "leading coefficient of zero polynomial");
        return c_.back();
    }
    i64 conductor() const {
        i64 N = 1;
        for (auto& c : c_) N = lcm(N, c.conductor());
        return N;
    }
    UPoly lifted(i64 M) const {
        UPoly r;
        for (auto& c : c_) r.c_.push_back(c.embed(M));
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<CycloNum> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size() && i < b.c_.size())
                r[i] = a.c_[i] + b.c_[i];
            else
                r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
        }
        return UPoly(std::move(r));
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<CycloNum> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const CycloNum& s) {
        if (s.is_zero()) return {};
        UPoly r = a;
        for (auto& c : r.c_) c = c * s;
        return r;
    }
    UPoly pow(int k) const {
        UPoly r = constant(CycloNum(1L));
        UPoly b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    /// Euclidean division over the field.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) throw Error("division_by_zero", "division by the zero polynomial");
        r = a;
        const int db = b.degree();
        q = UPoly();
        if (r.degree() < db) return;
        q.c_.assign(static_cast<std::size_t>(r.degree() - db + 1), CycloNum());
        const CycloNum inv = b.lc().inv();
        while (!r.is_zero() && r.degree() >= db) {
            const std::size_t s = static_cast<std::size_t>(r.degree() - db);
            const CycloNum c = r.lc() * inv;
            q.c_[s] = c;
            for (std::size_t j = 0; j + 1 < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) r.c_[s + j] -= c * b.c_[j];
            r.c_.pop_back();
            r.trim();
        }
        q.trim();
    }
    /// Exact quotient; throws if b does not divide a.
    static UPoly exact_div(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        if (!r.is_zero()) throw Error("internal", "inexact polynomial division");
        return q;
    }
    /// Monic gcd (zero if both are zero).
    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
    UPoly monic() const {
        if (is_zero()) return *this;
        if (lc().is_one()) return *this;
        return *this * lc().inv();
    }
    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<CycloNum> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * CycloNum(static_cast<long>(i));
        return UPoly(std::move(r));
    }
    /// Number of factors t removed from the bottom, and the quotient.
    std::pair<UPoly, int> strip_t() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        return {UPoly(std::vector<CycloNum>(c_.begin() + static_cast<long>(k), c_.end())), static_cast<int>(k)};
    }

    CycloNum evaluate(const CycloNum& x) const {
        CycloNum acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    /// Exact value at a root of unity.
    CycloNum evaluate(const RootOfUnity& r) const {
        RootSum acc(lcm(conductor(), normalize_conductor(r.ord())));
        for (std::size_t i = 0; i < c_.size(); ++i) acc.add(c_[i], r.pow(static_cast<i64>(i)));
        return acc.value();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<CycloNum> c_;
};

struct RootMultiplicity {
    RootOfUnity root;
    int multiplicity = 1;
    friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

namespace detail {

inline const std::vector<i64>& phi_table(i64 limit) {
    static std::mutex mu;
    static std::vector<i64> table;
    std::lock_guard<std::mutex> lk(mu);
    if (static_cast<i64>(table.size()) <= limit) {
        const i64 n = std::max<i64>(limit + 1, 2 * static_cast<i64>(table.size()));
        table.assign(static_cast<std::size_t>(n), 0);
        for (i64 i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i;
        for (i64 p = 2; p < n; ++p) {
            if (table[static_cast<std::size_t>(p)] != p) continue;
            for (i64 k = p; k < n; k += p) table[static_cast<std::size_t>(k)] -= table[static_cast<std::size_t>(k)] / p;
        }
    }
    return table;
}

}  // namespace detail

/// Orders m of roots of unity that can be roots of a degree-`deg` polynomial
/// over Q(zeta_N): [Q(zeta_lcm(m,N)) : Q(zeta_N)] <= deg.
inline std::vector<i64> candidate_orders(int deg, i64 N) {
    const i64 phiN = euler_phi(N);
    const i64 X = static_cast<i64>(deg) * phiN;
    // Rosser-Schoenfeld: phi(m) > m / (e^gamma lnln m + 3 / lnln m) for m >= 3.
    // The search range is doubled past the first m where that bound exceeds X.
    auto lower = [](double m) {
        const double ll = std::log(std::log(m));
        return m / (1.7810724179901979 * ll + 3.0 / ll);
    };
    i64 limit = 64;
    while (lower(static_cast<double>(limit)) <= static_cast<double>(X)) limit *= 2;
    limit *= 2;
    const auto& phi = detail::phi_table(limit);
    std::vector<i64> out;
    for (i64 m = 1; m <= limit; ++m) {
        const i64 pm = phi[static_cast<std::size_t>(m)];
        if (pm > X) continue;
        const i64 g = gcd(m, N);
        const i64 pl = pm * phiN / phi[static_cast<std::size_t>(g)];
        if (pl <= X) out.push_back(m);
    }
    return out;
}

/// Roots of unity among the roots of h, with multiplicities, in canonical order.
///
/// Candidates zeta_m^k are screened by their image in F_p for a prime
/// p = 1 (mod lcm(m, N)); a nonzero image certifies h(zeta_m^k) != 0. Every
/// surviving candidate is decided by exact evaluation.
inline std::vector<RootMultiplicity> cyclotomic_roots_univar(const UPoly& h_in) {
    if (h_in.is_zero()) throw Error("domain", "root extraction from the zero polynomial");
    UPoly h = h_in.strip_t().first;
    std::vector<RootMultiplicity> out;
    if (h.degree() <= 0) return out;
    const i64 Nh = h.conductor();
    h = h.lifted(Nh);
    i64 Nmin = 1;
    for (auto& c : h.coeffs()) Nmin = lcm(Nmin, c.minimal_conductor());
    std::vector<UPoly> derivs;
    for (i64 m : candidate_orders(h.degree(), Nmin)) {
        const i64 L = lcm(m, Nh);
        std::vector<u64> img;
        PrimeRoot pr;
        for (int skip = 0;; ++skip) {
            pr = make_prime_root(L, skip);
            img.clear();
            bool ok = true;
            for (auto& c : h.coeffs()) {
                auto v = c.image(pr);
                if (!v) {
                    ok = false;
                    break;
                }
                img.push_back(*v);
            }
            if (ok) break;
        }
        const u64 p = pr.p;
        const u64 w = pr.power(L / m);
        u64 x = 1;
        for (i64 k = 0; k < m; ++k, x = mulmod(x, w, p)) {
            if (gcd(k, m) != 1) continue;
            u64 acc = 0;
            for (std::size_t i = img.size(); i-- > 0;) acc = (mulmod(acc, x, p) + img[i]) % p;
            if (acc != 0) continue;
            const RootOfUnity r(k, m);
            if (!h.evaluate(r).is_zero()) continue;
            int mult = 1;
            if (derivs.empty()) {
                UPoly d = h.derivative();
                while (!d.is_zero()) {
                    derivs.push_back(d);
                    d = d.derivative();
                }
            }
            for (auto& d : derivs) {
                if (!d.evaluate(r).is_zero()) break;
                ++mult;
            }
            out.push_back({r, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.root < b.root; });
    return out;
}

}  // namespace torsion
