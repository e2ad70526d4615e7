#pragma once

// Elementary number theory shared by every module: gcd/lcm on machine
// integers, Euler's totient, factorization, conductor normalization, and a
// small prime-field toolkit used as an exact non-vanishing filter.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace torsion {

/// Base class of every error raised by the library. `code` is a stable
/// machine-readable identifier used in the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return (a / std::gcd(a, b)) * b;
}

/// Non-negative remainder.
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Extended Euclid: returns g = gcd(a, b) >= 0 and sets s, t with a*s + b*t = g.
inline i64 ext_gcd(i64 a, i64 b, i64& s, i64& t) {
    i64 old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
    while (r != 0) {
        i64 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, cs) = std::make_pair(cs, old_s - q * cs);
        std::tie(old_t, ct) = std::make_pair(ct, old_t - q * ct);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> ps;
    for (auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

inline i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline bool is_squarefree(i64 n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

inline std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto& [p, e] : factorize(n)) {
        std::size_t sz = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Q(zeta_N) = Q(zeta_{N/2}) when N = 2 (mod 4).
inline i64 normalize_conductor(i64 n) {
    if (n <= 0) throw Error("domain", "conductor must be positive");
    return (n % 4 == 2) ? n / 2 : n;
}

// ---------------------------------------------------------------------------
// Prime fields. A prime p = 1 (mod L) admits a ring map Z[zeta_L][1/d] -> F_p
// (d prime to p) sending zeta_L to an element of exact order L. Whenever the
// image of an algebraic number is nonzero, the number itself is nonzero; only
// images that vanish need an exact check in characteristic zero.

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// A prime p = 1 (mod L) together with an element of exact multiplicative
/// order L. `skip` selects the skip-th such prime above 2^61 / L * L.
struct PrimeRoot {
    u64 p = 0;
    u64 order = 0;
    u64 root = 0;  // element of exact order `order`

    u64 power(i64 e) const { return powmod(root, static_cast<u64>(mod(e, static_cast<i64>(order))), p); }
    u64 inv(u64 a) const { return powmod(a, p - 2, p); }
};

inline PrimeRoot make_prime_root(i64 L, int skip = 0) {
    static std::mutex mu;
    static std::map<std::pair<i64, int>, PrimeRoot> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({L, skip});
        if (it != cache.end()) return it->second;
    }
    const u64 ul = static_cast<u64>(L);
    u64 t = (1ull << 61) / ul;
    PrimeRoot pr;
    int found = 0;
    for (;; ++t) {
        u64 p = t * ul + 1;
        if (!is_prime_u64(p)) continue;
        if (found++ < skip) continue;
        pr.p = p;
        break;
    }
    pr.order = ul;
    auto qs = prime_divisors(L);
    for (u64 g = 2;; ++g) {
        u64 w = powmod(g, (pr.p - 1) / ul, pr.p);
        bool ok = true;
        for (i64 q : qs)
            if (powmod(w, ul / static_cast<u64>(q), pr.p) == 1) ok = false;
        if (ok) {
            pr.root = w;
            break;
        }
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(L, skip), pr);
    return pr;
}

}  // namespace torsion
