#pragma once

// Vanishing sums of roots of unity. A minimal vanishing sum of k terms,
// rotated so that its first root is 1, only involves m-th roots of unity for
// a squarefree m with psi(m) = 2 + sum_{p | m} (p - 2) <= k. That bound
// makes the searches below finite.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <vector>

#include "torsion/lattice.hpp"
#include "torsion/poly.hpp"

namespace torsion {

inline i64 psi(i64 m) {
    if (m < 1) throw Error("domain", "psi needs a positive argument");
    i64 s = 2;
    for (i64 p : prime_divisors(m)) s += p - 2;
    return s;
}

/// All squarefree m with psi(m) <= k, ascending.
inline std::vector<i64> cj_conductors(i64 k) {
    if (k < 2) throw Error("domain", "cj_conductors needs k >= 2");
    std::vector<i64> primes;
    for (i64 p = 2; p <= k; ++p)
        if (is_prime_u64(static_cast<u64>(p))) primes.push_back(p);
    std::vector<i64> out;
    auto rec = [&](auto&& self, std::size_t i, i64 m, i64 budget) -> void {
        if (i == primes.size()) {
            out.push_back(m);
            return;
        }
        self(self, i + 1, m, budget);
        if (primes[i] - 2 <= budget) self(self, i + 1, m * primes[i], budget - (primes[i] - 2));
    };
    rec(rec, 0, 1, k - 2);
    std::sort(out.begin(), out.end());
    return out;
}

struct SumTerm {
    i64 coeff;
    RootOfUnity root;
    friend bool operator==(const SumTerm&, const SumTerm&) = default;
};

struct VanishingSum {
    std::vector<SumTerm> terms;
    std::vector<std::vector<std::size_t>> blocks;  // minimal vanishing subsums
};

namespace detail {

/// Exact test of sum c_i * root_i = 0.
inline bool sum_is_zero(const std::vector<SumTerm>& t) {
    i64 L = 1;
    for (auto& s : t) L = lcm(L, normalize_conductor(s.root.ord()));
    RootSum acc(L);
    for (auto& s : t) acc.add(CycloNum(static_cast<long>(s.coeff)), s.root);
    return acc.value().is_zero();
}

inline i64 ratio_conductor(const std::vector<SumTerm>& t) {
    i64 m = 1;
    for (auto& s : t) m = lcm(m, (s.root / t[0].root).ord());
    return m;
}

}  // namespace detail

/// Whether a block obeys the conductor constraint for minimal sums.
inline bool cj_constraint_holds(const std::vector<SumTerm>& block) {
    if (block.empty()) return false;
    const i64 m = detail::ratio_conductor(block);
    return is_squarefree(m) && psi(m) <= static_cast<i64>(block.size());
}

struct MinSumOptions {
    std::size_t max_terms = 8;
    bool collapse = false;  // identify solutions differing by rotation and permutation of equal coefficients
};

/// All minimal vanishing sums sum a_i xi_i = 0 with xi_1 = 1, one per tuple.
inline std::vector<VanishingSum> minimal_vanishing_sums(const std::vector<i64>& coeffs, const MinSumOptions& opt = {}) {
    const std::size_t k = coeffs.size();
    if (k < 2) throw Error("domain", "a vanishing sum needs at least two terms");
    if (k > opt.max_terms) throw Error("cap_exceeded", "at most " + std::to_string(opt.max_terms) + " terms are supported");
    for (i64 a : coeffs)
        if (a <= 0) throw Error("domain", "coefficients must be positive");
    const std::vector<i64> ms = cj_conductors(static_cast<i64>(k));
    // Maximal conductors: every admissible tuple lives in mu_m for one of them.
    std::vector<i64> maxi;
    for (i64 m : ms) {
        bool sub = false;
        for (i64 o : ms)
            if (o != m && o % m == 0) sub = true;
        if (!sub) maxi.push_back(m);
    }
    std::set<std::vector<RootOfUnity>> found;
    for (std::size_t mi = 0; mi < maxi.size(); ++mi) {
        const i64 m = maxi[mi];
        const PrimeRoot pr = make_prime_root(m);
        const u64 p = pr.p;
        std::vector<u64> pw(static_cast<std::size_t>(m));
        for (i64 j = 0; j < m; ++j) pw[static_cast<std::size_t>(j)] = pr.power(j);
        std::vector<u64> ca(k);
        for (std::size_t i = 0; i < k; ++i) ca[i] = static_cast<u64>(coeffs[i]) % p;
        // exps[0] = 0; free positions 1..k-1, the last one solved for.
        std::unordered_map<u64, i64> log_table;
        for (i64 j = 0; j < m; ++j) log_table[pw[static_cast<std::size_t>(j)]] = j;
        const u64 inv_last = pr.inv(ca[k - 1]);
        std::vector<i64> e(k, 0);
        // A subset vanishing in F_p is confirmed exactly before it is trusted.
        auto exact_zero = [&](std::size_t mask, std::size_t upto) {
            std::vector<SumTerm> t;
            for (std::size_t i = 0; i < upto; ++i)
                if (mask & (std::size_t{1} << i)) t.push_back({coeffs[i], RootOfUnity(e[i], m)});
            return detail::sum_is_zero(t);
        };
        // Subset sums (mod p) of the chosen prefix, indexed by bitmask.
        std::vector<std::vector<u64>> sub(k);
        sub[0] = {0, ca[0]};
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == k - 1) {
                // the full sum without the last term determines it
                const u64 s = sub[pos - 1].back();
                const u64 need = mulmod((p - s) % p, inv_last, p);
                auto it = log_table.find(need);
                if (it == log_table.end()) return;
                e[pos] = it->second;
                const u64 last = mulmod(ca[pos], pw[static_cast<std::size_t>(e[pos])], p);
                // proper subsets containing the last term
                const auto& prev = sub[pos - 1];
                const std::size_t full = prev.size() - 1;
                for (std::size_t mask = 0; mask < full; ++mask) {
                    u64 v = prev[mask] + last;
                    if (v >= p) v -= p;
                    if (v == 0 && exact_zero(mask | (std::size_t{1} << pos), pos + 1)) return;
                }
                std::vector<SumTerm> t(k);
                for (std::size_t i = 0; i < k; ++i) t[i] = {coeffs[i], RootOfUnity(e[i], m)};
                if (!detail::sum_is_zero(t)) return;
                // tuples inside a smaller maximal conductor were already seen
                std::vector<RootOfUnity> key;
                for (auto& s : t) key.push_back(s.root);
                found.insert(key);
                return;
            }
            const auto& prev = sub[pos - 1];
            for (i64 j = 0; j < m; ++j) {
                e[pos] = j;
                const u64 add = mulmod(ca[pos], pw[static_cast<std::size_t>(j)], p);
                std::vector<u64>& cur = sub[pos];
                cur.resize(prev.size() * 2);
                bool bad = false;
                for (std::size_t mask = 0; mask < prev.size(); ++mask) {
                    cur[mask] = prev[mask];
                    u64 v = prev[mask] + add;
                    if (v >= p) v -= p;
                    cur[mask + prev.size()] = v;
                    if (v == 0 && exact_zero(mask | prev.size(), pos + 1)) bad = true;
                }
                if (bad) continue;
                self(self, pos + 1);
            }
        };
        if (k == 2) {
            // a_1 + a_2 xi = 0 forces a_1 = a_2 and xi = -1.
            if (coeffs[0] == coeffs[1]) found.insert({RootOfUnity(), RootOfUnity(1, 2)});
            break;
        }
        rec(rec, 1);
    }
    std::vector<std::vector<RootOfUnity>> tuples(found.begin(), found.end());
    if (opt.collapse) {
        std::set<std::vector<RootOfUnity>> classes;
        std::vector<std::vector<RootOfUnity>> kept;
        for (auto& t : tuples) {
            std::vector<RootOfUnity> best;
            for (std::size_t j = 0; j < k; ++j) {
                if (coeffs[j] != coeffs[0]) continue;
                std::vector<std::pair<i64, RootOfUnity>> r;
                for (std::size_t i = 0; i < k; ++i) r.push_back({coeffs[i], t[i] / t[j]});
                std::swap(r[0], r[j]);
                std::sort(r.begin() + 1, r.end());
                std::vector<RootOfUnity> cand;
                for (auto& [c, x] : r) cand.push_back(x);
                if (best.empty() || cand < best) best = cand;
            }
            if (classes.insert(best).second) kept.push_back(t);
        }
        tuples = std::move(kept);
    }
    std::vector<VanishingSum> out;
    for (auto& t : tuples) {
        VanishingSum vs;
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < k; ++i) vs.terms.push_back({coeffs[i], t[i]});
        vs.blocks.push_back(idx);
        if (!cj_constraint_holds(vs.terms)) throw Error("internal", "minimal vanishing sum violates the conductor bound");
        out.push_back(std::move(vs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear equations in roots of unity

struct LinearTerm {
    i64 coeff;
    RootOfUnity root;
};

struct LinearOptions {
    std::size_t max_terms = 8;
};

/// Solutions xi in (mu_infinity)^u of  sum fixed + sum_i a_i xi_i = 0, as the
/// maximal torsion cosets of G_m^u they form. Every solution splits the terms
/// into minimal vanishing blocks: a block with a fixed term pins its unknowns,
/// a block of unknowns only leaves one free rotation.
inline std::vector<TorsionCoset> solve_linear_torsion(const std::vector<LinearTerm>& fixed_in, std::size_t u,
                                                      const std::vector<i64>& unknown_coeffs, const LinearOptions& opt = {}) {
    if (unknown_coeffs.size() != u) throw Error("domain", "one coefficient per unknown is required");
    for (i64 a : unknown_coeffs)
        if (a == 0) throw Error("domain", "unknown coefficients must be nonzero");
    std::vector<LinearTerm> fixed;
    for (auto& t : fixed_in)
        if (t.coeff != 0) fixed.push_back(t);
    const std::size_t total = fixed.size() + u;
    if (total > opt.max_terms) throw Error("cap_exceeded", "at most " + std::to_string(opt.max_terms) + " terms are supported");
    if (u == 0) throw Error("domain", "at least one unknown is required");

    // Terms 0..F-1 fixed, F..F+u-1 unknown. Signs are moved into the roots.
    const std::size_t F = fixed.size();
    std::vector<i64> absc(total);
    std::vector<RootOfUnity> sign(total);
    for (std::size_t i = 0; i < total; ++i) {
        const i64 c = i < F ? fixed[i].coeff : unknown_coeffs[i - F];
        absc[i] = c < 0 ? -c : c;
        sign[i] = c < 0 ? RootOfUnity(1, 2) : RootOfUnity();
    }
    std::map<std::vector<i64>, std::vector<VanishingSum>> cache;
    auto sums_for = [&](const std::vector<i64>& cs) -> const std::vector<VanishingSum>& {
        auto it = cache.find(cs);
        if (it == cache.end()) it = cache.emplace(cs, minimal_vanishing_sums(cs, {opt.max_terms, false})).first;
        return it->second;
    };

    std::vector<TorsionCoset> out;
    std::vector<std::size_t> block_of(total, 0);
    // Enumerate set partitions as restricted growth strings.
    auto process = [&](std::size_t nblocks) {
        std::vector<std::vector<std::size_t>> blocks(nblocks);
        for (std::size_t i = 0; i < total; ++i) blocks[block_of[i]].push_back(i);
        for (auto& b : blocks)
            if (b.size() < 2) return;
        // Per block, the list of admissible assignments of its unknowns.
        // Each option: values of xi' = sign * xi for pinned blocks, or ratios
        // to the first unknown for free blocks.
        struct Option {
            std::vector<RootOfUnity> vals;  // aligned with block members
        };
        std::vector<std::vector<Option>> opts(nblocks);
        std::vector<bool> free_block(nblocks, false);
        for (std::size_t bi = 0; bi < nblocks; ++bi) {
            const auto& b = blocks[bi];
            std::vector<i64> cs;
            for (std::size_t i : b) cs.push_back(absc[i]);
            const bool has_fixed = b[0] < F;
            free_block[bi] = !has_fixed;
            if (has_fixed && b.back() < F) {
                // all fixed: must vanish and be minimal is not required
                std::vector<SumTerm> t;
                for (std::size_t i : b) t.push_back({fixed[i].coeff, fixed[i].root});
                if (!detail::sum_is_zero(t)) return;
                opts[bi].push_back({});
                continue;
            }
            for (const VanishingSum& vs : sums_for(cs)) {
                // values w_i = rot * vs.root_i are the signed roots of the block
                const RootOfUnity rot = has_fixed ? sign[b[0]] * fixed[b[0]].root : RootOfUnity();
                Option o;
                bool ok = true;
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const RootOfUnity w = rot * vs.terms[j].root;
                    const std::size_t i = b[j];
                    if (i < F) {
                        if (w != sign[i] * fixed[i].root) ok = false;
                        o.vals.push_back(fixed[i].root);
                    } else {
                        o.vals.push_back(w / sign[i]);
                    }
                }
                if (ok) opts[bi].push_back(o);
            }
            if (opts[bi].empty()) return;
        }
        // Cartesian product of block options.
        std::vector<std::size_t> pick(nblocks, 0);
        while (true) {
            TorsionPoint base(u);
            IntMat lat;
            for (std::size_t bi = 0; bi < nblocks; ++bi) {
                const auto& b = blocks[bi];
                const Option& o = opts[bi][pick[bi]];
                std::size_t first_unknown = total;
                for (std::size_t j = 0; j < b.size(); ++j) {
                    if (b[j] < F) continue;
                    const std::size_t v = b[j] - F;
                    base[v] = o.vals[j];
                    IntVec row(u, 0);
                    if (free_block[bi] && first_unknown != total) {
                        row[v] = 1;
                        row[first_unknown - F] = -1;
                        lat.push_back(row);
                    } else if (!free_block[bi]) {
                        row[v] = 1;
                        lat.push_back(row);
                    }
                    if (first_unknown == total) first_unknown = b[j];
                }
            }
            out.emplace_back(base, lat);
            std::size_t bi = 0;
            while (bi < nblocks && ++pick[bi] == opts[bi].size()) pick[bi++] = 0;
            if (bi == nblocks) break;
        }
    };
    auto rec = [&](auto&& self, std::size_t i, std::size_t nblocks) -> void {
        if (i == total) {
            process(nblocks);
            return;
        }
        for (std::size_t b = 0; b <= nblocks; ++b) {
            block_of[i] = b;
            self(self, i + 1, std::max(nblocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    // Keep maximal cosets only.
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<TorsionCoset> maximal;
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool inside = false;
        for (std::size_t j = 0; j < out.size() && !inside; ++j)
            if (i != j && out[j].dim() > out[i].dim() && out[j].contains(out[i])) inside = true;
        if (!inside) maximal.push_back(out[i]);
    }
    return maximal;
}

/// The polynomial zeta_{p_1} + ... + zeta_{p_n} + x_1^{d_1} + ... + x_n^{d_n}
/// and its number of isolated torsion points n! d_1 ... d_n.
struct FamilyInstance {
    MPoly f;
    mpz_class expected_isolated;
};

inline FamilyInstance cj_family(const std::vector<i64>& primes, const std::vector<int>& degrees) {
    const std::size_t n = primes.size();
    if (n == 0) throw Error("domain", "at least one prime is required");
    if (degrees.size() != n) throw Error("domain", "one exponent per prime is required");
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_prime_u64(static_cast<u64>(primes[i]))) throw Error("domain", std::to_string(primes[i]) + " is not prime");
        if (primes[i] <= static_cast<i64>(2 * n)) throw Error("domain", "every prime must exceed 2n = " + std::to_string(2 * n));
        if (i > 0 && primes[i] <= primes[i - 1]) throw Error("domain", "primes must be distinct and increasing");
        if (degrees[i] < 1) throw Error("domain", "exponents must be positive");
    }
    FamilyInstance fi{MPoly(n), 1};
    CycloNum c;
    for (i64 p : primes) c = c + CycloNum::zeta(1, p);
    fi.f.add_term(Exponent(n, 0), c);
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = degrees[i];
        fi.f.add_term(e, CycloNum(1L));
        fi.expected_isolated *= static_cast<unsigned long>(i + 1) * static_cast<unsigned long>(degrees[i]);
    }
    return fi;
}

inline FamilyInstance cj_family(const std::vector<i64>& primes, int d) {
    return cj_family(primes, std::vector<int>(primes.size(), d));
}

}  // namespace torsion
