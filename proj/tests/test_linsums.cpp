#include <gtest/gtest.h>

#include "support.hpp"

using namespace torsion;
using namespace torsion::testing;

namespace {

bool exact_zero(const std::vector<SumTerm>& t) {
    i64 L = 1;
    for (auto& s : t) L = lcm(L, normalize_conductor(s.root.ord()));
    RootSum acc(L);
    for (auto& s : t) acc.add(CycloNum(static_cast<long>(s.coeff)), s.root);
    return acc.value().is_zero();
}

bool has_vanishing_proper_subsum(const std::vector<SumTerm>& t) {
    const std::size_t k = t.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
        std::vector<SumTerm> s;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) s.push_back(t[i]);
        if (exact_zero(s)) return true;
    }
    return false;
}

// Brute force: minimal vanishing sums with xi_1 = 1 and the other roots in mu_M.
std::set<std::vector<RootOfUnity>> minimal_by_scan(const std::vector<i64>& a, i64 M) {
    const std::size_t k = a.size();
    std::set<std::vector<RootOfUnity>> out;
    std::vector<i64> e(k, 0);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == k) {
            std::complex<double> z = 0;
            for (std::size_t i = 0; i < k; ++i) z += static_cast<double>(a[i]) * RootOfUnity(e[i], M).to_complex();
            if (std::abs(z) > 1e-9) return;
            std::vector<SumTerm> t;
            for (std::size_t i = 0; i < k; ++i) t.push_back({a[i], RootOfUnity(e[i], M)});
            if (!exact_zero(t) || has_vanishing_proper_subsum(t)) return;
            std::vector<RootOfUnity> key;
            for (auto& s : t) key.push_back(s.root);
            out.insert(key);
            return;
        }
        for (i64 j = 0; j < M; ++j) {
            e[pos] = j;
            self(self, pos + 1);
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace

TEST(Linsums, PsiValues) {
    EXPECT_EQ(psi(1), 2);
    EXPECT_EQ(psi(6), 3);
    EXPECT_EQ(psi(30), 6);
    EXPECT_EQ(psi(105), 11);
}

TEST(Linsums, PsiIncrementOverNewPrimes) {
    for (i64 m = 1; m <= 1000; ++m)
        for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
            if (m % p != 0) EXPECT_EQ(psi(m * p), psi(m) + (p - 2)) << m << " " << p;
}

TEST(Linsums, ConductorListsMatchFilter) {
    EXPECT_EQ(cj_conductors(3), (std::vector<i64>{1, 2, 3, 6}));
    for (i64 k = 2; k <= 12; ++k) {
        std::vector<i64> want;
        for (i64 m = 1; m <= 100000; ++m)
            if (is_squarefree(m) && psi(m) <= k) want.push_back(m);
        EXPECT_EQ(cj_conductors(k), want) << k;
    }
}

TEST(Linsums, MinimalSumsMatchBruteForce) {
    for (const auto& a : std::vector<std::vector<i64>>{{1, 1}, {1, 2}, {1, 1, 1}, {2, 1, 1}, {1, 2, 3}, {1, 1, 1, 1}, {2, 1, 1, 1},
                                                       {1, 1, 1, 1, 1}, {2, 2, 1, 1, 1}, {3, 1, 1, 1, 1}}) {
        std::set<std::vector<RootOfUnity>> got;
        for (auto& s : minimal_vanishing_sums(a)) {
            std::vector<RootOfUnity> key;
            for (auto& t : s.terms) key.push_back(t.root);
            got.insert(key);
            EXPECT_TRUE(exact_zero(s.terms));
            EXPECT_FALSE(has_vanishing_proper_subsum(s.terms));
            EXPECT_TRUE(s.terms[0].root.is_one());
            for (auto& b : s.blocks) {
                std::vector<SumTerm> block;
                for (auto i : b) block.push_back(s.terms[i]);
                EXPECT_TRUE(cj_constraint_holds(block));
            }
        }
        EXPECT_EQ(got, minimal_by_scan(a, 30)) << a.size();
    }
}

TEST(Linsums, CubeRootClass) {
    MinSumOptions col;
    col.collapse = true;
    const auto one = minimal_vanishing_sums({1, 1, 1}, col);
    ASSERT_EQ(one.size(), 1u);
    std::set<RootOfUnity> roots;
    for (auto& t : one[0].terms) roots.insert(t.root);
    EXPECT_EQ(roots, (std::set<RootOfUnity>{RootOfUnity(), RootOfUnity(1, 3), RootOfUnity(2, 3)}));
    // Pentagon and the two mixed length-5 shapes up to rotation.
    EXPECT_GE(minimal_vanishing_sums({1, 1, 1, 1, 1}, col).size(), 1u);
    EXPECT_TRUE(minimal_vanishing_sums({1, 1, 1, 1}).empty());
}

TEST(Linsums, ConstraintRejectsBadBlocks) {
    // mu_4 block: 4 is not squarefree.
    EXPECT_FALSE(cj_constraint_holds({{1, RootOfUnity()}, {1, RootOfUnity(1, 4)}, {1, RootOfUnity(2, 4)}, {1, RootOfUnity(3, 4)}}));
    // conductor 5 with only three terms: psi(5) = 5 > 3.
    EXPECT_FALSE(cj_constraint_holds({{1, RootOfUnity()}, {1, RootOfUnity(1, 5)}, {1, RootOfUnity(2, 5)}}));
    EXPECT_TRUE(cj_constraint_holds({{1, RootOfUnity()}, {1, RootOfUnity(1, 3)}, {1, RootOfUnity(2, 3)}}));
}

TEST(Linsums, LinearSolverMatchesOracle) {
    struct Case {
        std::vector<LinearTerm> fixed;
        std::vector<i64> coeffs;
    };
    const std::vector<Case> cases{
        {{{-1, RootOfUnity()}}, {1, 1}},
        {{{1, RootOfUnity()}}, {1, 1}},
        {{{1, RootOfUnity(1, 5)}, {1, RootOfUnity(1, 7)}}, {1, 1}},
        {{{2, RootOfUnity()}}, {1, 1}},
        {{{1, RootOfUnity(1, 4)}}, {1, 1}},
        {{{1, RootOfUnity()}}, {1, 1, 1}},
        {{}, {1, 1, 1}},
        {{{1, RootOfUnity(1, 3)}}, {2, 1}},
    };
    for (auto& c : cases) {
        const std::size_t u = c.coeffs.size();
        const auto sol = solve_linear_torsion(c.fixed, u, c.coeffs);
        MPoly f(u);
        for (auto& t : c.fixed) f.add_term(Exponent(u, 0), CycloNum::root(t.root) * CycloNum(static_cast<long>(t.coeff)));
        for (std::size_t i = 0; i < u; ++i) {
            Exponent e(u, 0);
            e[i] = 1;
            f.add_term(e, CycloNum(static_cast<long>(c.coeffs[i])));
        }
        for (auto& s : sol) EXPECT_TRUE(coset_verify(f, s));
        for (i64 M : (u == 2 ? std::vector<i64>{30, 42, 60, 70, 84} : std::vector<i64>{12, 30})) {
            const auto pts = bruteforce_oracle(f, M);
            for (auto& p : pts) {
                bool in = false;
                for (auto& s : sol) in = in || s.contains(p);
                EXPECT_TRUE(in) << to_text(f) << " M=" << M;
            }
            // Conversely every zero-dimensional solution in mu_M^u is found by the oracle.
            for (auto& s : sol)
                if (s.dim() == 0) {
                    bool inM = true;
                    for (auto& r : s.base()) inM = inM && M % r.ord() == 0;
                    if (inM) EXPECT_TRUE(std::find(pts.begin(), pts.end(), s.base()) != pts.end());
                }
        }
    }
}

TEST(Linsums, FamilyPolynomialAndCount) {
    const FamilyInstance a = cj_family({5, 7}, 3);
    EXPECT_EQ(a.expected_isolated, 18);
    EXPECT_TRUE(a.f == parse_poly("z5 + z7 + x1^3 + x2^3", 2));
    EXPECT_EQ(cj_family({5, 7}, std::vector<int>{2, 3}).expected_isolated, 12);
    EXPECT_EQ(cj_family({7, 11, 13}, 2).expected_isolated, 48);
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return std::string("none");
    };
    EXPECT_EQ(code([] { cj_family({3, 7}, 1); }), "domain");
    EXPECT_EQ(code([] { cj_family({5, 9}, 1); }), "domain");
}

TEST(Linsums, FamilySolutionsPullBack) {
    // Solutions for exponent d are the d-th-root preimages of those for d = 1.
    const auto base = descent_solve(cj_family({5, 7}, 1).f);
    ASSERT_EQ(base.isolated.size(), 2u);
    for (int d : {2, 3}) {
        std::set<TorsionPoint> want;
        for (auto& c : base.isolated)
            for (auto& a : c.base()[0].roots(d))
                for (auto& b : c.base()[1].roots(d)) want.insert({a, b});
        const MPoly f = cj_family({5, 7}, d).f;
        const auto pts = bruteforce_oracle(f, 70 * d);
        EXPECT_EQ(std::set<TorsionPoint>(pts.begin(), pts.end()), want) << d;
    }
}
