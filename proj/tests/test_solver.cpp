#include <gtest/gtest.h>

#include "support.hpp"

using namespace torsion;
using namespace torsion::testing;

namespace {

std::set<TorsionPoint> oracle_upto(const MPoly& f, i64 Mmax) {
    std::set<TorsionPoint> s;
    for (i64 M = Mmax / 2 + 1; M <= Mmax; ++M)
        for (auto& p : bruteforce_oracle(f, M)) s.insert(p);
    return s;
}

bool covered(const SolveReport& r, const TorsionPoint& p) {
    for (auto& c : r.isolated)
        if (c.contains(p)) return true;
    for (auto& c : r.cosets)
        if (c.contains(p)) return true;
    return false;
}

void expect_sound_and_complete(const MPoly& f, i64 Mmax) {
    const SolveReport r = descent_solve(f);
    for (std::size_t i = 0; i < r.isolated.size(); ++i) {
        EXPECT_TRUE(r.isolated_certified[i]);
        EXPECT_TRUE(f.evaluate(r.isolated[i].base()).is_zero()) << to_text(f);
    }
    for (std::size_t i = 0; i < r.cosets.size(); ++i) {
        EXPECT_TRUE(r.cosets_certified[i]);
        EXPECT_TRUE(coset_verify(f, r.cosets[i])) << to_text(f);
    }
    for (auto& p : oracle_upto(f, Mmax)) EXPECT_TRUE(covered(r, p)) << to_text(f);
}

}  // namespace

TEST(Solver, MinimalFieldCases) {
    EXPECT_EQ(minimal_field(parse_poly("x1 + x2 - 1", 2)).field_case, FieldCase::OddConductor);
    EXPECT_EQ(minimal_field(parse_poly("z3 + x1 + x2", 2)).N, 3);
    EXPECT_EQ(minimal_field(parse_poly("z6 + x1 + x2", 2)).N, 3);
    EXPECT_EQ(minimal_field(parse_poly("z4*x1 + x2", 2)).field_case, FieldCase::DivisibleBy4);
    EXPECT_EQ(minimal_field(parse_poly("z12 + x1", 2)).N, 12);
    EXPECT_EQ(minimal_field(parse_poly("(z8 + z8^3)*x1 + x2", 2)).N, 8);
}

TEST(Solver, TransformsVanishAtOraclePoints) {
    Rng rng(61);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        const i64 N = pick(rng, {1, 3, 4, 5, 8, 12});
        const MPoly f = random_poly(rng, 2, N, 3, 3);
        if (f.content_strip().first.is_constant()) continue;
        const TransformSet ts = lemma_transforms(f);
        for (auto& p : oracle_upto(f, 60)) {
            bool hit = false;
            for (auto& tr : ts.items) hit = hit || tr.g.evaluate(p).is_zero();
            EXPECT_TRUE(hit) << to_text(f);
            ++checked;
        }
    }
    // Hand-made instances with many torsion points.
    for (const char* s : {"x1 + x2 - 1", "x1^2 + x2^2 - 1", "z4*x1 + x2 - 1", "z12 + x1 + x2", "x1^2 + z3*x2^2 + 1"}) {
        const MPoly f = parse_poly(s, 2);
        const TransformSet ts = lemma_transforms(f);
        for (auto& p : oracle_upto(f, 120)) {
            bool hit = false;
            for (auto& tr : ts.items) hit = hit || tr.g.evaluate(p).is_zero();
            EXPECT_TRUE(hit) << s;
            ++checked;
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Solver, TransformCountsPerCase) {
    // 2^n - 1 sign twists plus 2^n twisted conjugates.
    const TransformSet odd = lemma_transforms(parse_poly("z5 + x1 + x2", 2));
    EXPECT_EQ(odd.field_case, FieldCase::OddConductor);
    EXPECT_EQ(odd.items.size(), 7u);
    const TransformSet four = lemma_transforms(parse_poly("z8 + x1 + x2", 2));
    EXPECT_EQ(four.field_case, FieldCase::DivisibleBy4);
    EXPECT_EQ(four.items.size(), 7u);
    for (auto& t : four.items)
        if (t.tag.kind != TransformTag::Kind::Sign) EXPECT_EQ(t.tag.galois_exponent, 5);
    for (auto& t : odd.items)
        if (t.tag.kind != TransformTag::Kind::Sign) EXPECT_EQ(t.tag.galois_exponent, 2);
}

TEST(Solver, UnitEquation) {
    const SolveReport r = descent_solve(parse_poly("x1 + x2 - 1", 2));
    ASSERT_EQ(r.isolated.size(), 2u);
    EXPECT_TRUE(r.cosets.empty());
    std::set<TorsionPoint> got{r.isolated[0].base(), r.isolated[1].base()};
    EXPECT_EQ(got, (std::set<TorsionPoint>{{RootOfUnity(1, 6), RootOfUnity(5, 6)}, {RootOfUnity(5, 6), RootOfUnity(1, 6)}}));
}

TEST(Solver, PositiveDimensionalComponents) {
    // (1 + x1)(1 + x2): two translated subtori, no isolated points.
    const SolveReport a = descent_solve(parse_poly("1 + x1 + x2 + x1*x2", 2));
    EXPECT_TRUE(a.isolated.empty());
    ASSERT_EQ(a.cosets.size(), 2u);
    for (auto& c : a.cosets) EXPECT_EQ(c.dim(), 1u);
    // x1*x2 - z8 is a single coset; its base is canonical.
    const SolveReport b = descent_solve(parse_poly("x1*x2 - z8", 2));
    ASSERT_EQ(b.cosets.size(), 1u);
    EXPECT_TRUE(b.cosets[0].contains(TorsionPoint{RootOfUnity(1, 8), RootOfUnity()}));
    EXPECT_TRUE(b.cosets[0].contains(TorsionPoint{RootOfUnity(), RootOfUnity(1, 8)}));
    // Points on a listed coset are not repeated as isolated points.
    const SolveReport c = descent_solve(parse_poly("(x1 - x2)(x1 + x2 + 1)", 2));
    ASSERT_EQ(c.cosets.size(), 1u);
    for (auto& p : c.isolated) EXPECT_FALSE(c.cosets[0].contains(p.base()));
    EXPECT_EQ(c.isolated.size(), 2u);
}

TEST(Solver, RandomPolynomialsAgainstOracle) {
    Rng rng(62);
    int done = 0;
    for (int t = 0; t < 80; ++t) {
        const i64 N = pick(rng, {1, 3, 4, 5, 8, 12});
        const MPoly f = random_poly(rng, 2, N, 3, 3);
        if (f.content_strip().first.is_constant()) continue;
        expect_sound_and_complete(f, 60);
        ++done;
    }
    EXPECT_GT(done, 40);
}

TEST(Solver, StructuredInstancesAgainstOracle) {
    // Products of linear forms with coefficients in mu_12 have many torsion points.
    Rng rng(63);
    for (int t = 0; t < 30; ++t) {
        MPoly f = MPoly::constant(2, CycloNum(1L));
        const int k = static_cast<int>(uniform(rng, 1, 2));
        for (int i = 0; i < k; ++i) {
            MPoly l(2);
            l.add_term({1, 0}, CycloNum::root(RootOfUnity(uniform(rng, 0, 11), 12)));
            l.add_term({0, 1}, CycloNum::root(RootOfUnity(uniform(rng, 0, 11), 12)));
            l.add_term({0, 0}, CycloNum::root(RootOfUnity(uniform(rng, 0, 11), 12)));
            f = f * l;
        }
        expect_sound_and_complete(f, 72);
    }
}

TEST(Solver, SymmetryReductionIsABijection) {
    for (const char* s : {"x1^2 + x2^2 - 1", "x1^2*x2 + x2^3 + 1", "x1^3 + x1*x2^2 + z3", "x1^4 + x2^2 + x1^2*x2 + 1", "x1^2 - x2^3"}) {
        const MPoly f = parse_poly(s, 2);
        const SymmetryReduction sr = symmetry_reduce(f);
        EXPECT_TRUE(sr.changed) << s;
        // f(x) = x^shift * g(x^B) with y_i = prod_j x_j^{B[i][j]}.
        for (i64 M : {12, 24, 30}) {
            for (i64 a = 0; a < M; ++a)
                for (i64 b = 0; b < M; ++b) {
                    const TorsionPoint w{RootOfUnity(a, M), RootOfUnity(b, M)};
                    TorsionPoint y(2);
                    for (std::size_t i = 0; i < 2; ++i) y[i] = w[0].pow(sr.B[i][0]) * w[1].pow(sr.B[i][1]);
                    EXPECT_EQ(f.evaluate(w).is_zero(), sr.g.evaluate(y).is_zero()) << s;
                }
        }
    }
    EXPECT_FALSE(symmetry_reduce(parse_poly("x1 + x2 - 1", 2)).changed);
}

TEST(Solver, OracleMatchesDirectEvaluation) {
    const MPoly f = parse_poly("x1^2 + z3*x2 + 1 + x1*x2", 2);
    for (i64 M : {6, 12, 15}) {
        std::set<TorsionPoint> direct;
        for (i64 a = 0; a < M; ++a)
            for (i64 b = 0; b < M; ++b) {
                const TorsionPoint w{RootOfUnity(a, M), RootOfUnity(b, M)};
                if (f.evaluate(w).is_zero()) direct.insert(w);
            }
        const auto pts = bruteforce_oracle(f, M);
        EXPECT_EQ(std::set<TorsionPoint>(pts.begin(), pts.end()), direct);
        OracleOptions mt;
        mt.threads = 4;
        EXPECT_EQ(bruteforce_oracle(f, M, mt), pts);
    }
}

TEST(Solver, ErrorsAndCaps) {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return std::string("none");
    };
    EXPECT_EQ(code([] { descent_solve(parse_poly("x1 + x2 + x3", 3)); }), "unsupported_dimension");
    EXPECT_EQ(code([] { descent_solve(parse_poly("x1*x2", 2)); }), "domain");
    EXPECT_EQ(code([] { bruteforce_oracle(parse_poly("x1 + x2", 2), 241); }), "cap_exceeded");
    SolveOptions tight;
    tight.max_conductor = 4;
    EXPECT_EQ(code([&] { descent_solve(parse_poly("z5 + x1 + x2", 2), tight); }), "cap_exceeded");
    SolveOptions shallow;
    shallow.max_depth = 0;
    EXPECT_EQ(code([&] { descent_solve(parse_poly("(x1 + x2 - 1)(x1*x2 - 1)(x1 - x2)", 2), shallow); }), "incomplete");
}

TEST(Solver, ReportsAreDeterministic) {
    const MPoly f = parse_poly("(x1 + z12*x2 + 1)(x1*x2^2 - z3)", 2);
    const SolveReport a = descent_solve(f), b = descent_solve(f);
    EXPECT_EQ(a.isolated, b.isolated);
    EXPECT_EQ(a.cosets, b.cosets);
    EXPECT_EQ(a.diagnostics, b.diagnostics);
}
