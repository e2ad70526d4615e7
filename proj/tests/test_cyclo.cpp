#include <gtest/gtest.h>

#include "support.hpp"

using namespace torsion;
using namespace torsion::testing;

namespace {

// Phi_n from the product formula over divisors with the Moebius function,
// computed independently by polynomial division of x^n - 1.
std::vector<i64> phi_by_division(i64 n) {
    std::vector<i64> num(static_cast<std::size_t>(n + 1), 0);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (i64 d = 1; d < n; ++d) {
        if (n % d) continue;
        const auto q = phi_by_division(d);
        // num /= q (monic, exact)
        std::vector<i64> out(num.size() - q.size() + 1, 0);
        for (std::size_t i = out.size(); i-- > 0;) {
            out[i] = num[i + q.size() - 1];
            for (std::size_t j = 0; j < q.size(); ++j) num[i + j] -= out[i] * q[j];
        }
        num = out;
    }
    return num;
}

}  // namespace

TEST(Cyclo, CyclotomicPolynomialsMatchDivision) {
    for (i64 n = 1; n <= 60; ++n) EXPECT_EQ(cyclotomic_polynomial(n), phi_by_division(n)) << n;
}

TEST(Cyclo, PowerSumsOfRootsOfUnity) {
    // sum_{k<m} zeta_m^k = 0 for m > 1; zeta_m^m = 1.
    for (i64 m = 2; m <= 40; ++m) {
        CycloNum s;
        for (i64 k = 0; k < m; ++k) s = s + CycloNum::zeta(k, m);
        EXPECT_TRUE(s.is_zero()) << m;
        EXPECT_TRUE(CycloNum::zeta(1, m).pow(m).is_one()) << m;
        EXPECT_FALSE(CycloNum::zeta(1, m).pow(m - 1).is_one()) << m;
    }
}

TEST(Cyclo, ExactAgreesWithComplex) {
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        const i64 N = pick(rng, small_conductors());
        const CycloNum a = random_cyclo(rng, N), b = random_nonzero_cyclo(rng, N);
        const auto ca = a.to_complex(), cb = b.to_complex();
        EXPECT_LT(std::abs((a * b).to_complex() - ca * cb), 1e-9);
        EXPECT_LT(std::abs((a + b).to_complex() - (ca + cb)), 1e-9);
        EXPECT_LT(std::abs((a / b).to_complex() - ca / cb), 1e-6 * (1 + std::abs(ca / cb)));
    }
}

TEST(Cyclo, FieldAxiomsProperty) {
    const auto r = field_axioms(400, 21);
    EXPECT_EQ(r.failures, 0) << r.first_failure;
}

TEST(Cyclo, GaloisLawsProperty) {
    const auto r = galois_laws(400, 22);
    EXPECT_EQ(r.failures, 0) << r.first_failure;
}

TEST(Cyclo, EmbedAndReduceRoundTrip) {
    Rng rng(7);
    for (int t = 0; t < 300; ++t) {
        const i64 N = pick(rng, small_conductors());
        const CycloNum x = random_cyclo(rng, N).reduced();
        const i64 M = N * pick(rng, {1, 2, 3, 5});
        const CycloNum y = x.embed(normalize_conductor(M));
        EXPECT_EQ(y.reduced().conductor(), x.conductor());
        EXPECT_EQ(y.reduced().coeffs(), x.coeffs());
        EXPECT_TRUE(x == y);
    }
    EXPECT_EQ((CycloNum::zeta(1, 3) + CycloNum::zeta(2, 3)).reduced().as_rational(), mpq_class(-1));
    EXPECT_EQ(CycloNum::zeta(1, 2).as_rational(), mpq_class(-1));
    EXPECT_EQ(CycloNum::zeta(3, 12).reduced().conductor(), 4);
}

TEST(Cyclo, RootOfUnityGroupLawsExhaustive) {
    for (i64 m1 = 1; m1 <= 24; ++m1)
        for (i64 a = 0; a < m1; ++a) {
            const RootOfUnity x(a, m1);
            EXPECT_EQ(x * RootOfUnity(), x);
            EXPECT_TRUE((x * x.inverse()).is_one());
            EXPECT_EQ(x.pow(m1), RootOfUnity());
            for (i64 m2 : {1, 2, 3, 4, 6, 8, 12, 24})
                for (i64 b = 0; b < m2; b += 1 + m2 / 5) {
                    const RootOfUnity y(b, m2), z(1, 5);
                    EXPECT_EQ((x * y) * z, x * (y * z));
                    EXPECT_EQ(x * y, y * x);
                    EXPECT_LT(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()), 1e-9);
                }
        }
}

TEST(Cyclo, RootsAreAllKthRoots) {
    for (i64 k = 1; k <= 6; ++k)
        for (const RootOfUnity x : {RootOfUnity(1, 3), RootOfUnity(3, 8), RootOfUnity()}) {
            const auto rs = x.roots(k);
            EXPECT_EQ(static_cast<i64>(rs.size()), k);
            EXPECT_EQ(std::set<RootOfUnity>(rs.begin(), rs.end()).size(), rs.size());
            for (auto& r : rs) EXPECT_EQ(r.pow(k), x);
        }
}

TEST(Cyclo, RecognizesRootsOfUnity) {
    for (i64 m = 1; m <= 60; ++m)
        for (i64 k = 0; k < m; ++k) {
            const auto r = CycloNum::zeta(k, m).as_root_of_unity();
            ASSERT_TRUE(r.has_value());
            EXPECT_EQ(*r, RootOfUnity(k, m));
        }
    EXPECT_FALSE((CycloNum(mpq_class(2)) * CycloNum::zeta(1, 5)).as_root_of_unity().has_value());
    EXPECT_FALSE((CycloNum::zeta(1, 5) + CycloNum(mpq_class(1))).as_root_of_unity().has_value());
    EXPECT_EQ(CycloNum::zeta(1, 5).apply(GaloisAut(5, 2)).as_root_of_unity(), RootOfUnity(2, 5));
}

TEST(Cyclo, GaloisOrbitOfZeta) {
    // The conjugates of zeta_N are exactly the primitive N-th roots.
    for (i64 N : {3, 4, 5, 7, 8, 9, 12, 15}) {
        std::set<RootOfUnity> orbit;
        for (i64 a = 1; a < N; ++a)
            if (std::gcd(a, N) == 1) orbit.insert(*CycloNum::zeta(1, N).apply(GaloisAut(N, a)).as_root_of_unity());
        EXPECT_EQ(static_cast<i64>(orbit.size()), euler_phi(N));
        for (auto& r : orbit) EXPECT_EQ(r.ord(), N);
    }
}

TEST(Cyclo, ModularImageIsRingHomomorphism) {
    Rng rng(9);
    for (int t = 0; t < 200; ++t) {
        const i64 N = pick(rng, small_conductors());
        const CycloNum a = random_cyclo(rng, N), b = random_cyclo(rng, N);
        const PrimeRoot pr = make_prime_root(N);
        const auto ia = a.image(pr), ib = b.image(pr), iab = (a * b).image(pr), is = (a + b).image(pr);
        if (!ia || !ib || !iab || !is) continue;
        EXPECT_EQ(*iab, mulmod(*ia, *ib, pr.p));
        EXPECT_EQ(*is, (*ia + *ib) % pr.p);
    }
}

TEST(Cyclo, DivisionByZeroIsReported) {
    try {
        (void)CycloNum().inv();
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "division_by_zero");
    }
}
