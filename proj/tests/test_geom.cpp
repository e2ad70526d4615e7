#include <gtest/gtest.h>

#include "support.hpp"

using namespace torsion;
using namespace torsion::testing;

namespace {

// Lattice-point oracle for the area of a planar hull: Pick's theorem with
// interior and boundary points counted by brute force over the bounding box.
mpq_class area_by_pick(const std::vector<IntVec>& pts) {
    const LatticePolytope P = make_polytope(pts, 2);
    const auto& v = P.vertices;
    if (v.size() < 3) return 0;
    i64 lo0 = v[0][0], hi0 = v[0][0], lo1 = v[0][1], hi1 = v[0][1];
    for (auto& p : v) {
        lo0 = std::min(lo0, p[0]);
        hi0 = std::max(hi0, p[0]);
        lo1 = std::min(lo1, p[1]);
        hi1 = std::max(hi1, p[1]);
    }
    i64 inside = 0, boundary = 0;
    for (i64 x = lo0; x <= hi0; ++x)
        for (i64 y = lo1; y <= hi1; ++y) {
            bool strict = true, weak = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const auto& a = v[i];
                const auto& b = v[(i + 1) % v.size()];
                const i64 c = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
                if (c <= 0) strict = false;
                if (c < 0) weak = false;
            }
            if (strict) ++inside;
            else if (weak) ++boundary;
        }
    return mpq_class(2 * inside + boundary - 2, 2);
}

}  // namespace

TEST(Geom, AreaAgreesWithPick) {
    Rng rng(71);
    for (int t = 0; t < 200; ++t) {
        std::vector<IntVec> pts;
        const int k = static_cast<int>(uniform(rng, 3, 8));
        for (int i = 0; i < k; ++i) pts.push_back({uniform(rng, 0, 7), uniform(rng, 0, 7)});
        const LatticePolytope P = make_polytope(pts, 2);
        if (P.affine_dim < 2) {
            EXPECT_EQ(polytope_stats(P).volume, 0);
            continue;
        }
        mpq_class want = area_by_pick(pts);
        want.canonicalize();
        EXPECT_EQ(polytope_stats(P).volume, want);
    }
}

TEST(Geom, HullIsIdempotent) {
    Rng rng(72);
    for (int t = 0; t < 100; ++t) {
        std::vector<IntVec> pts;
        for (int i = 0; i < 9; ++i) pts.push_back({uniform(rng, -5, 5), uniform(rng, -5, 5)});
        const LatticePolytope P = make_polytope(pts, 2);
        const LatticePolytope Q = make_polytope(P.vertices, 2);
        EXPECT_EQ(std::set<IntVec>(P.vertices.begin(), P.vertices.end()), std::set<IntVec>(Q.vertices.begin(), Q.vertices.end()));
    }
}

TEST(Geom, VolumesInThreeDimensions) {
    const LatticePolytope cube = make_polytope({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2}, {2, 2, 2}, {1, 1, 1}}, 3);
    EXPECT_EQ(cube.vertices.size(), 8u);
    EXPECT_EQ(polytope_stats(cube).volume, 8);
    const LatticePolytope simplex = make_polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    EXPECT_EQ(polytope_stats(simplex).volume, mpq_class(1, 6));
    EXPECT_EQ(polytope_stats(make_polytope({{0}, {4}, {1}}, 1)).volume, 4);
}

TEST(Geom, StatsOfNewtonPolytope) {
    const MPoly f = parse_poly("x1^3 + x2^2 + 1", 2);
    const PolytopeStats s = polytope_stats(newton_polytope(f));
    EXPECT_EQ(s.volume, 3);
    EXPECT_EQ(s.diam1, 5);
    EXPECT_EQ(s.multidegree, (IntVec{3, 2}));
}

TEST(Geom, BoxDominatesNewtonPolytope) {
    Rng rng(73);
    for (int t = 0; t < 200; ++t) {
        const MPoly f = random_poly(rng, 2, 1, 5, 5);
        if (f.is_zero()) continue;
        const PolytopeStats s = polytope_stats(newton_polytope(f));
        EXPECT_LE(s.volume, mpq_class(s.multidegree[0] * s.multidegree[1]));
    }
}

TEST(Geom, EnclosingEllipsoidContainsPoints) {
    Rng rng(74);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3));
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < 10; ++i) {
            Eigen::VectorXd x(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j) x(static_cast<Eigen::Index>(j)) = static_cast<double>(uniform(rng, -6, 6));
            pts.push_back(x);
        }
        const Ellipsoid E = mvee(pts);
        for (auto& p : pts) {
            const Eigen::VectorXd d = p - E.center;
            EXPECT_LE(d.dot(E.A * d), 1.0 + 1e-6);
        }
        EXPECT_NEAR(std::abs(E.M.determinant()), std::abs(E.detM), 1e-9 * (1 + std::abs(E.detM)));
    }
}

TEST(Geom, SimplexEmbeddingContainment) {
    const std::vector<std::vector<IntVec>> shapes{
        {{0, 0}, {3, 0}, {0, 2}}, {{0, 0}, {2, 0}, {0, 2}, {2, 2}}, {{0, 0}, {4, 1}, {1, 3}}, {{1, 1}, {5, 2}, {2, 6}, {0, 3}}};
    for (auto& s : shapes) {
        const LatticePolytope P = make_polytope(s, 2);
        const i64 diam = polytope_stats(P).diam1;
        for (i64 l : std::vector<i64>{20 * diam, 100, 1000, 5000}) {
            const SimplexEmbedding S = simplex_embed(P, l);
            EXPECT_TRUE(S.verified) << "l = " << l;
            // Recheck containment independently on all support points.
            for (auto& u : P.points) {
                i64 sum = 0;
                for (std::size_t i = 0; i < 2; ++i) {
                    i64 y = S.tau_l[i];
                    for (std::size_t j = 0; j < 2; ++j) y += S.M_l[i][j] * u[j];
                    EXPECT_GE(y, 0);
                    sum += y;
                }
                EXPECT_LE(sum, S.bound);
            }
        }
        const SimplexEmbedding S = simplex_embed(P, 1000);
        const double ratio = static_cast<double>(S.det_M_l) / 1e6 * S.ellipsoid.detM;
        EXPECT_NEAR(std::abs(ratio), 1.0, 0.10);
    }
    const SimplexEmbedding T = simplex_embed(make_polytope({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 1}, {1, 1, 1}}, 3), 1000);
    EXPECT_TRUE(T.verified);
}

TEST(Geom, DegenerateInputs) {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return std::string("none");
    };
    EXPECT_EQ(code([] { simplex_embed(make_polytope({{0, 0}, {1, 1}, {2, 2}}, 2), 100); }), "degenerate");
    EXPECT_EQ(code([] { make_polytope({}, 2); }), "domain");
    EXPECT_EQ(polytope_stats(newton_polytope(parse_poly("x1*x2 - 1", 2))).volume, 0);
}
