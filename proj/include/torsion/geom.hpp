#pragma once

// Newton polytopes: hulls and exact volumes in dimension <= 3, the minimum
// volume enclosing ellipsoid, and an integer affine map sending a lattice
// polytope into a dilated standard simplex.

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "torsion/lattice.hpp"
#include "torsion/poly.hpp"

namespace torsion {

struct LatticePolytope {
    std::size_t dim = 0;
    std::vector<IntVec> points;    // generators (the support)
    std::vector<IntVec> vertices;  // extreme points; planar hulls are counterclockwise
    std::size_t affine_dim = 0;
};

namespace detail {

inline i64 cross2(const IntVec& o, const IntVec& a, const IntVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain on projected coordinates (i, j). Returns indices.
inline std::vector<std::size_t> hull2(const std::vector<IntVec>& pts, std::size_t i, std::size_t j) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    auto key = [&](std::size_t k) { return std::make_pair(pts[k][i], pts[k][j]); };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    idx.erase(std::unique(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) == key(b); }), idx.end());
    if (idx.size() <= 2) return idx;
    auto cr = [&](std::size_t o, std::size_t a, std::size_t b) {
        return cross2({pts[o][i], pts[o][j]}, {pts[a][i], pts[a][j]}, {pts[b][i], pts[b][j]});
    };
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t t = 0; t < idx.size(); ++t) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], idx[t]) <= 0) --k;
        h[k++] = idx[t];
    }
    for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
        while (k >= lo && cr(h[k - 2], h[k - 1], idx[t]) <= 0) --k;
        h[k++] = idx[t];
    }
    h.resize(k - 1);
    return h;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec cross3(const IntVec& a, const IntVec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline i64 dot(const IntVec& a, const IntVec& b) {
    i64 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Facet {
    IntVec normal;  // primitive outward normal
    i64 offset;     // normal . x <= offset on the polytope
    std::vector<std::size_t> members;
};

/// Facets of a full-dimensional 3-polytope, by brute force over triples.
inline std::vector<Facet> facets3(const std::vector<IntVec>& pts) {
    std::vector<Facet> out;
    std::set<std::pair<IntVec, i64>> seen;
    const std::size_t m = pts.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                IntVec nrm = cross3(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
                if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) continue;
                nrm = primitive_part(nrm).first;
                i64 off = dot(nrm, pts[a]);
                bool pos = false, neg = false;
                for (auto& p : pts) {
                    const i64 s = dot(nrm, p) - off;
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                }
                if (pos && neg) continue;
                if (pos) {
                    for (auto& v : nrm) v = -v;
                    off = -off;
                }
                if (!seen.insert({nrm, off}).second) continue;
                Facet f{nrm, off, {}};
                for (std::size_t k = 0; k < m; ++k)
                    if (dot(nrm, pts[k]) == off) f.members.push_back(k);
                out.push_back(std::move(f));
            }
    return out;
}

inline std::size_t affine_rank(const std::vector<IntVec>& pts, std::size_t n) {
    if (pts.empty()) return 0;
    IntMat D;
    for (auto& p : pts) D.push_back(sub(p, pts[0]));
    return rank(D, n);
}

}  // namespace detail

inline LatticePolytope make_polytope(std::vector<IntVec> pts, std::size_t n) {
    if (pts.empty()) throw Error("domain", "polytope needs at least one point");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LatticePolytope P;
    P.dim = n;
    P.points = pts;
    P.affine_dim = detail::affine_rank(pts, n);
    if (n > 3) {
        P.vertices = pts;  // raw support; no hull structure
        return P;
    }
    if (P.affine_dim == 0) {
        P.vertices = {pts[0]};
    } else if (P.affine_dim == 1) {
        P.vertices = {pts.front(), pts.back()};
    } else if (P.affine_dim == 2) {
        // project onto a coordinate plane on which the projection is injective
        std::size_t pi = 0, pj = 1;
        if (n == 3) {
            IntVec nrm;
            for (std::size_t a = 1; a < pts.size() && nrm.empty(); ++a)
                for (std::size_t b = a + 1; b < pts.size() && nrm.empty(); ++b) {
                    IntVec c = detail::cross3(detail::sub(pts[a], pts[0]), detail::sub(pts[b], pts[0]));
                    if (c[0] != 0 || c[1] != 0 || c[2] != 0) nrm = c;
                }
            if (nrm[2] != 0) {
                pi = 0;
                pj = 1;
            } else if (nrm[1] != 0) {
                pi = 0;
                pj = 2;
            } else {
                pi = 1;
                pj = 2;
            }
        }
        for (std::size_t k : detail::hull2(pts, pi, pj)) P.vertices.push_back(pts[k]);
    } else {
        const auto F = detail::facets3(pts);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            IntMat normals;
            for (auto& f : F)
                if (std::find(f.members.begin(), f.members.end(), k) != f.members.end()) normals.push_back(f.normal);
            if (rank(normals, 3) == 3) P.vertices.push_back(pts[k]);
        }
    }
    return P;
}

/// Convex hull of the support of f.
inline LatticePolytope newton_polytope(const MPoly& f) {
    if (f.is_zero()) throw Error("domain", "Newton polytope of the zero polynomial");
    std::vector<IntVec> pts;
    for (auto& [e, c] : f.terms()) pts.emplace_back(e.begin(), e.end());
    LatticePolytope P = make_polytope(std::move(pts), f.nvars());
    return P;
}

struct PolytopeStats {
    mpq_class volume;
    i64 diam1 = 0;
    IntVec multidegree;
};

inline mpq_class polytope_volume(const LatticePolytope& P) {
    const std::size_t n = P.dim;
    if (n > 3) throw Error("unsupported_dimension", "volume is only computed for n <= 3");
    if (P.affine_dim < n) return 0;
    if (n == 1) return mpq_class(P.vertices.back()[0] - P.vertices.front()[0]);
    if (n == 2) {
        i64 twice = 0;
        const auto& v = P.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            twice += a[0] * b[1] - a[1] * b[0];
        }
        mpq_class area(twice < 0 ? -twice : twice, 2);
        area.canonicalize();
        return area;
    }
    // n == 3: pyramids over fan-triangulated facets from one vertex.
    const auto F = detail::facets3(P.vertices);
    const IntVec& o = P.vertices[0];
    mpz_class six_vol = 0;
    for (auto& f : F) {
        std::vector<IntVec> fp;
        for (std::size_t k : f.members) fp.push_back(P.vertices[k]);
        std::size_t pi = 0, pj = 1;
        if (f.normal[2] != 0) {
            pi = 0;
            pj = 1;
        } else if (f.normal[1] != 0) {
            pi = 0;
            pj = 2;
        } else {
            pi = 1;
            pj = 2;
        }
        auto h = detail::hull2(fp, pi, pj);
        for (std::size_t t = 1; t + 1 < h.size(); ++t) {
            const IntVec a = detail::sub(fp[h[0]], o), b = detail::sub(fp[h[t]], o), c = detail::sub(fp[h[t + 1]], o);
            i64 d = detail::dot(a, detail::cross3(b, c));
            six_vol += d < 0 ? -d : d;
        }
    }
    mpq_class v(six_vol, 6);
    v.canonicalize();
    return v;
}

inline PolytopeStats polytope_stats(const LatticePolytope& P) {
    PolytopeStats s;
    s.volume = polytope_volume(P);
    for (std::size_t a = 0; a < P.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < P.vertices.size(); ++b) {
            i64 d = 0;
            for (std::size_t i = 0; i < P.dim; ++i) d += std::abs(P.vertices[a][i] - P.vertices[b][i]);
            s.diam1 = std::max(s.diam1, d);
        }
    s.multidegree.assign(P.dim, 0);
    for (auto& p : P.points)
        for (std::size_t i = 0; i < P.dim; ++i) s.multidegree[i] = std::max(s.multidegree[i], p[i]);
    return s;
}

// ---------------------------------------------------------------------------
// Ellipsoids

/// E = { x : (x - c)^T A (x - c) <= 1 } = M B_n + c with M = A^(-1/2).
struct Ellipsoid {
    Eigen::VectorXd center;
    Eigen::MatrixXd A;
    Eigen::MatrixXd M;
    double detM = 0;
    int iterations = 0;
};

/// Khachiyan's algorithm for the minimum volume enclosing ellipsoid, scaled
/// afterwards so that every input point is inside.
inline Ellipsoid mvee(const std::vector<Eigen::VectorXd>& pts, double eps = 1e-7, int max_iter = 200000) {
    if (pts.empty()) throw Error("domain", "mvee needs points");
    const Eigen::Index n = pts[0].size();
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd P(n, m);
    for (Eigen::Index j = 0; j < m; ++j) P.col(j) = pts[static_cast<std::size_t>(j)];
    {
        Eigen::MatrixXd D = P.colwise() - P.col(0);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
        if (lu.rank() < n) throw Error("degenerate", "points do not affinely span the space");
    }
    Eigen::MatrixXd Q(n + 1, m);
    Q.topRows(n) = P;
    Q.row(n).setOnes();
    Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    const double d = static_cast<double>(n + 1);
    Ellipsoid E;
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::MatrixXd X = Q * u.asDiagonal() * Q.transpose();
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(X);
        const Eigen::MatrixXd Y = ldlt.solve(Q);
        Eigen::VectorXd g(m);
        for (Eigen::Index j = 0; j < m; ++j) g(j) = Q.col(j).dot(Y.col(j));
        Eigen::Index jmax;
        const double gmax = g.maxCoeff(&jmax);
        const double step = (gmax - d) / (d * (gmax - 1.0));
        E.iterations = it + 1;
        if (gmax <= d * (1.0 + eps)) break;
        u *= (1.0 - step);
        u(jmax) += step;
    }
    const Eigen::VectorXd c = P * u;
    const Eigen::MatrixXd S = P * u.asDiagonal() * P.transpose() - c * c.transpose();
    Eigen::MatrixXd A = S.inverse() / static_cast<double>(n);
    double worst = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::VectorXd r = P.col(j) - c;
        worst = std::max(worst, r.dot(A * r));
    }
    if (worst > 1.0) A /= worst;
    A = 0.5 * (A + A.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    E.center = c;
    E.A = A;
    E.M = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    E.detM = E.M.determinant();
    return E;
}

struct SimplexEmbedding {
    i64 l = 0;
    IntMat M_l;
    IntVec tau_l;
    i64 bound = 0;
    bool verified = false;
    IntVec translation;  // integer shift putting the polytope in the orthant
    std::vector<IntVec> violations;  // vertices mapped outside bound * S_n
    Ellipsoid ellipsoid;
    i64 det_M_l = 0;
};

namespace detail {

// Nearest integer, ties toward zero.
inline i64 round_tz(double x) {
    const double f = std::floor(x);
    const double frac = x - f;
    if (frac > 0.5) return static_cast<i64>(f) + 1;
    if (frac < 0.5) return static_cast<i64>(f);
    return x > 0 ? static_cast<i64>(f) : static_cast<i64>(f) + 1;
}

inline i64 int_det(const IntMat& M) {
    const std::size_t n = M.size();
    if (n == 1) return M[0][0];
    if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
    if (n == 3)
        return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
               M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    throw Error("unsupported_dimension", "determinant only for n <= 3");
}

}  // namespace detail

/// Integer M_l ~ l M^{-1} and tau_l with M_l P + tau_l inside
/// 2n(l + n diam1 + n) S_n, where S_n is the standard simplex and M B_n + c
/// the enclosing ellipsoid of P. The containment is checked exactly.
inline SimplexEmbedding simplex_embed(const LatticePolytope& P, i64 l) {
    const std::size_t n = P.dim;
    if (n < 1 || n > 3) throw Error("unsupported_dimension", "simplex_embed needs 1 <= n <= 3");
    if (l < 1) throw Error("domain", "l must be positive");
    if (P.affine_dim != n) throw Error("degenerate", "polytope is not full-dimensional");
    SimplexEmbedding S;
    S.l = l;
    // translate into the orthant touching every coordinate hyperplane
    S.translation.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        i64 lo = P.vertices[0][i];
        for (auto& v : P.vertices) lo = std::min(lo, v[i]);
        S.translation[i] = -lo;
    }
    std::vector<Eigen::VectorXd> pts;
    for (auto& v : P.vertices) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = static_cast<double>(v[i] + S.translation[i]);
        pts.push_back(x);
    }
    const i64 diam1 = polytope_stats(P).diam1;
    S.ellipsoid = mvee(pts);
    const Eigen::MatrixXd Minv = S.ellipsoid.M.inverse();
    // center in the coordinates where E is the unit ball
    const Eigen::VectorXd v = Minv * S.ellipsoid.center;
    S.M_l.assign(n, IntVec(n, 0));
    IntVec v_l(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            S.M_l[i][j] = detail::round_tz(static_cast<double>(l) * Minv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        v_l[i] = detail::round_tz(static_cast<double>(l) * v(static_cast<Eigen::Index>(i)));
    }
    S.det_M_l = detail::int_det(S.M_l);
    if (S.det_M_l == 0) throw Error("singular", "rounded matrix is singular at l = " + std::to_string(l) + "; retry with a larger l");
    const i64 r = l + static_cast<i64>(n) * diam1 + static_cast<i64>(n);
    S.tau_l.assign(n, 0);
    // tau_l refers to the untranslated polytope: M_l (u + t) + tau = M_l u + (tau + M_l t).
    for (std::size_t i = 0; i < n; ++i) {
        S.tau_l[i] = r - v_l[i];
        for (std::size_t j = 0; j < n; ++j) S.tau_l[i] += S.M_l[i][j] * S.translation[j];
    }
    S.bound = 2 * static_cast<i64>(n) * r;
    for (auto& u : P.vertices) {
        i64 sum = 0;
        bool bad = false;
        for (std::size_t i = 0; i < n; ++i) {
            i64 y = S.tau_l[i];
            for (std::size_t j = 0; j < n; ++j) y += S.M_l[i][j] * u[j];
            if (y < 0) bad = true;
            sum += y;
        }
        if (bad || sum > S.bound) S.violations.push_back(u);
    }
    S.verified = S.violations.empty();
    return S;
}

}  // namespace torsion
