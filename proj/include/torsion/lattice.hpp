#pragma once

// Integer lattices in Z^n and torsion cosets omega * H_Lambda, where
// H_Lambda = { x : x^lambda = 1 for all lambda in Lambda }.

#include <algorithm>
#include <vector>

#include "torsion/cyclo.hpp"

namespace torsion {

using IntVec = std::vector<i64>;
using IntMat = std::vector<IntVec>;

namespace detail {

inline void col_combine(IntMat& A, std::size_t a, std::size_t b, i64 s, i64 t, i64 u, i64 v) {
    // (col_a, col_b) <- (s col_a + t col_b, u col_a + v col_b)
    for (auto& row : A) {
        const i64 x = row[a], y = row[b];
        row[a] = s * x + t * y;
        row[b] = u * x + v * y;
    }
}

}  // namespace detail

/// Column reduction A * U = [H | 0] with U unimodular and H lower echelon
/// (positive pivots). Returns the rank; A is replaced by A * U.
inline std::size_t column_reduce(IntMat& A, IntMat& U, std::size_t n) {
    U.assign(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
    std::size_t piv = 0;
    for (std::size_t i = 0; i < A.size() && piv < n; ++i) {
        for (std::size_t k = piv + 1; k < n; ++k) {
            const i64 x = A[i][piv], y = A[i][k];
            if (y == 0) continue;
            i64 s, t;
            const i64 g = ext_gcd(x, y, s, t);
            detail::col_combine(A, piv, k, s, t, -y / g, x / g);
            detail::col_combine(U, piv, k, s, t, -y / g, x / g);
        }
        if (A[i][piv] == 0) continue;
        if (A[i][piv] < 0) {
            for (auto& row : A) row[piv] = -row[piv];
            for (auto& row : U) row[piv] = -row[piv];
        }
        ++piv;
    }
    return piv;
}

inline std::size_t rank(IntMat A, std::size_t n) {
    IntMat U;
    return column_reduce(A, U, n);
}

/// Rows form a basis of { v in Z^n : A v = 0 }.
inline IntMat kernel_basis(const IntMat& A, std::size_t n) {
    IntMat H = A, U;
    const std::size_t r = column_reduce(H, U, n);
    IntMat K;
    for (std::size_t c = r; c < n; ++c) {
        IntVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = U[i][c];
        K.push_back(v);
    }
    return K;
}

/// Row Hermite normal form; zero rows are dropped.
inline IntMat hnf_rows(IntMat A, std::size_t n) {
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < A.size(); ++c) {
        for (std::size_t k = row + 1; k < A.size(); ++k) {
            const i64 x = A[row][c], y = A[k][c];
            if (y == 0) continue;
            i64 s, t;
            const i64 g = ext_gcd(x, y, s, t);
            IntVec r1(n), r2(n);
            for (std::size_t j = 0; j < n; ++j) {
                r1[j] = s * A[row][j] + t * A[k][j];
                r2[j] = (-y / g) * A[row][j] + (x / g) * A[k][j];
            }
            A[row] = r1;
            A[k] = r2;
        }
        if (A[row][c] == 0) continue;
        if (A[row][c] < 0)
            for (auto& v : A[row]) v = -v;
        for (std::size_t k = 0; k < row; ++k) {
            const i64 q = (A[k][c] - mod(A[k][c], A[row][c])) / A[row][c];
            if (q != 0)
                for (std::size_t j = 0; j < n; ++j) A[k][j] -= q * A[row][j];
        }
        ++row;
    }
    A.resize(row);
    return A;
}

/// The saturation (Lambda tensor Q) cap Z^n, in row Hermite normal form.
inline IntMat saturate(const IntMat& A, std::size_t n) {
    if (A.empty()) return {};
    return hnf_rows(kernel_basis(kernel_basis(A, n), n), n);
}

inline bool is_saturated(const IntMat& A, std::size_t n) { return hnf_rows(A, n) == saturate(A, n); }

/// Primitive vector and multiplicity: v = g * lambda, gcd(lambda) = 1.
inline std::pair<IntVec, i64> primitive_part(IntVec v) {
    i64 g = 0;
    for (i64 x : v) g = gcd(g, x);
    if (g == 0) return {v, 0};
    for (auto& x : v) x /= g;
    return {v, g};
}

/// x^lambda for a torsion point x.
inline RootOfUnity character(const TorsionPoint& x, const IntVec& lambda) {
    RootOfUnity r;
    for (std::size_t i = 0; i < x.size(); ++i) r = r * x[i].pow(lambda[i]);
    return r;
}

/// omega * H_Lambda with Lambda saturated. Rows of `lattice` are a basis of
/// Lambda in Hermite normal form; an empty lattice is the whole torus, n rows
/// a single point.
class TorsionCoset {
public:
    TorsionCoset() = default;
    TorsionCoset(TorsionPoint base, IntMat lattice) : base_(std::move(base)), lat_(std::move(lattice)) {
        canonicalize();
    }
    static TorsionCoset point(TorsionPoint p) {
        const std::size_t n = p.size();
        IntMat I(n, IntVec(n, 0));
        for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
        return TorsionCoset(std::move(p), std::move(I));
    }

    std::size_t ambient() const { return base_.size(); }
    const TorsionPoint& base() const { return base_; }
    const IntMat& lattice() const { return lat_; }
    std::size_t dim() const { return ambient() - lat_.size(); }

    bool contains(const TorsionPoint& x) const {
        if (x.size() != ambient()) return false;
        TorsionPoint q(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) q[i] = x[i] / base_[i];
        for (auto& l : lat_)
            if (!character(q, l).is_one()) return false;
        return true;
    }
    /// Whether c is contained in this coset.
    bool contains(const TorsionCoset& c) const {
        if (!contains(c.base_)) return false;
        // Lambda(this) must lie in Lambda(c) (saturated, so in its Q-span).
        for (auto& l : lat_) {
            IntMat m = c.lat_;
            m.push_back(l);
            if (rank(m, ambient()) != c.lat_.size()) return false;
        }
        return true;
    }
    /// Rows of a basis of the orthogonal lattice: H_Lambda = { t^B }.
    IntMat parametrization() const { return kernel_basis(lat_, ambient()); }

    friend bool operator==(const TorsionCoset& a, const TorsionCoset& b) {
        return a.base_ == b.base_ && a.lat_ == b.lat_;
    }
    friend bool operator<(const TorsionCoset& a, const TorsionCoset& b) {
        if (a.lat_.size() != b.lat_.size()) return a.lat_.size() > b.lat_.size();
        if (a.base_ != b.base_) return std::lexicographical_compare(a.base_.begin(), a.base_.end(), b.base_.begin(), b.base_.end());
        return a.lat_ < b.lat_;
    }

private:
    void canonicalize() {
        const std::size_t n = ambient();
        for (auto& row : lat_)
            if (row.size() != n) throw Error("domain", "lattice rows must match the number of coordinates");
        lat_ = hnf_rows(lat_, n);
        if (lat_ != saturate(lat_, n)) throw Error("domain", "coset lattice is not saturated");
        if (lat_.empty()) {
            base_.assign(n, RootOfUnity());
            return;
        }
        // The coset is { x : x^lambda_j = c_j }; pick the representative
        // x = c^V where Lambda V = I.
        std::vector<RootOfUnity> c;
        for (auto& l : lat_) c.push_back(character(base_, l));
        IntMat A = lat_, U;
        const std::size_t r = column_reduce(A, U, n);
        // A = [H | 0], H lower triangular with unit diagonal; V = U[:, :r] H^{-1}.
        IntMat Hinv(r, IntVec(r, 0));
        for (std::size_t j = 0; j < r; ++j) {
            Hinv[j][j] = 1;
            for (std::size_t i = j + 1; i < r; ++i) {
                i64 s = 0;
                for (std::size_t k = j; k < i; ++k) s += A[i][k] * Hinv[k][j];
                Hinv[i][j] = -s;
            }
        }
        TorsionPoint b(n);
        for (std::size_t i = 0; i < n; ++i) {
            RootOfUnity x;
            for (std::size_t j = 0; j < r; ++j) {
                i64 v = 0;
                for (std::size_t k = 0; k < r; ++k) v += U[i][k] * Hinv[k][j];
                x = x * c[j].pow(v);
            }
            b[i] = x;
        }
        base_ = std::move(b);
    }

    TorsionPoint base_;
    IntMat lat_;
};

/// All torsion cosets making up { x : x^mu_j = c_j for every j }. The
/// lattice of each coset is the saturation of the row lattice of mu.
inline std::vector<TorsionCoset> solve_characters(const IntMat& mu, const std::vector<RootOfUnity>& c, std::size_t n) {
    if (mu.size() != c.size()) throw Error("domain", "one value per character is required");
    IntMat A = mu, U;
    const std::size_t r = column_reduce(A, U, n);
    // Pivot rows: the k-th pivot row has A[p][k] > 0 and zeros to its right.
    std::vector<std::size_t> pivot_row;
    std::vector<std::size_t> other_rows;
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (k < r && A[i][k] != 0 && std::all_of(A[i].begin() + static_cast<long>(k) + 1, A[i].end(), [](i64 v) { return v == 0; })) {
                pivot_row.push_back(i);
                ++k;
            } else {
                other_rows.push_back(i);
            }
        }
    }
    const IntMat sat = saturate(mu, n);
    std::vector<TorsionCoset> out;
    std::vector<RootOfUnity> y(r);
    auto emit = [&]() {
        for (std::size_t i : other_rows) {
            RootOfUnity v;
            for (std::size_t k = 0; k < r; ++k) v = v * y[k].pow(A[i][k]);
            if (v != c[i]) return;
        }
        TorsionPoint x(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < r; ++k) x[i] = x[i] * y[k].pow(U[i][k]);
        out.emplace_back(std::move(x), sat);
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == r) {
            emit();
            return;
        }
        const std::size_t i = pivot_row[k];
        RootOfUnity rhs = c[i];
        for (std::size_t j = 0; j < k; ++j) rhs = rhs / y[j].pow(A[i][j]);
        for (const RootOfUnity& v : rhs.roots(A[i][k])) {
            y[k] = v;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace torsion
