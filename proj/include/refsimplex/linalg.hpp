#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace refsimplex {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows)
    {
        if (rows.empty()) return {};
        IntMatrix m(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw DimensionError("ragged row list");
            std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<IntVector>& cols)
    {
        if (cols.empty()) return {};
        IntMatrix m(cols.front().size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != m.rows_) throw DimensionError("ragged column list");
            for (std::size_t r = 0; r < m.rows_; ++r) m(r, c) = cols[c][r];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Integer> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    IntVector column(std::size_t c) const
    {
        IntVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    IntMatrix transposed() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }

    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor)
    {
        if (factor == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
    }

    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor)
    {
        if (factor == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
    }

    void negate_row(std::size_t r)
    {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend IntVector operator*(const IntMatrix& a, std::span<const Integer> x)
    {
        if (a.cols_ != x.size()) throw DimensionError("matrix-vector shape mismatch");
        IntVector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * x[k];
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

inline IntVector operator*(const IntMatrix& a, const IntVector& x) { return a * std::span<const Integer>(x); }

/// Exact determinant by Bareiss fraction-free elimination.
inline Integer determinant(const IntMatrix& m)
{
    if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., all d_i >= 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::vector<Integer> diagonal() const
    {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
        return out;
    }
};

inline SmithForm smith_normal_form(const IntMatrix& m)
{
    SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
    IntMatrix& d = f.D;
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::optional<std::pair<std::size_t, std::size_t>> pivot;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (d(i, j) != 0 && (!pivot || abs(d(i, j)) < abs(d(pivot->first, pivot->second))))
                        pivot = {i, j};
            if (!pivot) return f;

            d.swap_rows(t, pivot->first);
            f.U.swap_rows(t, pivot->first);
            d.swap_cols(t, pivot->second);
            f.V.swap_cols(t, pivot->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                Integer q = floor_div(d(i, t), d(t, t));
                d.add_row_multiple(i, t, -q);
                f.U.add_row_multiple(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                Integer q = floor_div(d(t, j), d(t, t));
                d.add_col_multiple(j, t, -q);
                f.V.add_col_multiple(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::optional<std::size_t> offending;
            for (std::size_t i = t + 1; i < r && !offending; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        offending = i;
                        break;
                    }
            if (!offending) break;
            d.add_row_multiple(t, *offending, 1);
            f.U.add_row_multiple(t, *offending, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            f.U.negate_row(t);
        }
    }
    return f;
}

/// Solves A x = b over the rationals by Gaussian elimination with exact arithmetic.
inline RationalVector solve_rational(const IntMatrix& a, const IntVector& b)
{
    if (!a.is_square()) throw DimensionError("solve_rational needs a square matrix");
    if (b.size() != a.rows()) throw DimensionError("right-hand side length mismatch");
    const std::size_t n = a.rows();
    std::vector<RationalVector> aug(n, RationalVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational(a(i, j));
        aug[i][n] = Rational(b[i]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && aug[p][k] == 0) ++p;
        if (p == n) throw SingularMatrixError("singular matrix in solve_rational");
        std::swap(aug[k], aug[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || aug[i][k] == 0) continue;
            Rational f = aug[i][k] / aug[k][k];
            for (std::size_t j = k; j <= n; ++j) aug[i][j] -= f * aug[k][j];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
    return x;
}

/// Integer adjugate of a nonsingular square matrix, so that A * adj = det(A) * I.
/// Repeated solves then reduce to one integer matrix-vector product.
class AdjugateSolver {
public:
    explicit AdjugateSolver(const IntMatrix& a) : det_(determinant(a)), adj_(a.rows(), a.cols())
    {
        if (det_ == 0) throw SingularMatrixError("singular matrix");
        const std::size_t n = a.rows();
        for (std::size_t j = 0; j < n; ++j) {
            IntVector e(n);
            e[j] = det_;
            RationalVector col = solve_rational(a, e);
            for (std::size_t i = 0; i < n; ++i) {
                if (!is_integral(col[i])) throw InvariantViolation("adjugate entry not integral");
                adj_(i, j) = numerator(col[i]);
            }
        }
    }

    const Integer& det() const { return det_; }
    const IntMatrix& adjugate() const { return adj_; }

    /// Numerators of A^{-1} b over the common denominator det(A).
    IntVector numerators(std::span<const Integer> b) const { return adj_ * b; }

    RationalVector solve(std::span<const Integer> b) const
    {
        IntVector num = numerators(b);
        RationalVector out;
        out.reserve(num.size());
        for (auto& v : num) out.push_back(Rational(v) / det_);
        return out;
    }

private:
    Integer det_;
    IntMatrix adj_;
};

namespace detail {

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Nearest integer to num/den (den > 0), ties toward negative infinity.
inline Integer round_div(const Integer& num, const Integer& den) { return floor_div(2 * num + den - 1, 2 * den); }

/// Greedy pairwise size reduction of rows [0, count) of m, plus reduction of row `count` against them.
/// Only integer row operations among the reduced rows are applied, so unimodularity is kept.
inline void size_reduce_rows(IntMatrix& m, std::size_t count)
{
    auto norm = [&](std::size_t r) { return dot(m.row(r), m.row(r)); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i <= count && i < m.rows(); ++i)
            for (std::size_t j = 0; j < count; ++j) {
                if (i == j) continue;
                Integer nj = norm(j);
                if (nj == 0) continue;
                Integer mu = round_div(dot(m.row(i), m.row(j)), nj);
                if (mu == 0) continue;
                Integer before = norm(i);
                m.add_row_multiple(i, j, -mu);
                if (norm(i) < before) {
                    changed = true;
                } else {
                    m.add_row_multiple(i, j, mu);
                }
            }
    }
}

} // namespace detail

/// Unimodular U with U * q = e_last, for a vector q with gcd 1.
/// The first q.size()-1 rows of U form a basis of the integer kernel of q and are size-reduced.
inline IntMatrix unimodular_completion(const IntVector& q)
{
    if (q.empty()) throw InvalidWeightError("empty vector has no unimodular completion");
    if (gcd_of(q) != 1) throw InvalidWeightError("unimodular completion needs gcd 1");
    const std::size_t n = q.size();
    IntMatrix u = IntMatrix::identity(n);
    IntVector v = q;

    for (;;) {
        std::optional<std::size_t> p;
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            ++nonzero;
            if (!p || abs(v[i]) < abs(v[*p])) p = i;
        }
        if (nonzero == 1) {
            std::size_t last = n - 1;
            std::swap(v[*p], v[last]);
            u.swap_rows(*p, last);
            if (v[last] < 0) {
                v[last] = -v[last];
                u.negate_row(last);
            }
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == *p || v[i] == 0) continue;
            Integer k = floor_div(v[i], v[*p]);
            v[i] -= k * v[*p];
            u.add_row_multiple(i, *p, -k);
        }
    }
    detail::size_reduce_rows(u, n - 1);
    return u;
}

/// Index of a sublattice in Z^ambient_dim; std::nullopt encodes an infinite index.
class LatticeIndex {
public:
    static LatticeIndex infinite() { return LatticeIndex{}; }
    static LatticeIndex finite(Integer value) { return LatticeIndex{std::move(value)}; }

    bool is_infinite() const { return !value_; }
    const Integer& value() const
    {
        if (!value_) throw std::logic_error("lattice index is infinite");
        return *value_;
    }

    std::string str() const { return value_ ? value_->str() : "infinite"; }

    friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;

private:
    LatticeIndex() = default;
    explicit LatticeIndex(Integer v) : value_(std::move(v)) {}
    std::optional<Integer> value_;
};

inline LatticeIndex lattice_index(const std::vector<IntVector>& vectors, std::size_t ambient_dim)
{
    if (ambient_dim == 0) return LatticeIndex::finite(1);
    if (vectors.empty()) return LatticeIndex::infinite();
    for (const auto& v : vectors)
        if (v.size() != ambient_dim) throw DimensionError("generator length differs from ambient dimension");
    SmithForm f = smith_normal_form(IntMatrix::from_columns(vectors));
    Integer index = 1;
    std::size_t rank = 0;
    for (const auto& d : f.diagonal())
        if (d != 0) {
            index *= d;
            ++rank;
        }
    if (rank < ambient_dim) return LatticeIndex::infinite();
    return LatticeIndex::finite(index);
}

inline LatticeIndex lattice_index(const std::vector<IntVector>& vectors)
{
    if (vectors.empty()) throw DimensionError("ambient dimension unknown for an empty generator list");
    return lattice_index(vectors, vectors.front().size());
}

} // namespace refsimplex
