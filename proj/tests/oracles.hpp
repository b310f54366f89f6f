#pragma once

// Brute-force reference computations used only by the tests. None of these go through the
// Smith form, the adjugate frame, or the unit-fraction recursion used by the library.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <refsimplex/refsimplex.hpp>

namespace oracle {

using namespace refsimplex;

inline RationalVector barycentric(const LatticeSimplex& s, const IntVector& x, const Integer& height)
{
    IntVector rhs = x;
    rhs.push_back(height);
    return solve_rational(s.lifted_matrix(), rhs);
}

/// Visits every integer point of the box [lo, hi].
inline void scan_box(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& visit)
{
    IntVector x = lo;
    if (x.empty()) {
        visit(x);
        return;
    }
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return;
    for (;;) {
        visit(x);
        std::size_t k = 0;
        for (; k < x.size(); ++k) {
            if (x[k] < hi[k]) {
                ++x[k];
                break;
            }
            x[k] = lo[k];
        }
        if (k == x.size()) return;
    }
}

/// Lifted lattice points of the half-open parallelepiped, by scanning its bounding box.
inline std::vector<IntVector> parallelepiped_by_scan(const LatticeSimplex& s)
{
    const std::size_t n = s.dim();
    IntVector lo(n + 1), hi(n + 1);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& v : s.vertices()) {
            if (v[j] < 0) lo[j] += v[j];
            if (v[j] > 0) hi[j] += v[j];
        }
    hi[n] = Integer(n);
    std::vector<IntVector> out;
    scan_box(lo, hi, [&](const IntVector& p) {
        IntVector x(p.begin(), p.end() - 1);
        auto c = barycentric(s, x, p.back());
        if (std::all_of(c.begin(), c.end(), [](const Rational& ci) { return ci >= 0 && ci < 1; })) out.push_back(p);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Lattice points of m*S by scanning the bounding box with rational barycentric tests.
inline std::vector<IntVector> dilate_points(const LatticeSimplex& s, long long m)
{
    const std::size_t n = s.dim();
    if (m == 0) return {IntVector(n)};
    IntVector lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = hi[j] = s.vertex(0)[j] * m;
        for (const auto& v : s.vertices()) {
            lo[j] = std::min(lo[j], Integer(v[j] * m));
            hi[j] = std::max(hi[j], Integer(v[j] * m));
        }
    }
    std::vector<IntVector> out;
    scan_box(lo, hi, [&](const IntVector& x) {
        auto c = barycentric(s, x, Integer(m));
        if (std::all_of(c.begin(), c.end(), [](const Rational& ci) { return ci >= 0; })) out.push_back(x);
    });
    return out;
}

/// Integral closure by brute force: every lattice point of mS, 2 <= m <= max_m, is a sum of m points of S.
inline bool integrally_closed_by_sums(const LatticeSimplex& s, long long max_m)
{
    auto ones = dilate_points(s, 1);
    std::set<IntVector> sums(ones.begin(), ones.end());
    for (long long m = 2; m <= max_m; ++m) {
        std::set<IntVector> next;
        for (const auto& a : sums)
            for (const auto& b : ones) {
                IntVector c = a;
                for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
                next.insert(std::move(c));
            }
        for (const auto& x : dilate_points(s, m))
            if (!next.count(x)) return false;
        sums = std::move(next);
    }
    return true;
}

/// Every nondecreasing positive (n+1)-tuple with sum at most max_sum that passes the admissibility
/// predicate, checked directly.
inline std::vector<WeightVector> weights_by_brute_force(std::size_t n, long long max_sum)
{
    std::vector<WeightVector> out;
    std::vector<long long> q(n + 1);
    std::function<void(std::size_t, long long, long long)> rec = [&](std::size_t k, long long min, long long sum) {
        if (k == n + 1) {
            long long g = 0;
            for (auto v : q) g = std::gcd(g, v);
            if (g != 1) return;
            for (auto v : q)
                if (sum % v != 0) return;
            IntVector iv(q.begin(), q.end());
            out.emplace_back(iv);
            return;
        }
        for (long long v = min; sum + v * static_cast<long long>(n + 1 - k) <= max_sum; ++v) {
            q[k] = v;
            rec(k + 1, v, sum + v);
        }
    };
    rec(0, 1, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Polynomial determinant by the Leibniz formula over all permutations.
inline std::map<std::vector<std::size_t>, Integer> leibniz_det(const MultiplicationPattern& m, const std::vector<std::size_t>& rows,
                                                               const std::vector<std::size_t>& cols)
{
    using Poly = std::map<std::vector<std::size_t>, Integer>;
    Poly total;
    std::vector<std::size_t> perm(cols.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int sign = 1;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Poly term{{{}, Integer(1)}};
        for (std::size_t r = 0; r < rows.size() && !term.empty(); ++r) {
            const auto& entry = m.at(rows[r], cols[perm[r]]);
            Poly next;
            for (const auto& [mono, c] : term)
                for (auto j : entry) {
                    auto mm = mono;
                    mm.push_back(j);
                    std::sort(mm.begin(), mm.end());
                    next[mm] += c;
                }
            term = std::move(next);
        }
        for (const auto& [mono, c] : term) total[mono] += sign * c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto it = total.begin(); it != total.end();)
        it = it->second == 0 ? total.erase(it) : std::next(it);
    return total;
}

/// Unimodular equivalence of two simplices with the origin in their interiors: some vertex bijection
/// is realized by an integer matrix of determinant +-1.
inline bool unimodularly_equivalent(const LatticeSimplex& a, const LatticeSimplex& b)
{
    if (a.dim() != b.dim()) return false;
    const std::size_t n = a.dim();
    std::vector<std::size_t> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<IntVector> a_cols(a.vertices().begin(), a.vertices().begin() + static_cast<std::ptrdiff_t>(n));
    IntMatrix va = IntMatrix::from_columns(a_cols);
    AdjugateSolver inv(va);
    do {
        std::vector<IntVector> b_cols;
        for (std::size_t i = 0; i < n; ++i) b_cols.push_back(b.vertex(perm[i]));
        // T = Vb * Va^{-1} = Vb * adj / det
        IntMatrix t = IntMatrix::from_columns(b_cols) * inv.adjugate();
        bool integral = true;
        for (std::size_t r = 0; r < n && integral; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (t(r, c) % inv.det() != 0) {
                    integral = false;
                    break;
                }
                t(r, c) /= inv.det();
            }
        if (!integral || abs(determinant(t)) != 1) continue;
        if (t * a.vertex(n) == b.vertex(perm[n])) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Reeve tetrahedron conv(0, e1, e2, e1 + e2 + h e3).
inline LatticeSimplex reeve(long long h) { return LatticeSimplex{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, h}}; }

/// Standard reflexive simplex conv(e_1, ..., e_n, -sum e_i).
inline LatticeSimplex standard_simplex(std::size_t n)
{
    std::vector<IntVector> vs;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        vs.push_back(e);
    }
    vs.push_back(IntVector(n, Integer(-1)));
    return LatticeSimplex(vs);
}

/// d-dimensional cross-polytope-free-sum chain of [-1, 1] built with free_sum.
inline LatticeSimplex segment_chain(std::size_t d)
{
    LatticeSimplex seg{{1}, {-1}};
    LatticeSimplex acc = seg;
    for (std::size_t k = 1; k < d; ++k) acc = free_sum(acc, seg, 0);
    return acc;
}

} // namespace oracle
