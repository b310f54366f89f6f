#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "linalg.hpp"
#include "simplex.hpp"

namespace refsimplex {

/// Coordinates of Z^{n+1} in the basis of lifted vertices (v_i, 1), as integer numerators over
/// the positive denominator |det|.
class ConeFrame {
public:
    explicit ConeFrame(const LatticeSimplex& s) : lifted_(s.lifted_matrix())
    {
        AdjugateSolver solver(lifted_);
        adj_ = solver.adjugate();
        denom_ = solver.det();
        if (denom_ < 0) {
            denom_ = -denom_;
            for (std::size_t r = 0; r < adj_.rows(); ++r) adj_.negate_row(r);
        }
    }

    const IntMatrix& lifted() const { return lifted_; }
    const IntMatrix& adjugate() const { return adj_; }
    const Integer& denominator() const { return denom_; }
    std::size_t size() const { return lifted_.rows(); }

    IntVector numerators(std::span<const Integer> x) const { return adj_ * x; }

    /// Lattice point whose cone coordinates are numerators / denominator.
    IntVector point(std::span<const Integer> numerators) const
    {
        IntVector p = lifted_ * numerators;
        for (auto& x : p) {
            if (x % denom_ != 0) throw InvariantViolation("cone coordinates do not describe a lattice point");
            x /= denom_;
        }
        return p;
    }

    bool in_cone(std::span<const Integer> numerators) const
    {
        return std::all_of(numerators.begin(), numerators.end(), [](const Integer& c) { return c >= 0; });
    }

    bool in_parallelepiped(std::span<const Integer> numerators) const
    {
        return std::all_of(numerators.begin(), numerators.end(), [&](const Integer& c) { return c >= 0 && c < denom_; });
    }

private:
    IntMatrix lifted_;
    IntMatrix adj_;
    Integer denom_;
};

/// A lattice point of the half-open fundamental parallelepiped of the cone over a simplex.
struct FppPoint {
    IntVector point;
    Integer height;
    RationalVector coeffs;

    friend bool operator==(const FppPoint&, const FppPoint&) = default;
};

/// Ehrhart numerator coefficients h*_0..h*_d.
class HStarVector {
public:
    HStarVector() : h_{1} {}

    explicit HStarVector(IntVector coeffs) : h_(std::move(coeffs))
    {
        if (h_.empty()) throw InvariantViolation("h* vector must be nonempty");
        if (h_.front() != 1) throw InvariantViolation("h*_0 must equal 1");
        for (const auto& c : h_)
            if (c < 0) throw InvariantViolation("h* entries must be nonnegative");
    }

    HStarVector(std::initializer_list<long long> coeffs) : HStarVector(to_integers(coeffs)) {}

    const IntVector& coeffs() const { return h_; }
    const Integer& operator[](std::size_t j) const { return h_[j]; }
    std::size_t size() const { return h_.size(); }
    std::size_t degree() const { return h_.size() - 1; }

    Integer sum() const
    {
        Integer s = 0;
        for (const auto& c : h_) s += c;
        return s;
    }

    std::string str() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < h_.size(); ++i) out += (i ? "," : "") + h_[i].str();
        return out + ")";
    }

    friend bool operator==(const HStarVector&, const HStarVector&) = default;

private:
    IntVector h_;
};

/// Lattice points of the fundamental parallelepiped, one per coset of Z^{n+1} / A Z^{n+1}
/// where A has columns (v_i, 1). Cosets come from the Smith form of A; the output is sorted
/// lexicographically by point.
inline std::vector<FppPoint> fpp_points(const LatticeSimplex& s)
{
    const ConeFrame frame(s);
    const Integer& denom = frame.denominator();
    const std::size_t n1 = frame.size();

    SmithForm smith = smith_normal_form(frame.lifted());
    // A = U^{-1} D V^{-1}, so Z^{n+1}/AZ^{n+1} is generated by the columns of U^{-1} with orders d_i
    AdjugateSolver u_solver(smith.U);
    IntMatrix u_inv = u_solver.adjugate();
    if (u_solver.det() < 0)
        for (std::size_t r = 0; r < n1; ++r) u_inv.negate_row(r);

    std::vector<Integer> orders;
    std::vector<IntVector> generators;
    for (std::size_t i = 0; i < n1; ++i) {
        const Integer& d = smith.D(i, i);
        if (d == 0) throw InvariantViolation("lifted vertex matrix is singular");
        if (d == 1) continue;
        IntVector g = frame.numerators(u_inv.column(i));
        for (auto& x : g) x = mod_floor(x, denom);
        orders.push_back(d);
        generators.push_back(std::move(g));
    }

    std::vector<FppPoint> out;
    std::vector<Integer> counter(orders.size());
    IntVector current(n1);
    for (;;) {
        FppPoint p;
        p.point = frame.point(current);
        p.height = p.point.back();
        for (const auto& c : current) p.coeffs.emplace_back(c, denom);
        out.push_back(std::move(p));

        // mixed-radix increment, keeping `current` reduced modulo the denominator
        std::size_t k = 0;
        for (; k < orders.size(); ++k) {
            ++counter[k];
            for (std::size_t r = 0; r < n1; ++r) current[r] = mod_floor(current[r] + generators[k][r], denom);
            if (counter[k] < orders[k]) break;
            counter[k] = 0;
        }
        if (k == orders.size()) break;
    }
    if (Integer(out.size()) != denom) throw InvariantViolation("parallelepiped point count differs from |det|");
    std::sort(out.begin(), out.end(), [](const FppPoint& a, const FppPoint& b) { return a.point < b.point; });
    return out;
}

/// Histogram of parallelepiped points by height; exactly dim+1 entries.
inline HStarVector hstar(const LatticeSimplex& s)
{
    IntVector h(s.dim() + 1);
    for (const auto& p : fpp_points(s)) {
        if (p.height < 0 || p.height > Integer(s.dim())) throw InvariantViolation("parallelepiped point height out of range");
        ++h[static_cast<std::size_t>(p.height)];
    }
    return HStarVector(std::move(h));
}

namespace detail {

/// Scans the bounding box of m*S coordinate by coordinate, tightening each coordinate's range with
/// the barycentric inequalities relaxed over the remaining box.
template <typename Int>
class DilateScanner {
public:
    DilateScanner(const ConeFrame& frame, const std::vector<IntVector>& vertices, const Integer& m)
        : n_(frame.size() - 1), lo_(n_), hi_(n_), a_(frame.size(), std::vector<Int>(n_)), base_(frame.size()),
          suffix_(frame.size(), std::vector<Int>(n_ + 1))
    {
        for (std::size_t j = 0; j < n_; ++j) {
            Integer lo = vertices[0][j], hi = vertices[0][j];
            for (const auto& v : vertices) {
                lo = std::min(lo, v[j]);
                hi = std::max(hi, v[j]);
            }
            lo_[j] = static_cast<Int>(lo * m);
            hi_[j] = static_cast<Int>(hi * m);
        }
        for (std::size_t i = 0; i < frame.size(); ++i) {
            for (std::size_t j = 0; j < n_; ++j) a_[i][j] = static_cast<Int>(frame.adjugate()(i, j));
            base_[i] = static_cast<Int>(frame.adjugate()(i, n_) * m);
            for (std::size_t j = n_; j-- > 0;) {
                Int best = std::max(a_[i][j] * lo_[j], a_[i][j] * hi_[j]);
                suffix_[i][j] = suffix_[i][j + 1] + best;
            }
        }
    }

    void scan(const std::function<void(const std::vector<Int>&)>& visit)
    {
        std::vector<Int> x(n_);
        recurse(0, base_, x, visit);
    }

private:
    static Int floor_div_int(Int a, Int b)
    {
        Int q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }
    static Int ceil_div_int(Int a, Int b) { return -floor_div_int(-a, b); }

    void recurse(std::size_t k, const std::vector<Int>& partial, std::vector<Int>& x,
                 const std::function<void(const std::vector<Int>&)>& visit)
    {
        if (k == n_) {
            for (const auto& p : partial)
                if (p < 0) return;
            visit(x);
            return;
        }
        Int lo = lo_[k], hi = hi_[k];
        for (std::size_t i = 0; i < partial.size(); ++i) {
            Int need = -partial[i] - suffix_[i][k + 1];
            Int a = a_[i][k];
            if (a > 0) {
                lo = std::max(lo, ceil_div_int(need, a));
            } else if (a < 0) {
                hi = std::min(hi, floor_div_int(need, a));
            } else if (need > 0) {
                return;
            }
        }
        std::vector<Int> next(partial.size());
        for (Int v = lo; v <= hi; ++v) {
            x[k] = v;
            for (std::size_t i = 0; i < partial.size(); ++i) next[i] = partial[i] + a_[i][k] * v;
            recurse(k + 1, next, x, visit);
        }
    }

    std::size_t n_;
    std::vector<Int> lo_, hi_;
    std::vector<std::vector<Int>> a_;
    std::vector<Int> base_;
    std::vector<std::vector<Int>> suffix_;
};

inline bool scan_fits_int64(const ConeFrame& frame, const std::vector<IntVector>& vertices, const Integer& m)
{
    Integer coord = m;
    for (const auto& v : vertices)
        for (const auto& c : v) coord = std::max(coord, abs(c) * m);
    Integer adj = 0;
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (std::size_t j = 0; j < frame.size(); ++j) adj = std::max(adj, abs(frame.adjugate()(i, j)));
    Integer bound = 4 * adj * coord * Integer(frame.size() + 1);
    return bound < Integer(std::numeric_limits<std::int64_t>::max());
}

} // namespace detail

/// Calls visit(x) for every lattice point x of the dilate m*S, found by a bounding-box scan.
inline void for_each_lattice_point(const LatticeSimplex& s, const Integer& m, const std::function<void(const IntVector&)>& visit)
{
    if (m < 0) throw PreconditionError("dilation factor must be nonnegative");
    if (m == 0) {
        visit(IntVector(s.dim()));
        return;
    }
    const ConeFrame frame(s);
    if (detail::scan_fits_int64(frame, s.vertices(), m)) {
        detail::DilateScanner<std::int64_t> scanner(frame, s.vertices(), m);
        scanner.scan([&](const std::vector<std::int64_t>& x) {
            IntVector p(x.begin(), x.end());
            visit(p);
        });
    } else {
        detail::DilateScanner<Integer> scanner(frame, s.vertices(), m);
        scanner.scan([&](const std::vector<Integer>& x) { visit(x); });
    }
}

/// |mS ∩ Z^n| by direct enumeration; m = 0 counts the single point 0.
inline Integer count_lattice_points(const LatticeSimplex& s, const Integer& m)
{
    Integer count = 0;
    for_each_lattice_point(s, m, [&](const IntVector&) { ++count; });
    return count;
}

inline Integer binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    Integer r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * Integer(n - k + i) / Integer(i);
    return r;
}

/// h* from the lattice-point counts L(0..d) of the first dilates:
/// h*_j = sum_{i<=j} (-1)^i C(d+1, i) L(j-i).
inline HStarVector hstar_by_interpolation(const LatticeSimplex& s)
{
    const std::size_t d = s.dim();
    std::vector<Integer> counts;
    for (std::size_t m = 0; m <= d; ++m) counts.push_back(count_lattice_points(s, Integer(m)));
    IntVector h(d + 1);
    for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t i = 0; i <= j; ++i) {
            Integer term = binomial(d + 1, i) * counts[j - i];
            h[j] += (i % 2 == 0) ? term : Integer(-term);
        }
    return HStarVector(std::move(h));
}

inline bool is_unimodal(const HStarVector& h)
{
    const auto& c = h.coeffs();
    std::size_t k = 0;
    while (k + 1 < c.size() && c[k] <= c[k + 1]) ++k;
    while (k + 1 < c.size() && c[k] >= c[k + 1]) ++k;
    return k + 1 == c.size();
}

inline bool is_palindromic(const HStarVector& h)
{
    const auto& c = h.coeffs();
    return std::equal(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.rbegin());
}

inline HStarVector polynomial_product(const HStarVector& a, const HStarVector& b)
{
    IntVector out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return HStarVector(std::move(out));
}

} // namespace refsimplex
