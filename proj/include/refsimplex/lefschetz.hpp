#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ehrhart.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "simplex.hpp"

namespace refsimplex {

/// Monomial basis of R_P: parallelepiped points bucketed by height.
struct GradedBasis {
    std::vector<std::vector<FppPoint>> by_height;
    /// True when the buckets follow the v_{i,r} listing of the obstruction family.
    bool family_order = false;

    std::vector<std::size_t> sizes() const
    {
        std::vector<std::size_t> out;
        for (const auto& b : by_height) out.push_back(b.size());
        return out;
    }
};

namespace detail {

inline bool reorder_as_family(std::vector<std::vector<FppPoint>>& buckets, std::size_t d)
{
    if (d < 3) return false;
    std::vector<std::vector<FppPoint>> reordered = buckets;
    for (std::size_t r = 1; r + 1 <= d; ++r) {
        auto listed = family::listing(d, r);
        if (listed.size() != buckets[r].size()) return false;
        for (std::size_t k = 0; k < listed.size(); ++k) {
            auto it = std::find_if(buckets[r].begin(), buckets[r].end(), [&](const FppPoint& p) { return p.point == listed[k]; });
            if (it == buckets[r].end()) return false;
            reordered[r][k] = *it;
        }
    }
    buckets = std::move(reordered);
    return true;
}

} // namespace detail

/// Lexicographic inside each height, except for the obstruction family whose buckets use its listing order.
inline GradedBasis graded_basis(const LatticeSimplex& s)
{
    GradedBasis basis;
    basis.by_height.resize(s.dim() + 1);
    for (auto& p : fpp_points(s)) basis.by_height[static_cast<std::size_t>(p.height)].push_back(std::move(p));
    basis.family_order = detail::reorder_as_family(basis.by_height, s.dim());
    return basis;
}

/// Support of the matrix of multiplication by sum_j a_j x^{p_j} z from degree i to i+1.
/// Entry (row, col) lists the j for which p_j * basis_i[col] = basis_{i+1}[row] in R_P.
struct MultiplicationPattern {
    std::size_t degree = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::size_t>> entries; // row-major

    MultiplicationPattern() = default;
    MultiplicationPattern(std::size_t deg, std::size_t r, std::size_t c) : degree(deg), rows(r), cols(c), entries(r * c) {}

    std::vector<std::size_t>& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const std::vector<std::size_t>& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    std::size_t variable_count() const
    {
        std::size_t n = 0;
        for (const auto& e : entries)
            for (auto j : e) n = std::max(n, j + 1);
        return n;
    }
};

/// Patterns for degrees 0 .. dim-1. A product u * p_j survives in R_P exactly when every cone
/// coordinate of u + p_j stays below one; otherwise it is divisible by a vertex monomial.
inline std::vector<MultiplicationPattern> multiplication_patterns(const LatticeSimplex& s, const GradedBasis& basis)
{
    const ConeFrame frame(s);
    const std::size_t d = s.dim();
    std::vector<std::vector<IntVector>> nums(d + 1);
    std::map<IntVector, std::size_t> index_of;
    for (std::size_t h = 0; h <= d; ++h)
        for (std::size_t k = 0; k < basis.by_height[h].size(); ++k) {
            nums[h].push_back(frame.numerators(basis.by_height[h][k].point));
            index_of.emplace(nums[h].back(), k);
        }

    std::vector<MultiplicationPattern> out;
    IntVector sum(frame.size());
    for (std::size_t i = 0; i < d; ++i) {
        MultiplicationPattern m(i, basis.by_height[i + 1].size(), basis.by_height[i].size());
        for (std::size_t col = 0; col < m.cols; ++col)
            for (std::size_t j = 0; j < nums[1].size(); ++j) {
                for (std::size_t r = 0; r < sum.size(); ++r) sum[r] = nums[i][col][r] + nums[1][j][r];
                if (!frame.in_parallelepiped(sum)) continue;
                auto it = index_of.find(sum);
                if (it == index_of.end()) throw InvariantViolation("product landed outside the parallelepiped basis");
                m.at(it->second, col).push_back(j);
            }
        out.push_back(std::move(m));
    }
    return out;
}

inline std::vector<MultiplicationPattern> multiplication_patterns(const LatticeSimplex& s)
{
    return multiplication_patterns(s, graded_basis(s));
}

/// Maximum matching on the nonzero support; an upper bound on the rank under every substitution.
inline std::size_t structural_rank(const MultiplicationPattern& m)
{
    std::vector<std::optional<std::size_t>> match_of_col(m.cols);
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t row, std::vector<bool>& seen) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (m.at(row, c).empty() || seen[c]) continue;
            seen[c] = true;
            if (!match_of_col[c] || augment(*match_of_col[c], seen)) {
                match_of_col[c] = row;
                return true;
            }
        }
        return false;
    };
    std::size_t size = 0;
    for (std::size_t r = 0; r < m.rows; ++r) {
        std::vector<bool> seen(m.cols);
        if (augment(r, seen)) ++size;
    }
    return size;
}

/// Prime field used for randomized rank evaluation.
inline constexpr std::uint64_t kRankPrime = 2147483647; // 2^31 - 1

namespace detail {

inline std::size_t rank_mod_prime(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p)
{
    auto pow_mod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        std::uint64_t inv = pow_mod(a[rank][c], p - 2);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            std::uint64_t f = a[r][c] * inv % p;
            for (std::size_t k = c; k < cols; ++k) a[r][k] = (a[r][k] + (p - f) * a[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

inline std::size_t substituted_rank(const MultiplicationPattern& m, const std::vector<std::uint64_t>& values, std::uint64_t p)
{
    std::vector<std::vector<std::uint64_t>> a(m.rows, std::vector<std::uint64_t>(m.cols));
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            for (auto j : m.at(r, c)) a[r][c] = (a[r][c] + values[j]) % p;
    return rank_mod_prime(std::move(a), p);
}

inline std::vector<std::uint64_t> random_substitution(std::size_t n, std::mt19937_64& rng, std::uint64_t p)
{
    std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

/// Polynomial in the substitution variables: sorted multiset of variable indices -> coefficient.
using Polynomial = std::map<std::vector<std::size_t>, Integer>;

inline Polynomial multiply(const Polynomial& a, const Polynomial& b)
{
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<std::size_t> mono = ma;
            mono.insert(mono.end(), mb.begin(), mb.end());
            std::sort(mono.begin(), mono.end());
            Integer& c = out[mono];
            c += ca * cb;
            if (c == 0) out.erase(mono);
        }
    return out;
}

inline void accumulate(Polynomial& into, const Polynomial& term, int sign)
{
    for (const auto& [mono, c] : term) {
        Integer& slot = into[mono];
        slot += sign * c;
        if (slot == 0) into.erase(mono);
    }
}

/// Symbolic determinant by Laplace expansion along the first listed row.
inline Polynomial symbolic_det(const MultiplicationPattern& m, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols)
{
    if (rows.empty()) return Polynomial{{{}, Integer(1)}};
    Polynomial out;
    std::vector<std::size_t> rest_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const auto& entry = m.at(rows[0], cols[k]);
        if (entry.empty()) continue;
        Polynomial linear;
        for (auto j : entry) linear[{j}] += 1;
        std::vector<std::size_t> rest_cols = cols;
        rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(k));
        Polynomial minor = symbolic_det(m, rest_rows, rest_cols);
        if (minor.empty()) continue;
        accumulate(out, multiply(linear, minor), k % 2 == 0 ? 1 : -1);
    }
    return out;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    for (;;) {
        if (visit(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/// Max over `trials` substitutions of the exact rank modulo kRankPrime; deterministic in `seed`.
inline std::size_t generic_rank_lower_bound(const MultiplicationPattern& m, std::uint64_t seed, std::size_t trials)
{
    if (trials < 1) throw PreconditionError("need at least one trial");
    std::mt19937_64 rng(seed);
    std::size_t best = 0;
    const std::size_t vars = m.variable_count();
    for (std::size_t t = 0; t < trials; ++t)
        best = std::max(best, detail::substituted_rank(m, detail::random_substitution(vars, rng, kRankPrime), kRankPrime));
    return best;
}

/// Largest square minor of the symbolic matrix that is a nonzero polynomial. Exponential; meant for
/// matrices up to 6x6.
inline std::size_t symbolic_generic_rank(const MultiplicationPattern& m)
{
    for (std::size_t k = std::min(m.rows, m.cols); k > 0; --k) {
        bool nonzero = false;
        detail::for_each_subset(m.rows, k, [&](const std::vector<std::size_t>& rows) {
            detail::for_each_subset(m.cols, k, [&](const std::vector<std::size_t>& cols) {
                nonzero = !detail::symbolic_det(m, rows, cols).empty();
                return nonzero;
            });
            return nonzero;
        });
        if (nonzero) return k;
    }
    return 0;
}

inline constexpr std::size_t kSymbolicRankLimit = 6;

enum class WlKind { exists, not_exists, undetermined };

inline std::string to_string(WlKind k)
{
    switch (k) {
    case WlKind::exists: return "exists";
    case WlKind::not_exists: return "not_exists";
    case WlKind::undetermined: return "undetermined";
    }
    return "undetermined";
}

struct WlVerdict {
    WlKind kind = WlKind::undetermined;
    /// Degree i of the failing map [R]_i -> [R]_{i+1} (not_exists / undetermined).
    std::optional<std::size_t> degree;
    /// Coefficients a_j (mod prime) of a linear form of maximal rank in every degree (exists).
    std::optional<std::vector<std::uint64_t>> witness;
    /// "structural" or "symbolic" for not_exists.
    std::string certificate;
    std::vector<std::size_t> target_ranks;
    std::vector<std::size_t> structural_ranks;
    std::vector<std::size_t> observed_ranks;
    std::uint64_t prime = kRankPrime;
    std::size_t trials = 0;
};

/// Decides whether R_S has a weak Lefschetz element.
///
/// A degree whose structural rank is below min(h*_i, h*_{i+1}) rules one out for every substitution.
/// One substitution reaching full rank in every degree is a witness. Otherwise the answer is
/// undetermined, unless an exact symbolic rank (small matrices only) settles it negatively.
inline WlVerdict weak_lefschetz_verdict(const LatticeSimplex& s, std::uint64_t seed, std::size_t trials,
                                        bool symbolic_fallback = true)
{
    if (trials < 1) throw PreconditionError("need at least one trial");
    if (!is_reflexive(s).reflexive) throw PreconditionError("weak Lefschetz verdict needs a reflexive simplex");
    GradedBasis basis = graded_basis(s);
    std::vector<MultiplicationPattern> patterns = multiplication_patterns(s, basis);
    auto sizes = basis.sizes();

    WlVerdict v;
    v.trials = trials;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        v.target_ranks.push_back(std::min(sizes[i], sizes[i + 1]));
        v.structural_ranks.push_back(structural_rank(patterns[i]));
    }
    v.observed_ranks.assign(patterns.size(), 0);

    for (std::size_t i = 0; i < patterns.size(); ++i)
        if (v.structural_ranks[i] < v.target_ranks[i]) {
            v.kind = WlKind::not_exists;
            v.degree = i;
            v.certificate = "structural";
            return v;
        }

    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        auto a = detail::random_substitution(sizes.size() > 1 ? sizes[1] : 0, rng, kRankPrime);
        bool full = true;
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            std::size_t r = detail::substituted_rank(patterns[i], a, kRankPrime);
            v.observed_ranks[i] = std::max(v.observed_ranks[i], r);
            full = full && r == v.target_ranks[i];
        }
        if (full) {
            v.kind = WlKind::exists;
            v.witness = std::move(a);
            if (!is_unimodal(hstar(s))) throw InvariantViolation("weak Lefschetz element found but h* is not unimodal");
            return v;
        }
    }

    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (v.observed_ranks[i] == v.target_ranks[i]) continue;
        if (!v.degree) v.degree = i;
        if (symbolic_fallback && patterns[i].rows <= kSymbolicRankLimit && patterns[i].cols <= kSymbolicRankLimit &&
            symbolic_generic_rank(patterns[i]) < v.target_ranks[i]) {
            v.kind = WlKind::not_exists;
            v.degree = i;
            v.certificate = "symbolic";
            return v;
        }
    }
    v.kind = WlKind::undetermined;
    return v;
}

} // namespace refsimplex
