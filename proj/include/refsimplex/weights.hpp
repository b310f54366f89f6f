#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "weight_vector.hpp"

namespace refsimplex {

/// One way of writing a type as compose_types(p, q, i) with multiplier d.
struct TypeDecomposition {
    WeightVector p;
    WeightVector q;
    std::size_t i = 0;
    Integer d = 1;

    friend bool operator==(const TypeDecomposition&, const TypeDecomposition&) = default;
    friend bool operator<(const TypeDecomposition& a, const TypeDecomposition& b)
    {
        if (!(a.p == b.p)) return a.p < b.p;
        if (!(a.q == b.q)) return a.q < b.q;
        return a.i < b.i;
    }
};

namespace detail {

/// Reduced weight from denominators k_i of a unit-fraction decomposition of 1: q_i = lcm(k) / k_i.
inline WeightVector weights_from_denominators(const IntVector& ks)
{
    Integer l = 1;
    for (const auto& k : ks) l = lcm(l, k);
    IntVector q;
    for (const auto& k : ks) q.push_back(l / k);
    return WeightVector(std::move(q));
}

inline std::vector<Integer> divisors_of_square(const Integer& value)
{
    // factor value by trial division, then expand the divisors of value^2
    std::vector<std::pair<Integer, unsigned>> factors;
    Integer v = value;
    for (Integer p = 2; p * p <= v; ++p) {
        unsigned e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e) factors.emplace_back(p, 2 * e);
    }
    if (v > 1) factors.emplace_back(v, 2);
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

/// All nondecreasing k-tuples of length `terms` with every k >= min_k and sum of 1/k equal to r.
inline void unit_fraction_solutions(const Rational& r, std::size_t terms, const Integer& min_k, IntVector& prefix,
                                    std::vector<IntVector>& out)
{
    if (r <= 0) return;
    if (terms == 1) {
        if (numerator(r) == 1 && denominator(r) >= min_k) {
            prefix.push_back(denominator(r));
            out.push_back(prefix);
            prefix.pop_back();
        }
        return;
    }
    if (terms == 2) {
        // 1/a + 1/b = p/q with a <= b  <=>  (pa - q)(pb - q) = q^2 with pa - q <= q
        const Integer p = numerator(r), q = denominator(r);
        std::vector<Integer> divs = divisors_of_square(q);
        std::sort(divs.begin(), divs.end());
        for (const auto& x : divs) {
            if (x > q) break;
            if ((x + q) % p != 0) continue;
            Integer a = (x + q) / p;
            Integer y = q * q / x;
            if ((y + q) % p != 0 || a < min_k) continue;
            prefix.push_back(a);
            prefix.push_back((y + q) / p);
            out.push_back(prefix);
            prefix.resize(prefix.size() - 2);
        }
        return;
    }
    Integer lo = std::max(min_k, ceil(Rational(1) / r));
    Integer hi = floor(Rational(static_cast<long long>(terms)) / r);
    for (Integer k = lo; k <= hi; ++k) {
        prefix.push_back(k);
        unit_fraction_solutions(r - Rational(1, k), terms - 1, k, prefix, out);
        prefix.pop_back();
    }
}

} // namespace detail

/// Every reduced admissible weight vector of length dim+1, sorted lexicographically.
///
/// With k_i = s / q_i, admissibility is exactly sum 1/k_i = 1, and the search over nondecreasing
/// k-tuples is finite without any user bound.
inline std::vector<WeightVector> enumerate_reduced_weights(std::size_t dim)
{
    if (dim < 1) throw PreconditionError("dimension must be at least 1");
    std::vector<IntVector> solutions;
    IntVector prefix;
    detail::unit_fraction_solutions(Rational(1), dim + 1, Integer(1), prefix, solutions);
    std::vector<WeightVector> out;
    out.reserve(solutions.size());
    for (const auto& ks : solutions) out.push_back(detail::weights_from_denominators(ks));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Default cap on the total weight (= normalized volume of the simplex) for random sampling.
inline constexpr long long kDefaultMaxVolume = 2000;

namespace detail {

/// Randomized depth-first unit-fraction recursion. At every level the feasible denominators are
/// visited in a uniformly shuffled order; dead ends backtrack.
class WeightSampler {
public:
    WeightSampler(std::size_t terms, const Integer& max_volume, std::uint64_t seed)
        : terms_(terms), cap_(max_volume), rng_(seed)
    {
    }

    std::optional<WeightVector> draw()
    {
        IntVector ks;
        if (!extend(Rational(1), terms_, Integer(1), Integer(1), ks)) return std::nullopt;
        return weights_from_denominators(ks);
    }

private:
    bool extend(const Rational& r, std::size_t terms, const Integer& min_k, const Integer& l, IntVector& ks)
    {
        if (r <= 0) return false;
        if (terms == 1) {
            if (numerator(r) != 1 || denominator(r) < min_k || lcm(l, denominator(r)) > cap_) return false;
            ks.push_back(denominator(r));
            return true;
        }
        Integer lo = std::max(min_k, ceil(Rational(1) / r));
        Integer hi = std::min(cap_, floor(Rational(static_cast<long long>(terms)) / r));
        std::vector<Integer> candidates;
        for (Integer k = lo; k <= hi; ++k)
            if (lcm(l, k) <= cap_) candidates.push_back(k);
        std::shuffle(candidates.begin(), candidates.end(), rng_);
        for (const auto& k : candidates) {
            ks.push_back(k);
            if (extend(r - Rational(1, k), terms - 1, k, lcm(l, k), ks)) return true;
            ks.pop_back();
        }
        return false;
    }

    std::size_t terms_;
    Integer cap_;
    std::mt19937_64 rng_;
};

} // namespace detail

/// `count` reduced admissible weights of length dim+1 with total weight at most max_volume,
/// reproducible from `seed`. Duplicates are allowed.
inline std::vector<WeightVector> sample_random_weights(std::size_t dim, std::size_t count, std::uint64_t seed,
                                                       const Integer& max_volume = kDefaultMaxVolume)
{
    if (dim < 1) throw PreconditionError("dimension must be at least 1");
    if (max_volume < Integer(dim + 1)) throw PreconditionError("volume cap below the minimal volume dim+1");
    detail::WeightSampler sampler(dim + 1, max_volume, seed);
    std::vector<WeightVector> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        auto w = sampler.draw();
        if (!w) throw InvariantViolation("no admissible weight within the volume cap");
        out.push_back(std::move(*w));
    }
    return out;
}

/// Type of P *_i Q for reduced weights p, q: ((q_i p, s q_{k != i}) / d, d), s = sum p, d = gcd(q_i, s).
inline SimplexType compose_types(const WeightVector& p, const WeightVector& q, std::size_t i)
{
    if (p.gcd() != 1 || q.gcd() != 1) throw InvalidWeightError("compose_types expects reduced weights");
    if (i >= q.size()) throw PreconditionError("vertex index out of range");
    const Integer& s = p.sum();
    const Integer d = gcd(q[i], s);
    IntVector out;
    for (const auto& pj : p.values()) out.push_back(q[i] * pj / d);
    for (std::size_t k = 0; k < q.size(); ++k)
        if (k != i) out.push_back(s * q[k] / d);
    return SimplexType(WeightVector(std::move(out)), d);
}

/// All (p, q, i) with compose_types(p, q, i) = t, obtained by inverting the composition formula on
/// every split of the multiset t.q_red. A nonempty answer is necessary, not sufficient, for the
/// simplex to split when lambda > 1.
inline std::vector<TypeDecomposition> type_decompositions(const SimplexType& t)
{
    const IntVector& w = t.q_red.values();
    const std::size_t len = w.size();
    std::set<TypeDecomposition> found;
    if (len < 3 || len > 62) return {};
    std::set<IntVector> seen_parts;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << len); ++mask) {
        IntVector a, b;
        for (std::size_t k = 0; k < len; ++k) ((mask >> k) & 1 ? a : b).push_back(w[k]);
        if (a.size() < 2 || b.empty()) continue;
        if (!seen_parts.insert(a).second) continue;

        Integer g = gcd_of(a);
        IntVector p_vals;
        for (const auto& x : a) p_vals.push_back(x / g);
        Integer s = 0;
        for (const auto& x : p_vals) s += x;
        const Integer& d = t.lambda;
        Integer qi = d * g;
        if (gcd(qi, s) != d) continue;
        IntVector q_vals{qi};
        bool integral = true;
        for (const auto& x : b) {
            if ((x * d) % s != 0) {
                integral = false;
                break;
            }
            q_vals.push_back(x * d / s);
        }
        if (!integral || !satisfies_condition(p_vals) || !satisfies_condition(q_vals)) continue;

        WeightVector p(p_vals), q(q_vals);
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] != qi) continue;
            if (compose_types(p, q, i) == t) found.insert(TypeDecomposition{p, q, i, d});
        }
    }
    return {found.begin(), found.end()};
}

} // namespace refsimplex
