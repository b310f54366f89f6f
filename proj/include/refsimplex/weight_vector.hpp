#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace refsimplex {

/// Positive integer weights kept sorted nondecreasing, with the sum cached.
class WeightVector {
public:
    WeightVector() = default;

    explicit WeightVector(IntVector values) : q_(std::move(values))
    {
        if (q_.empty()) throw InvalidWeightError("weight vector must be nonempty");
        for (const auto& v : q_)
            if (v <= 0) throw InvalidWeightError("weights must be positive, got " + v.str());
        std::sort(q_.begin(), q_.end());
        for (const auto& v : q_) sum_ += v;
    }

    WeightVector(std::initializer_list<long long> values) : WeightVector(to_integers(values)) {}

    const IntVector& values() const { return q_; }
    const Integer& operator[](std::size_t i) const { return q_[i]; }
    std::size_t size() const { return q_.size(); }
    /// Dimension of the simplex these weights describe.
    std::size_t dim() const { return q_.size() - 1; }
    const Integer& sum() const { return sum_; }
    Integer gcd() const { return gcd_of(q_); }

    std::string str() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < q_.size(); ++i) out += (i ? "," : "") + q_[i].str();
        return out + ")";
    }

    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.q_ == b.q_; }
    friend bool operator<(const WeightVector& a, const WeightVector& b)
    {
        if (a.q_.size() != b.q_.size()) return a.q_.size() < b.q_.size();
        return a.q_ < b.q_;
    }

private:
    IntVector q_;
    Integer sum_ = 0;
};

/// Reduced weight plus multiplier: (Q_red, lambda).
struct SimplexType {
    WeightVector q_red;
    Integer lambda = 1;

    SimplexType() = default;
    SimplexType(WeightVector q, Integer l) : q_red(std::move(q)), lambda(std::move(l))
    {
        if (q_red.gcd() != 1) throw InvalidWeightError("reduced weight must have gcd 1: " + q_red.str());
        if (lambda <= 0) throw InvalidWeightError("type multiplier must be positive");
    }

    std::string str() const { return "(" + q_red.str() + "," + lambda.str() + ")"; }

    friend bool operator==(const SimplexType&, const SimplexType&) = default;
};

/// gcd(q) = 1 and every q_i divides the total weight.
inline bool satisfies_condition(const IntVector& q)
{
    if (q.empty()) return false;
    Integer s = 0;
    for (const auto& v : q) {
        if (v <= 0) return false;
        s += v;
    }
    if (gcd_of(q) != 1) return false;
    return std::all_of(q.begin(), q.end(), [&](const Integer& v) { return s % v == 0; });
}

inline bool satisfies_condition(const WeightVector& q) { return satisfies_condition(q.values()); }

} // namespace refsimplex
