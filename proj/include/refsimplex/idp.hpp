#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ehrhart.hpp"
#include "simplex.hpp"

namespace refsimplex {

struct IdpVerdict {
    bool closed = true;
    /// Lowest-height parallelepiped point that is not a sum of height-one points.
    std::optional<FppPoint> witness;
    /// Height-one lattice points of the simplex (vertices included), lexicographic by lifted point.
    std::vector<IntVector> height_one_points;
    /// Parallelepiped point -> indices into height_one_points whose lifted sum is the point (origin -> {}).
    std::map<IntVector, std::vector<std::size_t>> decomposition_table;
};

/// Integral closure test on parallelepiped points.
///
/// Points are processed by increasing height. Once every parallelepiped point below height k has a
/// decomposition, so does every cone point below height k (add vertex generators), hence a point at
/// height k decomposes iff subtracting some height-one point leaves a cone point. The first failure is
/// a certificate of non-closure; success at every height covers the whole cone.
inline IdpVerdict is_integrally_closed(const LatticeSimplex& s)
{
    const ConeFrame frame(s);
    const Integer& denom = frame.denominator();
    const std::size_t n1 = frame.size();

    std::vector<FppPoint> fpp = fpp_points(s);
    std::stable_sort(fpp.begin(), fpp.end(), [](const FppPoint& a, const FppPoint& b) { return a.height < b.height; });

    std::map<IntVector, std::size_t> fpp_by_numerators;
    std::vector<IntVector> fpp_numerators;
    for (std::size_t k = 0; k < fpp.size(); ++k) {
        IntVector num = frame.numerators(fpp[k].point);
        fpp_by_numerators.emplace(num, k);
        fpp_numerators.push_back(std::move(num));
    }

    IdpVerdict verdict;
    // height-one candidates: the vertices plus the height-one parallelepiped points
    std::vector<std::pair<IntVector, IntVector>> ones; // (lifted point, numerators)
    for (std::size_t i = 0; i < n1; ++i) {
        IntVector num(n1);
        num[i] = denom;
        ones.emplace_back(frame.lifted().column(i), std::move(num));
    }
    for (std::size_t k = 0; k < fpp.size(); ++k)
        if (fpp[k].height == 1) ones.emplace_back(fpp[k].point, fpp_numerators[k]);
    std::sort(ones.begin(), ones.end());
    std::vector<std::size_t> vertex_slot(n1);
    for (std::size_t j = 0; j < ones.size(); ++j) {
        verdict.height_one_points.push_back(ones[j].first);
        for (std::size_t i = 0; i < n1; ++i)
            if (ones[j].second[i] == denom) vertex_slot[i] = j;
    }

    std::vector<std::optional<std::vector<std::size_t>>> decomposition(fpp.size());
    IntVector diff(n1);
    for (std::size_t k = 0; k < fpp.size(); ++k) {
        const Integer& h = fpp[k].height;
        if (h == 0) {
            decomposition[k] = std::vector<std::size_t>{};
        } else if (h == 1) {
            auto it = std::lower_bound(ones.begin(), ones.end(), std::make_pair(fpp[k].point, fpp_numerators[k]));
            decomposition[k] = std::vector<std::size_t>{static_cast<std::size_t>(it - ones.begin())};
        } else {
            for (std::size_t j = 0; j < ones.size() && !decomposition[k]; ++j) {
                bool inside = true;
                for (std::size_t r = 0; r < n1 && inside; ++r) {
                    diff[r] = fpp_numerators[k][r] - ones[j].second[r];
                    inside = diff[r] >= 0;
                }
                if (!inside) continue;
                // diff = (parallelepiped part) + sum of floor(c_r) vertex generators
                std::vector<std::size_t> parts{j};
                IntVector rest(n1);
                for (std::size_t r = 0; r < n1; ++r) {
                    Integer whole = diff[r] / denom;
                    rest[r] = diff[r] - whole * denom;
                    for (Integer t = 0; t < whole; ++t) parts.push_back(vertex_slot[r]);
                }
                auto found = fpp_by_numerators.find(rest);
                if (found == fpp_by_numerators.end() || !decomposition[found->second])
                    throw InvariantViolation("lower parallelepiped point missing from decomposition table");
                const auto& lower = *decomposition[found->second];
                parts.insert(parts.end(), lower.begin(), lower.end());
                std::sort(parts.begin(), parts.end());
                decomposition[k] = std::move(parts);
            }
        }
        if (!decomposition[k]) {
            verdict.closed = false;
            verdict.witness = fpp[k];
            break;
        }
        verdict.decomposition_table.emplace(fpp[k].point, *decomposition[k]);
    }
    return verdict;
}

} // namespace refsimplex
