#pragma once

#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "simplex.hpp"
#include "weight_vector.hpp"

namespace refsimplex::family {

// Integrally closed reflexive d-simplices without a weak Lefschetz element, d >= 3.

inline void require_dim(std::size_t d)
{
    if (d < 3) throw PreconditionError("the obstruction family needs d >= 3");
}

/// Q = (1, d, d+1, ..., d+1) with d-1 copies of d+1.
inline WeightVector weights(std::size_t d)
{
    require_dim(d);
    IntVector q{1, Integer(d)};
    for (std::size_t k = 0; k + 1 < d; ++k) q.push_back(Integer(d + 1));
    return WeightVector(std::move(q));
}

/// conv(e_1, ..., e_d, (-d, -d-1, ..., -d-1)).
inline LatticeSimplex simplex(std::size_t d)
{
    require_dim(d);
    std::vector<IntVector> vertices;
    for (std::size_t k = 0; k < d; ++k) {
        IntVector e(d);
        e[k] = 1;
        vertices.push_back(std::move(e));
    }
    IntVector apex(d, -Integer(d + 1));
    apex[0] = -Integer(d);
    vertices.push_back(std::move(apex));
    return LatticeSimplex(std::move(vertices));
}

/// Lifted parallelepiped points of simplex(d) at height r, 1 <= r <= d-1, in the order v_{0,r}, ..., v_{d+1,r}:
/// v_{i,r} = (-i, ..., -i) for i <= r and (-(i-2), -(i-1), ..., -(i-1)) for i > r.
inline std::vector<IntVector> listing(std::size_t d, std::size_t r)
{
    require_dim(d);
    if (r < 1 || r + 1 > d) throw PreconditionError("listing height must lie in 1..d-1");
    std::vector<IntVector> out;
    for (std::size_t i = 0; i <= d + 1; ++i) {
        IntVector v(d + 1);
        if (i <= r) {
            for (std::size_t k = 0; k < d; ++k) v[k] = -Integer(i);
        } else {
            v[0] = -Integer(i) + 2;
            for (std::size_t k = 1; k < d; ++k) v[k] = -Integer(i) + 1;
        }
        v[d] = Integer(r);
        out.push_back(std::move(v));
    }
    return out;
}

/// The single parallelepiped point at height d: (-d+1, -d, ..., -d, d).
inline IntVector top_point(std::size_t d)
{
    require_dim(d);
    IntVector v(d + 1, -Integer(d));
    v[0] = -Integer(d) + 1;
    v[d] = Integer(d);
    return v;
}

} // namespace refsimplex::family
