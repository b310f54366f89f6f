#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "linalg.hpp"
#include "weight_vector.hpp"

namespace refsimplex {

/// A full-dimensional simplex in Z^n given by an ordered list of n+1 lattice vertices.
class LatticeSimplex {
public:
    LatticeSimplex() = default;

    explicit LatticeSimplex(std::vector<IntVector> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.empty()) throw DimensionError("simplex needs at least one vertex");
        dim_ = vertices_.size() - 1;
        for (const auto& v : vertices_)
            if (v.size() != dim_) throw DimensionError("a simplex of dimension n needs n+1 vertices in Z^n");
        if (determinant(lifted_matrix()) == 0) throw PreconditionError("vertices are affinely dependent");
    }

    LatticeSimplex(std::initializer_list<std::initializer_list<long long>> vertices)
        : LatticeSimplex(convert(vertices))
    {
    }

    std::size_t dim() const { return dim_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<IntVector>& vertices() const { return vertices_; }
    const IntVector& vertex(std::size_t i) const { return vertices_[i]; }

    /// Columns (v_i, 1): the generators of the cone over the simplex at height one.
    IntMatrix lifted_matrix() const
    {
        IntMatrix a(dim_ + 1, dim_ + 1);
        for (std::size_t i = 0; i <= dim_; ++i) {
            for (std::size_t r = 0; r < dim_; ++r) a(r, i) = vertices_[i][r];
            a(dim_, i) = 1;
        }
        return a;
    }

    Integer normalized_volume() const { return abs(determinant(lifted_matrix())); }

    LatticeSimplex translated(const IntVector& offset) const
    {
        if (offset.size() != dim_) throw DimensionError("translation vector length mismatch");
        std::vector<IntVector> out = vertices_;
        for (auto& v : out)
            for (std::size_t r = 0; r < dim_; ++r) v[r] += offset[r];
        return LatticeSimplex(std::move(out));
    }

    friend bool operator==(const LatticeSimplex&, const LatticeSimplex&) = default;

private:
    static std::vector<IntVector> convert(std::initializer_list<std::initializer_list<long long>> vs)
    {
        std::vector<IntVector> out;
        for (auto v : vs) out.push_back(to_integers(v));
        return out;
    }

    std::vector<IntVector> vertices_;
    std::size_t dim_ = 0;
};

/// Facet opposite vertex `opposite`, written <normal, x> <= 1 when its hyperplane misses the origin.
struct Facet {
    std::size_t opposite = 0;
    std::optional<RationalVector> normal;
};

struct FacetDescription {
    std::vector<Facet> facets;
    bool origin_interior = false;
};

struct ReflexivityResult {
    bool reflexive = false;
    FacetDescription facets;
};

namespace detail {

inline IntMatrix minor_matrix(const LatticeSimplex& s, std::size_t skip)
{
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j <= s.dim(); ++j)
        if (j != skip) cols.push_back(s.vertex(j));
    if (cols.front().empty()) return {};
    return IntMatrix::from_columns(cols);
}

/// Barycentric coordinates of a point of R^n with respect to the vertices.
inline RationalVector barycentric(const LatticeSimplex& s, const IntVector& x)
{
    IntVector rhs = x;
    rhs.push_back(1);
    return solve_rational(s.lifted_matrix(), rhs);
}

} // namespace detail

/// |det(v_0 .. ^v_i .. v_n)| in vertex order.
inline IntVector aligned_minors(const LatticeSimplex& s)
{
    IntVector out;
    out.reserve(s.vertex_count());
    for (std::size_t i = 0; i <= s.dim(); ++i) out.push_back(abs(determinant(detail::minor_matrix(s, i))));
    return out;
}

inline bool origin_in_interior(const LatticeSimplex& s)
{
    auto beta = detail::barycentric(s, IntVector(s.dim()));
    return std::all_of(beta.begin(), beta.end(), [](const Rational& b) { return b > 0; });
}

/// Sorted absolute maximal minors. Throws if the origin lies on a facet hyperplane (some minor vanishes).
inline WeightVector weight_vector(const LatticeSimplex& s)
{
    IntVector minors = aligned_minors(s);
    for (const auto& m : minors)
        if (m == 0) throw PreconditionError("origin lies on a facet hyperplane; weights undefined");
    return WeightVector(std::move(minors));
}

inline SimplexType simplex_type(const LatticeSimplex& s)
{
    WeightVector q = weight_vector(s);
    Integer lambda = q.gcd();
    IntVector reduced;
    for (const auto& v : q.values()) reduced.push_back(v / lambda);
    return SimplexType(WeightVector(std::move(reduced)), lambda);
}

/// Sum of q_i v_i is the zero vector.
inline bool verify_weight_relation(const LatticeSimplex& s, const IntVector& q)
{
    if (q.size() != s.vertex_count()) return false;
    IntVector total(s.dim());
    for (std::size_t i = 0; i <= s.dim(); ++i)
        for (std::size_t r = 0; r < s.dim(); ++r) total[r] += q[i] * s.vertex(i)[r];
    return std::all_of(total.begin(), total.end(), [](const Integer& x) { return x == 0; });
}

inline FacetDescription facet_description(const LatticeSimplex& s)
{
    FacetDescription out;
    const std::size_t n = s.dim();
    auto beta = detail::barycentric(s, IntVector(n));
    out.origin_interior = std::all_of(beta.begin(), beta.end(), [](const Rational& b) { return b > 0; });
    for (std::size_t i = 0; i <= n; ++i) {
        Facet f{i, std::nullopt};
        // the hyperplane through the other vertices contains 0 exactly when beta_i = 0
        if (beta[i] != 0) {
            std::vector<IntVector> rows;
            for (std::size_t j = 0; j <= n; ++j)
                if (j != i) rows.push_back(s.vertex(j));
            f.normal = solve_rational(IntMatrix::from_rows(rows), IntVector(n, Integer(1)));
        }
        out.facets.push_back(std::move(f));
    }
    return out;
}

/// Reflexive: origin strictly interior and every facet normal <a_F, x> = 1 integral.
inline ReflexivityResult is_reflexive(const LatticeSimplex& s)
{
    ReflexivityResult r{false, facet_description(s)};
    if (!r.facets.origin_interior) return r;
    r.reflexive = std::all_of(r.facets.facets.begin(), r.facets.facets.end(), [](const Facet& f) {
        return f.normal && std::all_of(f.normal->begin(), f.normal->end(), [](const Rational& a) { return is_integral(a); });
    });
    return r;
}

/// The reflexive simplex of a reduced admissible weight vector. Vertex i is the image of the
/// i-th standard basis vector under Z^{n+1} -> Z^{n+1}/Zq, so vertex i carries weight q_i.
inline LatticeSimplex build_delta_q(const WeightVector& q)
{
    if (q.size() < 2) throw InvalidWeightError("need at least two weights");
    if (!satisfies_condition(q)) throw InvalidWeightError("weight vector is not reduced admissible: " + q.str());
    const std::size_t n = q.dim();
    IntMatrix u = unimodular_completion(q.values());
    std::vector<IntVector> vertices(n + 1, IntVector(n));
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t r = 0; r < n; ++r) vertices[i][r] = u(r, i);
    LatticeSimplex s(std::move(vertices));
    if (aligned_minors(s) != q.values())
        throw InvariantViolation("constructed simplex does not reproduce weights " + q.str());
    if (!is_reflexive(s).reflexive) throw InvariantViolation("constructed simplex is not reflexive for " + q.str());
    return s;
}

/// P *_i Q: P in the first n coordinates, Q translated so that w_i sits at the origin in the last m.
/// The result is shifted by (0, w_i), putting its interior point at the origin; vertex order is
/// v_0..v_n followed by the w_k with k != i.
inline LatticeSimplex free_sum(const LatticeSimplex& p, const LatticeSimplex& q, std::size_t i)
{
    if (!origin_in_interior(p)) throw PreconditionError("free sum needs the origin in the interior of the first summand");
    if (i > q.dim()) throw PreconditionError("free sum vertex index out of range");
    const std::size_t n = p.dim();
    const std::size_t m = q.dim();
    std::vector<IntVector> vertices;
    for (const auto& v : p.vertices()) {
        IntVector x(n + m);
        std::copy(v.begin(), v.end(), x.begin());
        std::copy(q.vertex(i).begin(), q.vertex(i).end(), x.begin() + static_cast<std::ptrdiff_t>(n));
        vertices.push_back(std::move(x));
    }
    for (std::size_t k = 0; k <= m; ++k) {
        if (k == i) continue;
        IntVector x(n + m);
        std::copy(q.vertex(k).begin(), q.vertex(k).end(), x.begin() + static_cast<std::ptrdiff_t>(n));
        vertices.push_back(std::move(x));
    }
    return LatticeSimplex(std::move(vertices));
}

} // namespace refsimplex
