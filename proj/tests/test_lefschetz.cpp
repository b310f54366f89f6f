#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "oracles.hpp"

using namespace refsimplex;

namespace {

/// The degree 1 -> 2 matrix of the obstruction family, in the v_{i,r} ordering:
/// rows 0..2 are (a0), (a1 a0), (. a1 . ...); row r >= 3 has a_r, a_{r-1} in columns 0, 1 and a1, a0 in r-1, r.
MultiplicationPattern expected_family_pattern(std::size_t d)
{
    const std::size_t n = d + 2;
    MultiplicationPattern m(1, n, n);
    m.at(0, 0) = {0};
    m.at(1, 0) = {1};
    m.at(1, 1) = {0};
    m.at(2, 1) = {1};
    for (std::size_t r = 3; r < n; ++r) {
        m.at(r, 0) = {r};
        m.at(r, 1) = {r - 1};
        m.at(r, r - 1) = {1};
        m.at(r, r) = {0};
    }
    return m;
}

/// Generic rank by the Leibniz oracle: largest k with a nonzero k x k minor polynomial.
std::size_t leibniz_rank(const MultiplicationPattern& m)
{
    for (std::size_t k = std::min(m.rows, m.cols); k > 0; --k) {
        std::vector<bool> rsel(m.rows, false), csel(m.cols, false);
        std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < m.rows; ++i)
                if (rsel[i]) rows.push_back(i);
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                std::vector<std::size_t> cols;
                for (std::size_t i = 0; i < m.cols; ++i)
                    if (csel[i]) cols.push_back(i);
                if (!oracle::leibniz_det(m, rows, cols).empty()) return k;
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

std::vector<LatticeSimplex> reflexive_corpus(std::size_t max_dim)
{
    std::vector<LatticeSimplex> out;
    for (std::size_t d = 1; d <= max_dim; ++d)
        for (const auto& w : enumerate_reduced_weights(d)) out.push_back(build_delta_q(w));
    return out;
}

} // namespace

TEST_CASE("graded basis examples", "[lefschetz]")
{
    for (std::size_t d = 3; d <= 6; ++d) {
        auto basis = graded_basis(family::simplex(d));
        CHECK(basis.family_order);
        std::vector<std::size_t> expected(d + 1, d + 2);
        expected.front() = expected.back() = 1;
        CHECK(basis.sizes() == expected);
        for (std::size_t r = 1; r < d; ++r) {
            auto listed = family::listing(d, r);
            for (std::size_t k = 0; k < listed.size(); ++k) CHECK(basis.by_height[r][k].point == listed[k]);
        }
    }
    auto std2 = graded_basis(oracle::standard_simplex(2));
    CHECK_FALSE(std2.family_order);
    CHECK(std2.sizes() == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("multiplication pattern of the obstruction family", "[lefschetz]")
{
    for (std::size_t d = 3; d <= 6; ++d) {
        auto patterns = multiplication_patterns(family::simplex(d));
        REQUIRE(patterns.size() == d);
        const auto& m = patterns[1];
        auto expected = expected_family_pattern(d);
        REQUIRE(m.rows == expected.rows);
        REQUIRE(m.cols == expected.cols);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c) {
                INFO("d=" << d << " entry (" << r << "," << c << ")");
                CHECK(m.at(r, c) == expected.at(r, c));
            }
        // lower triangular with the (2,2) diagonal entry missing
        CHECK(m.at(2, 2).empty());
        CHECK(structural_rank(m) == d + 1);
    }
}

TEST_CASE("multiplication patterns of small simplices", "[lefschetz]")
{
    auto p = multiplication_patterns(oracle::standard_simplex(2));
    REQUIRE(p.size() == 2);
    for (const auto& m : p) {
        CHECK(m.rows == 1);
        CHECK(m.cols == 1);
        CHECK(m.at(0, 0) == std::vector<std::size_t>{0});
    }
    auto seg = multiplication_patterns(LatticeSimplex{{1}, {-1}});
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].at(0, 0) == std::vector<std::size_t>{0});
}

TEST_CASE("rank computations examples", "[lefschetz]")
{
    // [[a0, a0], [a0, a0]]: full structural rank, generic rank one
    MultiplicationPattern twin(0, 2, 2);
    for (auto& e : twin.entries) e = {0};
    CHECK(structural_rank(twin) == 2);
    CHECK(symbolic_generic_rank(twin) == 1);
    CHECK(leibniz_rank(twin) == 1);
    CHECK(generic_rank_lower_bound(twin, 3, 4) == 1);

    // [[a0, a1], [a1, a0]]: determinant a0^2 - a1^2 is a nonzero polynomial
    MultiplicationPattern swap(0, 2, 2);
    swap.at(0, 0) = swap.at(1, 1) = {0};
    swap.at(0, 1) = swap.at(1, 0) = {1};
    CHECK(symbolic_generic_rank(swap) == 2);
    CHECK(generic_rank_lower_bound(swap, 3, 4) == 2);

    auto m = multiplication_patterns(family::simplex(3))[1];
    CHECK(structural_rank(m) == 4);
    CHECK(symbolic_generic_rank(m) == 4);
    CHECK(leibniz_rank(m) == 4);
    CHECK(generic_rank_lower_bound(m, 11, 3) == 4);
    CHECK_THROWS_AS(generic_rank_lower_bound(m, 0, 0), PreconditionError);
}

TEST_CASE("weak Lefschetz verdict examples", "[lefschetz]")
{
    for (std::size_t d = 3; d <= 5; ++d) {
        auto v = weak_lefschetz_verdict(family::simplex(d), 7, 2);
        CHECK(v.kind == WlKind::not_exists);
        CHECK(v.degree == 1u);
        CHECK(v.certificate == "structural");
        CHECK(v.structural_ranks[1] == d + 1);
        CHECK(v.target_ranks[1] == d + 2);
    }
    for (const auto& s : {oracle::standard_simplex(2), LatticeSimplex{{1}, {-1}}, oracle::standard_simplex(4)}) {
        auto v = weak_lefschetz_verdict(s, 7, 2);
        CHECK(v.kind == WlKind::exists);
        REQUIRE(v.witness);
        CHECK(v.observed_ranks == v.target_ranks);
    }
    CHECK_THROWS_AS(weak_lefschetz_verdict(oracle::reeve(2), 0, 1), PreconditionError);
    CHECK_THROWS_AS(weak_lefschetz_verdict(family::simplex(3), 0, 0), PreconditionError);
}

TEST_CASE("pattern well-formedness and rank ordering on reflexive simplices", "[lefschetz][property]")
{
    for (const auto& s : reflexive_corpus(3)) {
        auto basis = graded_basis(s);
        auto patterns = multiplication_patterns(s, basis);
        auto h = hstar(s);
        REQUIRE(patterns.size() == s.dim());
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            const auto& m = patterns[i];
            CHECK(Integer(m.rows) == h[i + 1]);
            CHECK(Integer(m.cols) == h[i]);
            // the product of a basis monomial with x^{p_j} is a single monomial, so each (col, j) hits at most one row
            for (std::size_t c = 0; c < m.cols; ++c) {
                std::vector<int> hits(basis.by_height[1].size(), 0);
                for (std::size_t r = 0; r < m.rows; ++r)
                    for (auto j : m.at(r, c)) {
                        REQUIRE(j < hits.size());
                        ++hits[j];
                    }
                for (int x : hits) CHECK(x <= 1);
            }
            std::size_t structural = structural_rank(m);
            std::size_t generic = generic_rank_lower_bound(m, 5, 2);
            CHECK(generic <= structural);
            if (m.rows <= 4 && m.cols <= 4) {
                CHECK(symbolic_generic_rank(m) == leibniz_rank(m));
                CHECK(generic <= symbolic_generic_rank(m));
            }
        }
        auto v = weak_lefschetz_verdict(s, 13, 2);
        if (v.kind == WlKind::exists) CHECK(is_unimodal(h));
        for (std::size_t i = 0; i < v.observed_ranks.size(); ++i) CHECK(v.observed_ranks[i] <= v.structural_ranks[i]);
    }
}

TEST_CASE("verdicts are deterministic in the seed", "[lefschetz][property]")
{
    for (const auto& s : reflexive_corpus(3)) {
        auto a = weak_lefschetz_verdict(s, 99, 2), b = weak_lefschetz_verdict(s, 99, 2);
        CHECK(a.kind == b.kind);
        CHECK(a.witness == b.witness);
        CHECK(a.observed_ranks == b.observed_ranks);
    }
}
