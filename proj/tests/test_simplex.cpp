#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace refsimplex;

namespace {

/// Random full-dimensional simplex with small coordinates and the origin strictly inside.
LatticeSimplex random_centered_simplex(std::mt19937_64& rng, std::size_t n, int spread)
{
    std::uniform_int_distribution<int> dist(-spread, spread);
    for (;;) {
        std::vector<IntVector> vs(n + 1, IntVector(n));
        for (auto& v : vs)
            for (auto& x : v) x = dist(rng);
        IntMatrix lifted(n + 1, n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t r = 0; r < n; ++r) lifted(r, i) = vs[i][r];
            lifted(n, i) = 1;
        }
        if (determinant(lifted) == 0) continue;
        LatticeSimplex s(vs);
        if (origin_in_interior(s)) return s;
    }
}

std::vector<WeightVector> corpus(std::size_t max_dim)
{
    std::vector<WeightVector> all;
    for (std::size_t d = 1; d <= max_dim; ++d)
        for (auto& w : enumerate_reduced_weights(d)) all.push_back(w);
    return all;
}

} // namespace

TEST_CASE("weight_vector examples", "[simplex]")
{
    for (std::size_t n = 1; n <= 5; ++n)
        CHECK(weight_vector(oracle::standard_simplex(n)) == WeightVector(IntVector(n + 1, Integer(1))));

    LatticeSimplex s{{1, 0}, {0, 1}, {-2, -3}};
    // hand-computed 2x2 minors: det(e2, w) = 2, det(e1, w) = -3, det(e1, e2) = 1
    CHECK(aligned_minors(s) == to_integers({2, 3, 1}));
    CHECK(weight_vector(s) == WeightVector{1, 2, 3});

    CHECK(weight_vector(family::simplex(3)) == WeightVector{1, 3, 4, 4});
    CHECK_THROWS_AS(weight_vector(oracle::reeve(2)), PreconditionError);
}

TEST_CASE("simplex_type examples", "[simplex]")
{
    CHECK(simplex_type(oracle::standard_simplex(4)) == SimplexType(WeightVector{1, 1, 1, 1, 1}, 1));
    auto d123 = build_delta_q(WeightVector{1, 2, 3});
    CHECK(simplex_type(free_sum(d123, d123, 1)) == SimplexType(WeightVector{1, 2, 3, 3, 9}, 2));
    CHECK(simplex_type(LatticeSimplex{{2}, {-2}}) == SimplexType(WeightVector{1, 1}, 2));
}

TEST_CASE("build_delta_q examples", "[simplex]")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto s = build_delta_q(WeightVector(IntVector(n + 1, Integer(1))));
        CHECK(oracle::unimodularly_equivalent(s, oracle::standard_simplex(n)));
        CHECK(weight_vector(s) == WeightVector(IntVector(n + 1, Integer(1))));
    }

    auto s112 = build_delta_q(WeightVector{1, 1, 2});
    CHECK(s112.normalized_volume() == 4);
    CHECK(is_reflexive(s112).reflexive);
    // h* from a direct scan of the parallelepiped
    IntVector by_height(3);
    for (const auto& p : oracle::parallelepiped_by_scan(s112)) ++by_height[static_cast<std::size_t>(p.back())];
    CHECK(by_height == to_integers({1, 2, 1}));

    auto s1344 = build_delta_q(WeightVector{1, 3, 4, 4});
    CHECK(oracle::unimodularly_equivalent(s1344, family::simplex(3)));

    CHECK_THROWS_AS(build_delta_q(WeightVector{1, 1, 3}), InvalidWeightError);
    CHECK_THROWS_AS(build_delta_q(WeightVector{2, 2}), InvalidWeightError);
}

TEST_CASE("is_reflexive examples", "[simplex]")
{
    CHECK(is_reflexive(oracle::standard_simplex(2)).reflexive);

    auto r = is_reflexive(LatticeSimplex{{1, 0}, {0, 1}, {-2, -3}});
    CHECK(r.reflexive);
    REQUIRE(r.facets.facets.size() == 3);
    // facet opposite vertex i passes through the other two
    CHECK(*r.facets.facets[0].normal == RationalVector{-2, 1});
    CHECK(*r.facets.facets[1].normal == RationalVector{1, -1});
    CHECK(*r.facets.facets[2].normal == RationalVector{1, 1});

    auto reeve = is_reflexive(oracle::reeve(2));
    CHECK_FALSE(reeve.reflexive);
    CHECK_FALSE(reeve.facets.origin_interior);

    // origin interior but a facet normal is fractional
    CHECK_FALSE(is_reflexive(LatticeSimplex{{2}, {-2}}).reflexive);
}

TEST_CASE("verify_weight_relation examples", "[simplex]")
{
    CHECK(verify_weight_relation(oracle::standard_simplex(3), to_integers({1, 1, 1, 1})));
    LatticeSimplex s{{1, 0}, {0, 1}, {-2, -3}};
    CHECK(verify_weight_relation(s, to_integers({2, 3, 1})));
    CHECK_FALSE(verify_weight_relation(s, to_integers({2, 3, 2})));
    CHECK_FALSE(verify_weight_relation(oracle::standard_simplex(3), to_integers({1, 1, 2, 1})));
}

TEST_CASE("free_sum examples", "[simplex]")
{
    LatticeSimplex p{{1}, {-1}};
    LatticeSimplex q{{-1}, {1}}; // w_0 = -1
    auto s = free_sum(p, q, 0);
    // conv{(-1,0), (1,0), (0,2)} shifted by (0, w_0) so that the interior point is the origin
    LatticeSimplex expected = LatticeSimplex{{1, 0}, {-1, 0}, {0, 2}}.translated(to_integers({0, -1}));
    CHECK(s == expected);
    CHECK(origin_in_interior(s));
    IntVector by_height(3);
    for (const auto& pt : oracle::parallelepiped_by_scan(s)) ++by_height[static_cast<std::size_t>(pt.back())];
    CHECK(by_height == to_integers({1, 2, 1}));

    auto d123 = build_delta_q(WeightVector{1, 2, 3});
    auto fs = free_sum(d123, d123, 1);
    CHECK(fs.dim() == 4);
    CHECK(simplex_type(fs) == SimplexType(WeightVector{1, 2, 3, 3, 9}, 2));

    CHECK_THROWS_AS(free_sum(oracle::reeve(2), p, 0), PreconditionError);
    CHECK_THROWS_AS(free_sum(p, q, 2), PreconditionError);
}

TEST_CASE("free sum dimension and composed minors", "[simplex][property]")
{
    auto all = corpus(3);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        const auto& p = all[rng() % all.size()];
        const auto& q = all[rng() % all.size()];
        auto sp = build_delta_q(p), sq = build_delta_q(q);
        for (std::size_t i = 0; i <= q.dim(); ++i) {
            auto s = free_sum(sp, sq, i);
            CHECK(s.dim() == p.dim() + q.dim());
            // aligned minors follow the composition order (q_i p_0, ..., q_i p_n, s q_k for k != i)
            IntVector expected;
            for (const auto& pj : p.values()) expected.push_back(q[i] * pj);
            for (std::size_t k = 0; k <= q.dim(); ++k)
                if (k != i) expected.push_back(p.sum() * q[k]);
            CHECK(aligned_minors(s) == expected);
        }
    }
}

TEST_CASE("Delta_Q round trip and volume for every reduced weight up to dimension 4", "[simplex][property]")
{
    for (const auto& q : corpus(4)) {
        auto s = build_delta_q(q);
        auto t = simplex_type(s);
        CHECK(t.q_red == q);
        CHECK(t.lambda == 1);
        CHECK(s.normalized_volume() == q.sum());
        Integer minor_sum = 0;
        for (const auto& m : aligned_minors(s)) minor_sum += m;
        CHECK(minor_sum == s.normalized_volume());
        CHECK(verify_weight_relation(s, aligned_minors(s)));
        CHECK(is_reflexive(s).reflexive);
    }
}

TEST_CASE("weight relation and volume identity on random centered simplices", "[simplex][property]")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        auto s = random_centered_simplex(rng, 1 + rng() % 4, 4);
        auto minors = aligned_minors(s);
        CHECK(verify_weight_relation(s, minors));
        Integer total = 0;
        for (const auto& m : minors) total += m;
        CHECK(total == s.normalized_volume());
    }
}

TEST_CASE("reflexive iff palindromic h*, on random centered simplices", "[simplex][property]")
{
    std::mt19937_64 rng(29);
    int reflexive = 0, other = 0;
    for (int t = 0; t < 300; ++t) {
        auto s = random_centered_simplex(rng, 1 + rng() % 3, 3);
        bool r = is_reflexive(s).reflexive;
        CHECK(r == is_palindromic(hstar(s)));
        (r ? reflexive : other)++;
    }
    // both directions actually exercised
    CHECK(reflexive > 10);
    CHECK(other > 10);
}

TEST_CASE("free sums of reflexive simplices are reflexive", "[simplex][property]")
{
    auto all = corpus(3);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        auto sp = build_delta_q(all[rng() % all.size()]);
        auto sq = build_delta_q(all[rng() % all.size()]);
        for (std::size_t i = 0; i <= sq.dim(); ++i) CHECK(is_reflexive(free_sum(sp, sq, i)).reflexive);
    }
}
