#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ehrhart.hpp"
#include "errors.hpp"
#include "idp.hpp"
#include "integer.hpp"
#include "lefschetz.hpp"
#include "simplex.hpp"
#include "weight_vector.hpp"
#include "weights.hpp"

namespace refsimplex::io {

using Json = nlohmann::ordered_json;

/// Thrown for malformed JSON input documents.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const Integer kMaxSafeJsonInteger = (Integer(1) << 53) - 1;

/// JSON number when |x| <= 2^53 - 1, decimal string otherwise.
inline Json integer(const Integer& x)
{
    if (abs(x) <= kMaxSafeJsonInteger) return Json(x.convert_to<std::int64_t>());
    return Json(x.str());
}

inline Json integers(const IntVector& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(integer(x));
    return out;
}

inline Integer parse_integer(const Json& j)
{
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
            throw FormatError("not an integer string: " + s);
        return Integer(s);
    }
    throw FormatError("expected an integer, got " + j.dump());
}

inline IntVector parse_integers(const Json& j)
{
    if (!j.is_array()) throw FormatError("expected an array of integers");
    IntVector out;
    for (const auto& x : j) out.push_back(parse_integer(x));
    return out;
}

inline Json to_json(const LatticeSimplex& s)
{
    Json vertices = Json::array();
    for (const auto& v : s.vertices()) vertices.push_back(integers(v));
    return Json{{"dim", s.dim()}, {"vertices", std::move(vertices)}};
}

inline LatticeSimplex simplex_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("vertices")) throw FormatError("simplex document needs a \"vertices\" array");
    std::vector<IntVector> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(parse_integers(v));
    LatticeSimplex s(std::move(vertices));
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != s.dim()) throw FormatError("\"dim\" disagrees with the vertex list");
    return s;
}

inline Json to_json(const HStarVector& h) { return integers(h.coeffs()); }

inline Json to_json(const SimplexType& t) { return Json{{"q_red", integers(t.q_red.values())}, {"lambda", integer(t.lambda)}}; }

inline SimplexType type_from_json(const Json& j)
{
    return SimplexType(WeightVector(parse_integers(j.at("q_red"))), parse_integer(j.at("lambda")));
}

inline Json to_json(const TypeDecomposition& t)
{
    return Json{{"p", integers(t.p.values())}, {"q", integers(t.q.values())}, {"i", t.i}, {"d", integer(t.d)}};
}

inline Json to_json(const IdpVerdict& v)
{
    return Json{{"closed", v.closed}, {"witness", v.witness ? integers(v.witness->point) : Json(nullptr)}};
}

inline Json to_json(const WlVerdict& v)
{
    Json j{{"verdict", to_string(v.kind)},
           {"degree", v.degree ? Json(*v.degree) : Json(nullptr)},
           {"witness", v.witness ? Json(*v.witness) : Json(nullptr)},
           {"prime", v.prime},
           {"trials", v.trials}};
    if (!v.certificate.empty()) j["certificate"] = v.certificate;
    j["target_ranks"] = v.target_ranks;
    j["structural_ranks"] = v.structural_ranks;
    j["observed_ranks"] = v.observed_ranks;
    // Schwartz-Zippel: a nonzero minor of degree k vanishes at a random point with probability <= k / prime
    std::size_t max_degree = 0;
    for (auto r : v.target_ranks) max_degree = std::max(max_degree, r);
    j["false_negative_bound_per_trial"] = static_cast<double>(max_degree) / static_cast<double>(v.prime);
    return j;
}

} // namespace refsimplex::io
