#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ehrhart.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "idp.hpp"
#include "lefschetz.hpp"
#include "serialize.hpp"
#include "simplex.hpp"
#include "weights.hpp"

namespace refsimplex {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { jsonl, csv };

struct SearchConfig {
    std::size_t dim = 2;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    bool require_idp = false;
    bool skip_decomposable = false;
    bool skip_wl = false;
    std::string output_path;
    OutputFormat format = OutputFormat::jsonl;
    std::size_t workers = 1;
    Integer max_volume = kDefaultMaxVolume;
    std::size_t wl_trials = 2;
    /// Record wall-clock time per candidate. Off by default so output is byte-reproducible.
    bool timings = false;
    /// Upper bound on candidates drawn before giving up; 0 means 100 * count.
    std::size_t max_candidates = 0;

    void validate() const
    {
        if (dim < 1) throw PreconditionError("search dimension must be at least 1");
        if (count < 1) throw PreconditionError("search count must be at least 1");
        if (workers < 1) throw PreconditionError("need at least one worker");
        if (wl_trials < 1) throw PreconditionError("need at least one WL trial");
    }
};

struct SearchRecord {
    std::size_t candidate = 0;
    std::size_t dim = 0;
    WeightVector q_red;
    Integer lambda = 1;
    std::vector<IntVector> vertices;
    HStarVector hstar;
    bool reflexive = false;
    bool idp = false;
    bool unimodal = false;
    /// exists | not_exists | undetermined | skipped
    std::string wl = "skipped";
    bool type_decomposable = false;
    std::uint64_t seed = 0;
    std::optional<double> elapsed_ms;

    /// Cross-field consistency; throws InvariantViolation with the offending weights.
    void check() const
    {
        if (reflexive && !is_palindromic(hstar))
            throw InvariantViolation("reflexive record with non-palindromic h* for weights " + q_red.str());
        if (wl == "exists" && !unimodal)
            throw InvariantViolation("weak Lefschetz element but non-unimodal h* for weights " + q_red.str());
        if (vertices.size() != dim + 1 || hstar.size() != dim + 1)
            throw InvariantViolation("record shape does not match its dimension for weights " + q_red.str());
    }
};

struct SearchSummary {
    std::size_t candidates = 0;
    std::size_t records = 0;
    std::size_t discarded_non_idp = 0;
    std::size_t discarded_decomposable = 0;
    std::size_t unimodal = 0;
    std::size_t idp = 0;
    std::size_t wl_exists = 0;
    std::size_t wl_not_exists = 0;
    std::size_t wl_undetermined = 0;
    bool exhausted = false;
    std::vector<SearchRecord> non_unimodal;

    double unimodal_fraction() const { return records ? static_cast<double>(unimodal) / static_cast<double>(records) : 0.0; }
};

/// splitmix64 finalizer.
inline std::uint64_t scramble(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t candidate_seed(std::uint64_t seed, std::size_t index) { return scramble(seed ^ scramble(index)); }

namespace detail {

enum class Outcome { record, non_idp, decomposable };

struct CandidateResult {
    Outcome outcome = Outcome::record;
    std::optional<SearchRecord> record;
};

inline CandidateResult evaluate_candidate(const SearchConfig& cfg, std::size_t index)
{
    auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = candidate_seed(cfg.seed, index);
    WeightVector q = sample_random_weights(cfg.dim, 1, seed, cfg.max_volume).front();

    bool decomposable = !type_decompositions(SimplexType(q, 1)).empty();
    if (cfg.skip_decomposable && decomposable) return {Outcome::decomposable, std::nullopt};

    LatticeSimplex s = build_delta_q(q);
    if (!is_reflexive(s).reflexive) throw InvariantViolation("constructed simplex is not reflexive for weights " + q.str());
    bool closed = is_integrally_closed(s).closed;
    if (cfg.require_idp && !closed) return {Outcome::non_idp, std::nullopt};

    SearchRecord r;
    r.candidate = index;
    r.dim = cfg.dim;
    SimplexType t = simplex_type(s);
    r.q_red = t.q_red;
    r.lambda = t.lambda;
    if (!(t.q_red == q) || t.lambda != 1) throw InvariantViolation("type round trip failed for weights " + q.str());
    r.vertices = s.vertices();
    r.hstar = hstar(s);
    r.reflexive = true;
    r.idp = closed;
    r.unimodal = is_unimodal(r.hstar);
    r.type_decomposable = decomposable;
    r.seed = seed;
    if (!cfg.skip_wl) r.wl = to_string(weak_lefschetz_verdict(s, seed, cfg.wl_trials).kind);
    if (cfg.timings)
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.check();
    return {Outcome::record, std::move(r)};
}

inline std::string join(const IntVector& xs, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? std::string(1, sep) : "") + xs[i].str();
    return out;
}

} // namespace detail

inline io::Json to_json(const SearchRecord& r)
{
    io::Json vertices = io::Json::array();
    for (const auto& v : r.vertices) vertices.push_back(io::integers(v));
    return io::Json{{"dim", r.dim},
                    {"q_red", io::integers(r.q_red.values())},
                    {"lambda", io::integer(r.lambda)},
                    {"vertices", std::move(vertices)},
                    {"hstar", io::to_json(r.hstar)},
                    {"reflexive", r.reflexive},
                    {"idp", r.idp},
                    {"unimodal", r.unimodal},
                    {"wl", r.wl},
                    {"type_decomposable", r.type_decomposable},
                    {"seed", r.seed},
                    {"elapsed_ms", r.elapsed_ms ? io::Json(*r.elapsed_ms) : io::Json(nullptr)}};
}

/// Fixed CSV column order; list-valued fields are space separated, vertices separated by ';'.
inline constexpr const char* kCsvHeader = "dim,q_red,lambda,vertices,hstar,reflexive,idp,unimodal,wl,type_decomposable,seed,elapsed_ms";

inline std::string to_csv_row(const SearchRecord& r)
{
    std::string vertices;
    for (std::size_t i = 0; i < r.vertices.size(); ++i) vertices += (i ? ";" : "") + detail::join(r.vertices[i], ' ');
    std::ostringstream os;
    os << r.dim << ',' << detail::join(r.q_red.values(), ' ') << ',' << r.lambda.str() << ',' << vertices << ','
       << detail::join(r.hstar.coeffs(), ' ') << ',' << r.reflexive << ',' << r.idp << ',' << r.unimodal << ',' << r.wl << ','
       << r.type_decomposable << ',' << r.seed << ',';
    if (r.elapsed_ms) os << *r.elapsed_ms;
    return os.str();
}

inline io::Json to_json(const SearchSummary& s)
{
    io::Json hits = io::Json::array();
    for (const auto& r : s.non_unimodal) hits.push_back(to_json(r));
    return io::Json{{"non_unimodal", std::move(hits)},
                    {"records", s.records},
                    {"candidates", s.candidates},
                    {"discarded_non_idp", s.discarded_non_idp},
                    {"discarded_decomposable", s.discarded_decomposable},
                    {"idp", s.idp},
                    {"unimodal", s.unimodal},
                    {"unimodal_fraction", s.unimodal_fraction()},
                    {"wl", {{"exists", s.wl_exists}, {"not_exists", s.wl_not_exists}, {"undetermined", s.wl_undetermined}}},
                    {"exhausted", s.exhausted}};
}

/// Evaluates candidates in index order until `count` records are accepted. Workers evaluate disjoint
/// indices of each batch; acceptance and output follow candidate index, so the result equals a serial run.
inline SearchSummary run_search(const SearchConfig& cfg, std::vector<SearchRecord>* collected = nullptr)
{
    cfg.validate();
    std::ofstream out;
    if (!cfg.output_path.empty()) {
        out.open(cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open output file: " + cfg.output_path);
        if (cfg.format == OutputFormat::csv) out << kCsvHeader << '\n';
    }

    const std::size_t limit = cfg.max_candidates ? cfg.max_candidates : 100 * cfg.count;
    const std::size_t batch = std::max<std::size_t>(cfg.workers * 4, 16);
    SearchSummary summary;
    std::size_t next_index = 0;

    while (summary.records < cfg.count && next_index < limit) {
        const std::size_t begin = next_index;
        const std::size_t end = std::min(limit, begin + batch);
        std::vector<detail::CandidateResult> results(end - begin);
        std::vector<std::exception_ptr> errors(end - begin);
        std::atomic<std::size_t> cursor{begin};
        auto work = [&] {
            for (std::size_t k; (k = cursor.fetch_add(1)) < end;) {
                try {
                    results[k - begin] = detail::evaluate_candidate(cfg, k);
                } catch (...) {
                    errors[k - begin] = std::current_exception();
                }
            }
        };
        if (cfg.workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
        }

        for (std::size_t k = begin; k < end && summary.records < cfg.count; ++k) {
            next_index = k + 1;
            if (errors[k - begin]) std::rethrow_exception(errors[k - begin]);
            auto& res = results[k - begin];
            ++summary.candidates;
            if (res.outcome == detail::Outcome::non_idp) {
                ++summary.discarded_non_idp;
                continue;
            }
            if (res.outcome == detail::Outcome::decomposable) {
                ++summary.discarded_decomposable;
                continue;
            }
            const SearchRecord& r = *res.record;
            ++summary.records;
            summary.idp += r.idp;
            summary.unimodal += r.unimodal;
            summary.wl_exists += r.wl == "exists";
            summary.wl_not_exists += r.wl == "not_exists";
            summary.wl_undetermined += r.wl == "undetermined";
            if (!r.unimodal) summary.non_unimodal.push_back(r);
            if (out.is_open()) {
                if (cfg.format == OutputFormat::jsonl)
                    out << to_json(r).dump() << '\n';
                else
                    out << to_csv_row(r) << '\n';
                if (!out) throw IoError("write failed: " + cfg.output_path);
            }
            if (collected) collected->push_back(r);
        }
    }
    summary.exhausted = summary.records < cfg.count;
    return summary;
}

struct ClaimResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct FamilyReport {
    std::size_t d = 0;
    std::vector<ClaimResult> claims;

    bool passed() const
    {
        return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.passed; });
    }
};

inline io::Json to_json(const FamilyReport& r)
{
    io::Json claims = io::Json::array();
    for (const auto& c : r.claims) claims.push_back({{"claim", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return io::Json{{"d", r.d}, {"passed", r.passed()}, {"claims", std::move(claims)}};
}

/// Checks the five claims about Q = (1, d, d+1, ..., d+1): reflexive, |Pi| = d(d+1),
/// h* = (1, d+2, ..., d+2, 1), integrally closed, and no weak Lefschetz element (degree 1 -> 2).
inline FamilyReport verify_family(std::size_t d, std::uint64_t seed = 0, std::size_t trials = 2)
{
    family::require_dim(d);
    FamilyReport report;
    report.d = d;
    const WeightVector q = family::weights(d);
    const LatticeSimplex s = family::simplex(d);

    {
        bool reflexive = is_reflexive(s).reflexive;
        SimplexType t = simplex_type(s);
        bool typed = t.q_red == q && t.lambda == 1;
        report.claims.push_back({"reflexive", reflexive && typed,
                                 "is_reflexive=" + std::to_string(reflexive) + ", type=" + t.str() + ", expected weights " + q.str()});
    }
    {
        std::size_t count = fpp_points(s).size();
        report.claims.push_back({"parallelepiped_count", count == d * (d + 1),
                                 std::to_string(count) + " points, expected " + std::to_string(d * (d + 1))});
    }
    {
        IntVector expected(d + 1, Integer(d + 2));
        expected.front() = 1;
        expected.back() = 1;
        HStarVector h = hstar(s);
        HStarVector rebuilt = hstar(build_delta_q(q));
        report.claims.push_back({"hstar", h == HStarVector(expected) && rebuilt == h,
                                 "h*=" + h.str() + ", via weights " + rebuilt.str() + ", expected " + HStarVector(expected).str()});
    }
    {
        IdpVerdict v = is_integrally_closed(s);
        report.claims.push_back({"integrally_closed", v.closed,
                                 v.closed ? "every parallelepiped point decomposes"
                                          : "witness " + detail::join(v.witness->point, ' ')});
    }
    {
        WlVerdict v = weak_lefschetz_verdict(s, seed, trials);
        bool ok = v.kind == WlKind::not_exists && v.degree == 1u && v.certificate == "structural";
        std::string detail = to_string(v.kind);
        if (v.degree)
            detail += " at degree " + std::to_string(*v.degree) + " (structural rank " + std::to_string(v.structural_ranks[*v.degree]) +
                      " < " + std::to_string(v.target_ranks[*v.degree]) + ")";
        report.claims.push_back({"no_weak_lefschetz", ok, detail});
    }
    return report;
}

} // namespace refsimplex
