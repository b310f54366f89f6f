// Command-line front end for the reflexive simplex toolkit.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <refsimplex/refsimplex.hpp>

namespace {

using namespace refsimplex;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitFamily = 3;

IntVector parse_list(const std::string& text)
{
    IntVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("-0123456789") != std::string::npos)
            throw io::FormatError("not an integer list: " + text);
        out.emplace_back(item);
    }
    if (out.empty()) throw io::FormatError("empty integer list");
    return out;
}

LatticeSimplex read_simplex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw io::FormatError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return io::simplex_from_json(j);
}

/// Either --weights (builds Delta_Q) or --vertices-file.
struct SimplexSource {
    std::string weights;
    std::string vertices_file;

    void attach(CLI::App* app)
    {
        auto* w = app->add_option("--weights", weights, "reduced admissible weights q0,q1,...");
        auto* f = app->add_option("--vertices-file", vertices_file, "JSON file {\"dim\": n, \"vertices\": [[...],...]}");
        w->excludes(f);
        f->excludes(w);
    }

    LatticeSimplex load() const
    {
        if (!weights.empty()) return build_delta_q(WeightVector(parse_list(weights)));
        if (!vertices_file.empty()) return read_simplex_file(vertices_file);
        throw CLI::RequiredError("--weights or --vertices-file");
    }
};

void print(const Json& j) { std::cout << j.dump() << '\n'; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reflexive lattice simplices: h*-vectors, integral closure, free sums, weak Lefschetz"};
    app.require_subcommand(1);

    // weights
    auto* weights_cmd = app.add_subcommand("weights", "reduced admissible weight vectors");
    weights_cmd->require_subcommand(1);
    std::size_t w_dim = 0;
    bool w_json = false;
    auto* w_enum = weights_cmd->add_subcommand("enum", "enumerate all reduced admissible weights of a dimension");
    w_enum->add_option("--dim", w_dim)->required()->check(CLI::PositiveNumber);
    w_enum->add_flag("--json", w_json, "print a JSON array");
    std::size_t ws_dim = 0, ws_count = 0;
    std::uint64_t ws_seed = 0;
    long long ws_cap = kDefaultMaxVolume;
    auto* w_sample = weights_cmd->add_subcommand("sample", "random reduced admissible weights");
    w_sample->add_option("--dim", ws_dim)->required()->check(CLI::PositiveNumber);
    w_sample->add_option("--count", ws_count)->required()->check(CLI::PositiveNumber);
    w_sample->add_option("--seed", ws_seed)->required();
    w_sample->add_option("--max-volume", ws_cap, "upper bound on the total weight")->capture_default_str();

    // simplex
    auto* simplex_cmd = app.add_subcommand("simplex", "simplex construction and type");
    simplex_cmd->require_subcommand(1);
    std::string sb_weights, st_file;
    auto* s_build = simplex_cmd->add_subcommand("build", "build Delta_Q from reduced weights");
    s_build->add_option("--weights", sb_weights)->required();
    auto* s_type = simplex_cmd->add_subcommand("type", "type (Q_red, lambda) of a simplex");
    s_type->add_option("--vertices-file", st_file)->required();

    // hstar
    SimplexSource h_src;
    bool h_oracle = false;
    auto* hstar_cmd = app.add_subcommand("hstar", "h*-vector via the fundamental parallelepiped");
    h_src.attach(hstar_cmd);
    hstar_cmd->add_flag("--oracle", h_oracle, "cross-check against dilate counting");

    // idp-check
    SimplexSource i_src;
    std::uint64_t i_seed = 0;
    std::size_t i_trials = 1;
    auto* idp_cmd = app.add_subcommand("idp-check", "integral closure with witness");
    i_src.attach(idp_cmd);
    idp_cmd->add_option("--seed", i_seed, "unused; accepted for symmetry with wl-check");
    idp_cmd->add_option("--trials", i_trials, "unused; accepted for symmetry with wl-check");

    // wl-check
    SimplexSource l_src;
    std::uint64_t l_seed = 0;
    std::size_t l_trials = 4;
    auto* wl_cmd = app.add_subcommand("wl-check", "weak Lefschetz existence verdict");
    l_src.attach(wl_cmd);
    wl_cmd->add_option("--seed", l_seed)->capture_default_str();
    wl_cmd->add_option("--trials", l_trials)->check(CLI::PositiveNumber)->capture_default_str();

    // freesum
    std::string fs_left, fs_right;
    std::size_t fs_index = 0;
    auto* fs_cmd = app.add_subcommand("freesum", "Delta_p *_i Delta_q with its type");
    fs_cmd->add_option("--left-weights", fs_left)->required();
    fs_cmd->add_option("--right-weights", fs_right)->required();
    fs_cmd->add_option("--index", fs_index)->required();

    // decompose-type
    std::string dt_type;
    std::string dt_lambda = "1";
    auto* dt_cmd = app.add_subcommand("decompose-type", "all (p, q, i) composing to a type");
    dt_cmd->add_option("--type", dt_type)->required();
    dt_cmd->add_option("--lambda", dt_lambda)->capture_default_str();

    // search
    SearchConfig cfg;
    std::string format = "jsonl";
    long long cap = kDefaultMaxVolume;
    auto* search_cmd = app.add_subcommand("search", "seeded sampling pipeline over Delta_Q");
    search_cmd->add_option("--dim", cfg.dim)->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--count", cfg.count)->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--seed", cfg.seed)->required();
    search_cmd->add_flag("--require-idp", cfg.require_idp);
    search_cmd->add_flag("--skip-decomposable", cfg.skip_decomposable);
    search_cmd->add_flag("--skip-wl", cfg.skip_wl);
    search_cmd->add_option("--out", cfg.output_path)->required();
    search_cmd->add_option("--format", format)->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
    search_cmd->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber)->capture_default_str();
    search_cmd->add_option("--max-volume", cap, "upper bound on sampled total weight")->capture_default_str();
    search_cmd->add_option("--wl-trials", cfg.wl_trials)->check(CLI::PositiveNumber)->capture_default_str();
    search_cmd->add_option("--max-candidates", cfg.max_candidates, "0 = 100 * count")->capture_default_str();
    search_cmd->add_flag("--timings", cfg.timings, "record elapsed_ms (output no longer byte-reproducible)");

    // verify-family
    std::size_t vf_d = 0;
    auto* vf_cmd = app.add_subcommand("verify-family", "check the five claims for Q = (1, d, d+1, ..., d+1)");
    vf_cmd->add_option("--d", vf_d)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*w_enum) {
            auto all = enumerate_reduced_weights(w_dim);
            if (w_json) {
                Json arr = Json::array();
                for (const auto& w : all) arr.push_back(io::integers(w.values()));
                print(arr);
            } else {
                for (const auto& w : all) std::cout << detail::join(w.values(), ',') << '\n';
            }
        } else if (*w_sample) {
            for (const auto& w : sample_random_weights(ws_dim, ws_count, ws_seed, ws_cap))
                std::cout << detail::join(w.values(), ',') << '\n';
        } else if (*s_build) {
            print(io::to_json(build_delta_q(WeightVector(parse_list(sb_weights)))));
        } else if (*s_type) {
            print(io::to_json(simplex_type(read_simplex_file(st_file))));
        } else if (*hstar_cmd) {
            LatticeSimplex s = h_src.load();
            HStarVector h = hstar(s);
            if (h_oracle) {
                HStarVector o = hstar_by_interpolation(s);
                print(Json{{"hstar", io::to_json(h)}, {"oracle", io::to_json(o)}, {"agree", h == o}});
                if (!(h == o)) return kExitInvariant;
            } else {
                print(io::to_json(h));
            }
        } else if (*idp_cmd) {
            print(io::to_json(is_integrally_closed(i_src.load())));
        } else if (*wl_cmd) {
            print(io::to_json(weak_lefschetz_verdict(l_src.load(), l_seed, l_trials)));
        } else if (*fs_cmd) {
            WeightVector p(parse_list(fs_left)), q(parse_list(fs_right));
            LatticeSimplex s = free_sum(build_delta_q(p), build_delta_q(q), fs_index);
            print(Json{{"simplex", io::to_json(s)},
                       {"type", io::to_json(simplex_type(s))},
                       {"composed_type", io::to_json(compose_types(p, q, fs_index))}});
        } else if (*dt_cmd) {
            SimplexType t(WeightVector(parse_list(dt_type)), Integer(dt_lambda));
            Json arr = Json::array();
            for (const auto& d : type_decompositions(t)) arr.push_back(io::to_json(d));
            print(arr);
        } else if (*search_cmd) {
            cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::jsonl;
            cfg.max_volume = cap;
            print(to_json(run_search(cfg)));
        } else if (*vf_cmd) {
            FamilyReport r = verify_family(vf_d);
            print(to_json(r));
            if (!r.passed()) {
                for (const auto& c : r.claims)
                    if (!c.passed) std::cerr << "claim failed: " << c.name << " (" << c.detail << ")\n";
                return kExitFamily;
            }
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
