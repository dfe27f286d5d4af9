#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "morsecraft/homology.hpp"
#include "morsecraft/io.hpp"

using namespace morsecraft;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morsecraft: discrete Morse matchings, collapses, and subdivisions"};
    app.require_subcommand(1);

    std::string file, onto, star_face_arg, s_arg, t_arg, matching_path;
    std::string map_out, complex_out, f_path, g_path, h_path;
    std::uint64_t seed = 0;
    std::uint64_t budget_n = 1'000'000;
    int restarts = 10;
    int rounds = 1;
    bool exhaustive = false;
    bool boundary_critical = false;

    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget_n, "node-expansion budget per search");
    };

    auto* info = app.add_subcommand("info", "summarize a complex");
    info->add_option("file", file)->required();

    auto* morse = app.add_subcommand("morse", "search for a Morse matching");
    morse->add_option("file", file)->required();
    morse->add_option("--seed", seed, "random seed");
    morse->add_option("--restarts", restarts, "random restarts");
    morse->add_flag("--exhaustive", exhaustive, "branch-and-bound for the optimum");
    morse->add_flag("--boundary-critical", boundary_critical,
                    "restrict the search to interior faces");
    add_budget(morse);

    auto* collapse = app.add_subcommand("collapse", "search for a collapse sequence");
    collapse->add_option("file", file)->required();
    collapse->add_option("--onto", onto, "target subcomplex facet file");
    add_budget(collapse);

    auto* cdepth = app.add_subcommand("cdepth", "compute collapse depth");
    cdepth->add_option("file", file)->required();
    add_budget(cdepth);

    auto* lc = app.add_subcommand("lc", "local constructibility certificate");
    lc->add_option("file", file)->required();
    add_budget(lc);

    auto* subdivide = app.add_subcommand("subdivide", "derived or stellar subdivision");
    subdivide->add_option("file", file)->required();
    subdivide->add_option("--derived", rounds, "rounds of derived subdivision");
    subdivide->add_option("--star", star_face_arg, "face to star, e.g. 0-1-2");
    subdivide->add_option("--map", map_out, "write the carrier map JSON here");

    auto* flip = app.add_subcommand("flip", "bistellar flip");
    flip->add_option("file", file)->required();
    flip->add_option("-s", s_arg, "face to remove, e.g. 0-1")->required();
    flip->add_option("-t", t_arg, "replacement face, e.g. 2-3")->required();

    auto* lift = app.add_subcommand("lift", "lift a matching through a starring");
    lift->add_option("file", file)->required();
    lift->add_option("--matching", matching_path, "matching JSON")->required();
    lift->add_option("--face", star_face_arg, "face to star")->required();
    lift->add_option("--complex-out", complex_out, "write the subdivided facet file here");
    lift->add_option("--map", map_out, "write the carrier map JSON here");

    auto* glue_cmd = app.add_subcommand("glue", "glue two manifolds");
    glue_cmd->add_option("spec", file, "GluingSpec JSON")->required();

    auto* compose = app.add_subcommand("compose", "compose boundary-critical matchings");
    compose->add_option("spec", file, "GluingSpec JSON")->required();
    compose->add_option("f_matching", f_path, "matching JSON on the left side")->required();
    compose->add_option("g_matching", g_path, "matching JSON on the right side")->required();
    compose->add_option("h_matching", h_path, "matching JSON on the identified subcomplex")
        ->required();
    add_budget(compose);

    auto* build_lc = app.add_subcommand("build-lc", "replay a local construction trace");
    build_lc->add_option("trace", file, "trace JSON")->required();

    auto* pipeline = app.add_subcommand("pipeline", "run the handle pipeline");
    pipeline->add_option("decomposition", file, "HandleDecomposition JSON")->required();
    add_budget(pipeline);

    CLI11_PARSE(app, argc, argv);
    const Budget budget{budget_n};

    try {
        if (info->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            json report{{"dim", K.dim()},
                        {"f_vector", K.f_vector()},
                        {"euler_characteristic", K.euler_characteristic()},
                        {"betti_gf2", betti_gf2(K)},
                        {"pseudomanifold", is_pseudomanifold(K)},
                        {"strongly_connected", is_strongly_connected(K)},
                        {"pure", K.is_pure()},
                        {"complex_hash", complex_hash(K)}};
            if (is_pseudomanifold(K) && K.is_pure()) {
                const SubcomplexRef bd = boundary_subcomplex(K);
                report["closed"] = bd.empty();
            }
            ManifoldCheck mc = manifold_check(K);
            report["manifold_stack"] = mc.ok;
            if (!mc.ok) report["manifold_problems"] = mc.problems;
            std::cout << report.dump(2) << "\n";
            return kExitOk;
        }
        if (morse->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            if (exhaustive) {
                OptimalMorseResult res = optimal_morse(K, budget);
                std::cout << matching_json(res.matching);
                return res.exact ? kExitOk : kExitInconclusive;
            }
            MorseMatching V = random_morse(K, seed, restarts, boundary_critical);
            std::cout << matching_json(V);
            return kExitOk;
        }
        if (collapse->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            CollapseResult res;
            if (onto.empty()) {
                res = collapse_to_single_vertex(K, budget);
            } else {
                SimplicialComplex L = read_facet_file(onto);
                res = collapses_onto(K, SubcomplexRef(K, L.all_faces()), budget);
            }
            if (res.status == SearchStatus::Found) {
                replay_collapse(K, res.sequence);  // self-check before emitting
                std::cout << collapse_json(res.sequence);
                return kExitOk;
            }
            if (res.status == SearchStatus::ProvedImpossible) {
                std::cout << json{{"status", "proved_impossible"}}.dump(2) << "\n";
                return kExitOk;
            }
            std::cerr << "inconclusive: budget exhausted\n";
            return kExitInconclusive;
        }
        if (cdepth->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            CollapseDepthResult res = collapse_depth(K, budget);
            json report{{"cdepth", res.k_lower}, {"exact", res.exact}};
            if (res.certificate) report["certificate"] = json::parse(matching_json(*res.certificate));
            std::cout << report.dump(2) << "\n";
            return res.exact ? kExitOk : kExitInconclusive;
        }
        if (lc->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            CertificateResult res = is_lc(K, budget);
            if (res.status == SearchStatus::Found) {
                std::cout << matching_json(*res.matching);
                return kExitOk;
            }
            if (res.status == SearchStatus::ProvedImpossible) {
                std::cout << json{{"status", "not_lc"}}.dump(2) << "\n";
                return kExitOk;
            }
            std::cerr << res.detail << "\n";
            return kExitInconclusive;
        }
        if (subdivide->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            SimplicialComplex refined;
            SubdivisionMap m;
            if (!star_face_arg.empty()) {
                std::tie(refined, m) = star_face(K, Simplex::parse(star_face_arg));
            } else {
                std::tie(refined, m) = derived_subdivision(K, rounds);
            }
            std::cout << facet_text(refined);
            if (!map_out.empty()) write_text(map_out, subdivision_map_json(m));
            return kExitOk;
        }
        if (flip->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            std::cout << facet_text(
                bistellar_flip(K, Simplex::parse(s_arg), Simplex::parse(t_arg)));
            return kExitOk;
        }
        if (lift->parsed()) {
            SimplicialComplex K = read_facet_file(file);
            MorseMatching V = matching_from_json(read_text(matching_path), K);
            LiftResult res = lift_matching(K, V, Simplex::parse(star_face_arg));
            std::cout << matching_json(res.lifted);
            if (!complex_out.empty()) write_facet_file(complex_out, res.refined);
            if (!map_out.empty()) write_text(map_out, subdivision_map_json(res.map));
            return kExitOk;
        }
        if (glue_cmd->parsed()) {
            GlueResult res = glue(gluing_spec_from_file(file));
            std::cout << facet_text(res.complex);
            return kExitOk;
        }
        if (compose->parsed()) {
            GluingSpec spec = gluing_spec_from_file(file);
            GlueResult glued = glue(spec);
            MorseMatching f = matching_from_json(read_text(f_path), spec.left);
            MorseMatching g = matching_from_json(read_text(g_path), spec.right);
            MorseMatching h =
                matching_from_json(read_text(h_path), glued.intersection.as_complex());
            std::cout << matching_json(compose_boundary_critical(spec, f, g, h, budget));
            return kExitOk;
        }
        if (build_lc->parsed()) {
            LocalConstructionResult res = build_local_construction(trace_from_file(file));
            std::cout << facet_text(res.complex);
            return kExitOk;
        }
        if (pipeline->parsed()) {
            HandleDecomposition H = handles_from_file(file);
            std::cout << matching_json(handle_pipeline(H, budget));
            return kExitOk;
        }
    } catch (const budget_exhausted& e) {
        std::cerr << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
