// Acceptance gate: one pass/fail line per criterion, exit 1 on any failure.
// argv[1] must be the path to the morsecraft CLI binary (criterion 10).

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "morsecraft/homology.hpp"
#include "morsecraft/io.hpp"

using namespace morsecraft;

namespace {

struct Failure : error {
    using error::error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

SimplicialComplex disk2() { return cone(boundary_simplex(2), 3); }
SimplicialComplex ball3() { return cone(boundary_simplex(3), 4); }

GluingSpec bipyramid_spec(int d) {
    const SimplicialComplex base = boundary_simplex(d);
    GluingSpec spec;
    spec.left = cone(base, base.fresh_vertex_id());
    spec.right = cone(base, base.fresh_vertex_id());
    for (VertexId v : base.vertex_ids()) spec.identification.emplace_back(v, v);
    return spec;
}

MorseMatching endo_certificate(const SimplicialComplex& M) {
    const CertificateResult res = is_endo_collapsible(M);
    expect(res.status == SearchStatus::Found, "endo-collapsibility search failed");
    return *res.matching;
}

std::vector<SimplicialComplex> morse_corpus() {
    std::vector<SimplicialComplex> corpus;
    for (int d = 1; d <= 4; ++d) {
        corpus.push_back(simplex_complex(d));
        corpus.push_back(boundary_simplex(d + 1));
    }
    corpus.push_back(octahedron());
    corpus.push_back(glue(bipyramid_spec(2)).complex);
    corpus.push_back(glue(bipyramid_spec(3)).complex);
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        corpus.push_back(build_local_construction(random_lc_trace(3, 8, 6, seed)).complex);
    return corpus;
}

// ---- criteria ----------------------------------------------------------

void criterion_morse_inequalities() {
    for (const SimplicialComplex& K : morse_corpus()) {
        const std::vector<long> beta = betti_gf2(K);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const MorseVector mv = morse_vector(random_morse(K, seed, 1));
            for (std::size_t i = 0; i < beta.size(); ++i)
                expect(mv.c[i] >= beta[i],
                       "c_" + std::to_string(i) + " < beta_" + std::to_string(i) +
                           " at seed " + std::to_string(seed));
        }
    }
}

void criterion_lift_exactness() {
    const std::vector<SimplicialComplex> pool = {
        simplex_complex(2), simplex_complex(3), boundary_simplex(2), boundary_simplex(3),
        octahedron(),       polygon(6),         disk2(),             ball3(),
    };
    std::mt19937_64 rng(0x11f7);
    for (int trial = 0; trial < 200; ++trial) {
        const SimplicialComplex& K = pool[rng() % pool.size()];
        const MorseMatching V = random_morse(K, rng(), 1);
        const std::vector<Simplex> faces = K.all_faces();
        const Simplex s = faces[rng() % faces.size()];
        const LiftResult res = lift_matching(K, V, s);
        expect(validate_matching(res.lifted).valid,
               "invalid lifted matching at trial " + std::to_string(trial));
        expect(morse_vector(res.lifted).c == morse_vector(V).c,
               "morse vector changed at trial " + std::to_string(trial) + " starring " +
                   s.str());
    }
}

void criterion_depth_union() {
    {
        const GluingSpec spec = bipyramid_spec(2);
        const MorseMatching u = compose_boundary_critical(
            spec, endo_certificate(spec.left), endo_certificate(spec.right),
            endo_certificate(boundary_simplex(2)));
        expect(morse_vector(u).c == std::vector<long>{1, 0, 1}, "two disks != (1,0,1)");
    }
    const GluingSpec spec = bipyramid_spec(3);
    const MorseMatching g = endo_certificate(spec.right);
    const MorseMatching h = endo_certificate(boundary_simplex(3));
    const MorseMatching u =
        compose_boundary_critical(spec, endo_certificate(spec.left), g, h);
    expect(morse_vector(u).c == std::vector<long>{1, 0, 0, 1}, "two balls != (1,0,0,1)");

    const CertificateResult augmented =
        search_boundary_critical(spec.left, CriticalBounds::exact({0, 1, 1, 1}));
    expect(augmented.status == SearchStatus::Found, "no augmented f on the 3-ball");
    const MorseVector shifted =
        morse_vector(compose_boundary_critical(spec, *augmented.matching, g, h));
    expect(shifted.c_int[1] == morse_vector(u).c_int[1] + 1, "c_int_1 did not shift by 1");
    expect(shifted.c == std::vector<long>{1, 1, 1, 1}, "augmented union off formula");
}

void criterion_handle_pipeline() {
    for (int d = 1; d <= 3; ++d) {
        HandleDecomposition H;
        if (d == 1) {
            H.handles.push_back({path_complex(3), 0, {}});
            H.handles.push_back({build_complex({{0, 4}, {3, 4}}), 1, {{0, 0}, {3, 3}}});
        } else {
            const GluingSpec spec = bipyramid_spec(d);
            H.handles.push_back({spec.left, 0, {}});
            H.handles.push_back({spec.right, d, spec.identification});
        }
        const MorseVector mv = morse_vector(handle_pipeline(H));
        std::vector<long> want(static_cast<std::size_t>(d) + 1, 0);
        want.front() = want.back() = 1;
        expect(mv.c_int == want, "S^" + std::to_string(d) + " pipeline off pattern");
    }
}

void criterion_collapse_depth() {
    const CollapseDepthResult s2 = collapse_depth(boundary_simplex(3));
    expect(s2.k_lower == 2 && s2.exact, "cdepth of the 2-sphere boundary");
    const CollapseDepthResult s3 = collapse_depth(boundary_simplex(4));
    expect(s3.k_lower == 3 && s3.exact, "cdepth of the 3-sphere boundary");
    for (const SimplicialComplex& M :
         {simplex_complex(2), simplex_complex(3), octahedron(), polygon(6), disk2(), ball3()}) {
        const CollapseDepthResult res = collapse_depth(M);
        expect(res.k_lower >= 1 && res.k_lower <= M.dim(), "cdepth out of [1, d]");
    }
}

void criterion_polygon_base_cases() {
    for (int n = 3; n <= 12; ++n) {
        const SimplicialComplex gon = polygon(n);
        std::vector<Simplex> open = gon.facets();
        open.pop_back();
        const CollapseResult minus_edge =
            collapse_to_single_vertex(SimplicialComplex::from_simplices(std::move(open)));
        expect(minus_edge.status == SearchStatus::Found,
               std::to_string(n) + "-gon minus an edge did not collapse");

        const OptimalMorseResult best = optimal_morse(gon);
        expect(best.exact && morse_vector(best.matching).c == std::vector<long>{1, 1},
               std::to_string(n) + "-gon has no (1,1) matching");

        expect(collapse_to_single_vertex(gon).status == SearchStatus::ProvedImpossible,
               std::to_string(n) + "-gon collapsed");
    }
}

void criterion_lc_suite() {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const LocalConstructionResult res =
            build_local_construction(random_lc_trace(3, 8, 6, seed));
        const std::vector<long> beta = betti_gf2(res.complex);
        expect(beta[1] == 0, "beta_1 != 0 at seed " + std::to_string(seed));
        if (res.closed)
            expect(beta == std::vector<long>{1, 0, 0, 1},
                   "closed trace not a homology sphere at seed " + std::to_string(seed));
        const CertificateResult cert = is_lc(res.complex);
        expect(cert.status == SearchStatus::Found,
               "no cdepth >= 2 certificate at seed " + std::to_string(seed));
        expect(validate_matching(*cert.matching).valid, "invalid LC certificate");
    }
}

void criterion_prism_collapse() {
    const std::pair<SimplicialComplex, long> cases[] = {
        {simplex_complex(1), 2},
        {simplex_complex(2), 3},
        {boundary_simplex(2), 6},
        {boundary_simplex(3), 12},
    };
    for (const auto& [K, want] : cases) {
        const PrismResult prism = prism_over(K, K.vertex_ids());
        expect(static_cast<long>(prism.complex.facets().size()) == want,
               "prism facet count != (d+1) * f_d");
        std::vector<Simplex> rest = replay_collapse(prism.complex, prism.onto_bottom);
        std::sort(rest.begin(), rest.end());
        expect(rest == prism.bottom.faces(), "prism collapse missed the bottom copy");
    }
}

long chain_count(const SimplicialComplex& K) {
    const FacePoset P = FacePoset::build(K);
    std::vector<long> ways(P.size(), 0);
    long total = 0;
    for (std::size_t f = 0; f < P.size(); ++f) {
        if (P.face_dim[f] == 0) ways[f] = 1;
        for (int g : P.down[f]) ways[f] += ways[static_cast<std::size_t>(g)];
        if (P.up[f].empty()) total += ways[f];
    }
    return total;
}

void criterion_subdivision() {
    expect(derived_subdivision(simplex_complex(2), 1).first.f_vector() ==
               std::vector<long>{7, 12, 6},
           "sd of the triangle");
    std::mt19937_64 rng(0x5d);
    const std::vector<SimplicialComplex> pool = {
        simplex_complex(2), simplex_complex(3), boundary_simplex(2), boundary_simplex(3),
        octahedron(),       polygon(6),         disk2(),             ball3(),
    };
    for (int trial = 0; trial < 10; ++trial) {
        const SimplicialComplex& K = pool[rng() % pool.size()];
        const long facets =
            static_cast<long>(derived_subdivision(K, 1).first.facets().size());
        expect(facets == chain_count(K), "sd facet count != maximal chain count");
    }
}

struct CliRunner {
    std::string cli;
    std::filesystem::path dir;

    explicit CliRunner(std::string cli_path) : cli(std::move(cli_path)) {
        dir = std::filesystem::temp_directory_path() /
              ("morsecraft-acceptance-" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~CliRunner() { std::filesystem::remove_all(dir); }

    std::string fixture(const std::string& name, const SimplicialComplex& K) const {
        const std::string path = (dir / name).string();
        write_facet_file(path, K);
        return path;
    }

    std::string run(const std::string& args, int run_index) const {
        const std::string out = (dir / ("out" + std::to_string(run_index))).string();
        const std::string cmd = cli + " " + args + " > " + out + " 2>/dev/null";
        const int rc = std::system(cmd.c_str());
        expect(rc == 0, "command failed: " + cmd);
        std::ifstream in(out);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
};

void criterion_determinism(const std::string& cli_path) {
    const CliRunner cli(cli_path);
    const std::string sphere = cli.fixture("tetra_boundary.facets", boundary_simplex(3));
    const std::string tri = cli.fixture("simplex2.facets", simplex_complex(2));
    const std::vector<std::string> commands = {
        "info " + sphere,
        "morse " + sphere + " --exhaustive",
        "morse " + sphere + " --seed 7 --restarts 4",
        "subdivide " + tri + " --derived 1",
        "cdepth " + sphere,
        "collapse " + tri,
        "lc " + sphere,
    };
    int run_index = 0;
    for (const std::string& cmd : commands) {
        const std::string a = cli.run(cmd, run_index++);
        const std::string b = cli.run(cmd, run_index++);
        expect(!a.empty(), "empty output from: " + cmd);
        expect(a == b, "outputs differ between runs of: " + cmd);
    }

    const std::string morse_out = cli.run("morse " + sphere + " --exhaustive", run_index++);
    expect(morse_out.find("\"morse_vector\": [\n    1,\n    0,\n    1\n  ]") !=
               std::string::npos,
           "exhaustive morse vector of the 2-sphere boundary is not (1,0,1)");

    const std::string sd = cli.run("subdivide " + tri + " --derived 1", run_index++);
    long lines = 0;
    for (char c : sd) lines += c == '\n';
    expect(lines == 6, "sd of the triangle is not 6 facet lines");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-morsecraft-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];

    const std::pair<std::string, std::function<void()>> criteria[] = {
        {"Morse inequalities hold over the corpus", criterion_morse_inequalities},
        {"200 randomized lifts preserve morse vectors", criterion_lift_exactness},
        {"union formula on glued disks and balls", criterion_depth_union},
        {"handle pipeline realizes S^1, S^2, S^3", criterion_handle_pipeline},
        {"collapse depth oracles and bounds", criterion_collapse_depth},
        {"polygon base cases", criterion_polygon_base_cases},
        {"random local constructions are certified", criterion_lc_suite},
        {"prism collapses onto the bottom copy", criterion_prism_collapse},
        {"derived subdivision counts match the chain oracle", criterion_subdivision},
        {"CLI runs are byte-identical", [cli] { criterion_determinism(cli); }},
    };

    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        try {
            check();
            std::cout << "PASS criterion " << index << ": " << name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL criterion " << index << ": " << name << " — " << e.what()
                      << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
