#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "morsecraft/homology.hpp"

using namespace morsecraft;

namespace {

MorseMatching matching(SimplicialComplex K,
                       std::vector<std::pair<Simplex, Simplex>> pairs,
                       bool boundary_critical = false) {
    return MorseMatching{std::move(K), std::move(pairs), boundary_critical};
}

}  // namespace

TEST_CASE("matching validation") {
    const SimplicialComplex tri = boundary_simplex(2);

    SUBCASE("empty matching is valid with every face critical") {
        const MorseMatching V = matching(tri, {});
        CHECK(validate_matching(V).valid);
        CHECK(critical_cells(V).size() == tri.face_count());
    }
    SUBCASE("two pairs on the triangle boundary") {
        const MorseMatching V =
            matching(tri, {{Simplex{0}, Simplex{0, 1}}, {Simplex{1}, Simplex{1, 2}}});
        CHECK(validate_matching(V).valid);
        CHECK(critical_cells(V) == std::vector<Simplex>{Simplex{2}, Simplex{0, 2}});
        CHECK(morse_vector(V).c == std::vector<long>{1, 1});
    }
    SUBCASE("the cyclic matching is rejected with a witness") {
        const MorseMatching V = matching(tri, {{Simplex{0}, Simplex{0, 1}},
                                               {Simplex{1}, Simplex{1, 2}},
                                               {Simplex{2}, Simplex{0, 2}}});
        const ValidationReport report = validate_matching(V);
        CHECK_FALSE(report.valid);
        CHECK_FALSE(report.violations.empty());
        CHECK_THROWS_AS(critical_cells(V), error);
    }
    SUBCASE("non-cover pairs are rejected") {
        CHECK_FALSE(validate_matching(matching(simplex_complex(2),
                                               {{Simplex{0}, Simplex{0, 1, 2}}}))
                        .valid);
    }
}

TEST_CASE("morse vectors") {
    SUBCASE("perfect matching on the solid tetrahedron") {
        const OptimalMorseResult res = optimal_morse(simplex_complex(3));
        CHECK(res.exact);
        CHECK(morse_vector(res.matching).c == std::vector<long>{1, 0, 0, 0});
    }
    SUBCASE("optimal on the 3-sphere boundary") {
        const OptimalMorseResult res = optimal_morse(boundary_simplex(4));
        CHECK(res.exact);
        CHECK(morse_vector(res.matching).c == std::vector<long>{1, 0, 0, 1});
    }
    SUBCASE("boundary-critical counts on the solid triangle") {
        // The interior of the solid triangle is its top face alone.
        MorseMatching V = matching(simplex_complex(2), {}, true);
        const MorseVector mv = morse_vector(V);
        CHECK(mv.c == std::vector<long>{3, 3, 1});
        CHECK(mv.c_int == std::vector<long>{0, 0, 1});
    }
}

TEST_CASE("morse function realization") {
    const MorseMatching V = matching(
        boundary_simplex(2), {{Simplex{0}, Simplex{0, 1}}, {Simplex{1}, Simplex{1, 2}}});
    const std::map<Simplex, int> value = morse_function_values(V);
    for (const auto& [free, coface] : V.pairs) CHECK(value.at(free) == value.at(coface));
    for (const Simplex& f : V.complex.all_faces())
        for (const Simplex& c : V.complex.cofacets(f))
            if (value.at(f) != value.at(c)) CHECK(value.at(f) < value.at(c));
}

TEST_CASE("collapse searches") {
    SUBCASE("triangle onto a vertex") {
        const CollapseResult res = collapse_to_single_vertex(simplex_complex(2));
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(res.sequence.steps.size() == 3);
        CHECK(replay_collapse(simplex_complex(2), res.sequence).size() == 1);
    }
    SUBCASE("the hexagon has no free face") {
        CHECK(collapse_to_single_vertex(polygon(6)).status ==
              SearchStatus::ProvedImpossible);
    }
    SUBCASE("the hexagon minus an edge collapses") {
        std::vector<Simplex> facets = polygon(6).facets();
        facets.erase(facets.begin());
        const SimplicialComplex path = SimplicialComplex::from_simplices(std::move(facets));
        const CollapseResult res = collapse_to_single_vertex(path);
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(replay_collapse(path, res.sequence).size() == 1);
    }
    SUBCASE("collapsing onto a subcomplex") {
        const SimplicialComplex K = simplex_complex(2);
        const SubcomplexRef edge(K, Simplex{0, 1}.all_faces());
        const CollapseResult res = collapses_onto(K, edge);
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(res.sequence.steps.size() == 2);
        CHECK(collapse_reaches(K, res.sequence, edge.faces()));
    }
}

TEST_CASE("random morse heuristic") {
    SUBCASE("cones never strand") {
        for (int d = 1; d <= 3; ++d)
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const MorseMatching V = random_morse(simplex_complex(d), seed, 1);
                std::vector<long> expected(static_cast<std::size_t>(d) + 1, 0);
                expected[0] = 1;
                CHECK(morse_vector(V).c == expected);
            }
    }
    SUBCASE("the 2-sphere boundary reaches the optimum") {
        CHECK(morse_vector(random_morse(boundary_simplex(3), 0, 10)).c ==
              std::vector<long>{1, 0, 1});
    }
    SUBCASE("disjoint circles keep both components") {
        const SimplicialComplex two =
            build_complex({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
        const MorseVector mv = morse_vector(random_morse(two, 1, 10));
        CHECK(mv.c[0] == 2);
        CHECK(mv.c[1] == 2);
    }
    SUBCASE("determinism in seed and restarts") {
        const MorseMatching a = random_morse(octahedron(), 5, 4);
        const MorseMatching b = random_morse(octahedron(), 5, 4);
        CHECK(a.pairs == b.pairs);
    }
}

TEST_CASE("optimal search") {
    const OptimalMorseResult tri = optimal_morse(boundary_simplex(2));
    CHECK(tri.exact);
    CHECK(morse_vector(tri.matching).c == std::vector<long>{1, 1});

    const OptimalMorseResult oct = optimal_morse(octahedron());
    CHECK(oct.exact);
    CHECK(morse_vector(oct.matching).c == std::vector<long>{1, 0, 1});
}

TEST_CASE("endo-collapsibility") {
    SUBCASE("closed 2-sphere: one vertex and one facet") {
        const CertificateResult res = is_endo_collapsible(boundary_simplex(3));
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(morse_vector(*res.matching).c == std::vector<long>{1, 0, 1});
    }
    SUBCASE("solid triangle: the top face alone") {
        const CertificateResult res = is_endo_collapsible(simplex_complex(2));
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(morse_vector(*res.matching).c_int == std::vector<long>{0, 0, 1});
    }
    SUBCASE("hexagon: one vertex and one edge") {
        const CertificateResult res = is_endo_collapsible(polygon(6));
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(morse_vector(*res.matching).c == std::vector<long>{1, 1});
    }
}

TEST_CASE("collapse depth") {
    const CollapseDepthResult s3 = collapse_depth(boundary_simplex(4));
    CHECK(s3.k_lower == 3);
    CHECK(s3.exact);

    const CollapseDepthResult seg = collapse_depth(simplex_complex(1));
    CHECK(seg.k_lower == 1);
    CHECK(seg.exact);

    const CollapseDepthResult s2 = collapse_depth(boundary_simplex(3));
    CHECK(s2.k_lower == 2);
    CHECK(s2.exact);
    REQUIRE(s2.certificate.has_value());
    CHECK(validate_matching(*s2.certificate).valid);
}

TEST_CASE("gradient paths and cancellation") {
    SUBCASE("trivial incident path on the solid triangle") {
        const MorseMatching V = matching(simplex_complex(2), {});
        CHECK(gradient_paths(V, Simplex{0, 1}, Simplex{0}).size() == 1);
        const MorseMatching after = cancel_pair(V, Simplex{0, 1}, Simplex{0});
        CHECK(validate_matching(after).valid);
        CHECK(critical_cells(after).size() == critical_cells(V).size() - 2);
    }
    SUBCASE("cancelling a stranded pair on the solid tetrahedron") {
        const MorseMatching V = matching(simplex_complex(3),
                                         {{Simplex{1}, Simplex{0, 1}},
                                          {Simplex{2}, Simplex{0, 2}},
                                          {Simplex{3}, Simplex{0, 3}},
                                          {Simplex{1, 2}, Simplex{0, 1, 2}},
                                          {Simplex{1, 3}, Simplex{0, 1, 3}},
                                          {Simplex{0, 2, 3}, Simplex{0, 1, 2, 3}}});
        REQUIRE(validate_matching(V).valid);
        CHECK(morse_vector(V).c == std::vector<long>{1, 1, 1, 0});
        const MorseMatching after = cancel_pair(V, Simplex{1, 2, 3}, Simplex{2, 3});
        CHECK(morse_vector(after).c == std::vector<long>{1, 0, 0, 0});
    }
    SUBCASE("two paths around the hexagon block cancellation") {
        const MorseMatching V = matching(polygon(6), {{Simplex{1}, Simplex{0, 1}},
                                                      {Simplex{2}, Simplex{1, 2}},
                                                      {Simplex{3}, Simplex{3, 4}},
                                                      {Simplex{4}, Simplex{4, 5}},
                                                      {Simplex{5}, Simplex{0, 5}}});
        REQUIRE(validate_matching(V).valid);
        CHECK(gradient_paths(V, Simplex{2, 3}, Simplex{0}).size() == 2);
        CHECK_THROWS_AS(cancel_pair(V, Simplex{2, 3}, Simplex{0}), error);
    }
}

TEST_CASE("schedule_pairs orders acyclic matchings into collapses") {
    const SimplicialComplex K = simplex_complex(2);
    const FacePoset P = FacePoset::build(K);
    const std::vector<std::pair<int, int>> pairs = {
        {P.id(Simplex{1, 2}), P.id(Simplex{0, 1, 2})},
        {P.id(Simplex{2}), P.id(Simplex{0, 2})},
        {P.id(Simplex{1}), P.id(Simplex{0, 1})},
    };
    const auto seq = schedule_pairs(P, pairs, std::vector<char>(P.size(), 1));
    REQUIRE(seq.has_value());
    CHECK(replay_collapse(K, *seq) == std::vector<Simplex>{Simplex{0}});
}

TEST_CASE("Euler identity for matchings") {
    std::mt19937_64 rng(3);
    for (const SimplicialComplex& K : fixtures::fixture_pool()) {
        const MorseMatching V = random_morse(K, rng(), 2);
        const MorseVector mv = morse_vector(V);
        long alternating = 0;
        int sign = 1;
        for (long c : mv.c) {
            alternating += sign * c;
            sign = -sign;
        }
        CHECK(alternating == K.euler_characteristic());
    }
}

TEST_CASE("Morse inequalities on random matchings") {
    for (const SimplicialComplex& K : fixtures::fixture_pool()) {
        const std::vector<long> beta = betti_gf2(K);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const MorseVector mv = morse_vector(random_morse(K, seed, 1));
            for (std::size_t i = 0; i < beta.size(); ++i) CHECK(mv.c[i] >= beta[i]);
        }
    }
}
