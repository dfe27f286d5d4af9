#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "morsecraft/homology.hpp"

using namespace morsecraft;

namespace {

/// Two cones over the same boundary sphere, glued along it: a d-sphere.
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
    REQUIRE(res.status == SearchStatus::Found);
    return *res.matching;
}

}  // namespace

TEST_CASE("gluing") {
    SUBCASE("two disks along their boundary circles form a 2-sphere") {
        const GlueResult res = glue(bipyramid_spec(2));
        CHECK(res.complex.euler_characteristic() == 2);
        CHECK(betti_gf2(res.complex) == std::vector<long>{1, 0, 1});
        CHECK(boundary_subcomplex(res.complex).empty());
        CHECK(res.intersection.as_complex() == boundary_simplex(2));
    }
    SUBCASE("doubling an edge is rejected as a face collision") {
        GluingSpec spec;
        spec.left = simplex_complex(1);
        spec.right = simplex_complex(1);
        spec.identification = {{0, 0}, {1, 1}};
        CHECK_THROWS_AS(glue(spec), error);
    }
    SUBCASE("two tetrahedra along a triangle form a tree of simplices") {
        GluingSpec spec;
        spec.left = simplex_complex(3);
        spec.right = simplex_complex(3);
        spec.identification = {{0, 0}, {1, 1}, {2, 2}};
        const GlueResult res = glue(spec);
        CHECK(res.complex.facets().size() == 2);
        CHECK(is_tree_of_simplices(res.complex));
        CHECK(res.right_relabel.at(3) != 3);  // the free right vertex is renamed
    }
    SUBCASE("non-bijective identifications are rejected") {
        GluingSpec spec = bipyramid_spec(2);
        spec.identification.back().second = spec.identification.front().second;
        CHECK_THROWS_AS(glue(spec), error);
    }
    SUBCASE("interior vertices cannot be identified") {
        GluingSpec spec;
        spec.left = fixtures::disk2();
        spec.right = fixtures::disk2();
        spec.identification = {{0, 0}, {1, 1}, {3, 3}};  // 3 is the cone apex
        CHECK_THROWS_AS(glue(spec), error);
    }
}

TEST_CASE("composing boundary-critical matchings") {
    SUBCASE("two 2-disks make a 2-sphere with c = (1,0,1)") {
        const GluingSpec spec = bipyramid_spec(2);
        const MorseMatching u = compose_boundary_critical(
            spec, endo_certificate(spec.left), endo_certificate(spec.right),
            endo_certificate(boundary_simplex(2)));
        CHECK(validate_matching(u).valid);
        CHECK(morse_vector(u).c == std::vector<long>{1, 0, 1});
    }
    SUBCASE("two 3-balls make a 3-sphere with c = (1,0,0,1)") {
        const GluingSpec spec = bipyramid_spec(3);
        const MorseMatching u = compose_boundary_critical(
            spec, endo_certificate(spec.left), endo_certificate(spec.right),
            endo_certificate(boundary_simplex(3)));
        CHECK(validate_matching(u).valid);
        CHECK(morse_vector(u).c == std::vector<long>{1, 0, 0, 1});
    }
    SUBCASE("extra interior critical cells of f show up verbatim") {
        const GluingSpec spec = bipyramid_spec(3);
        const CertificateResult augmented = search_boundary_critical(
            spec.left, CriticalBounds::exact({0, 1, 1, 1}));
        REQUIRE(augmented.status == SearchStatus::Found);
        const MorseMatching u = compose_boundary_critical(
            spec, *augmented.matching, endo_certificate(spec.right),
            endo_certificate(boundary_simplex(3)));
        CHECK(validate_matching(u).valid);
        CHECK(morse_vector(u).c == std::vector<long>{1, 1, 1, 1});
    }
}

TEST_CASE("local constructions") {
    SUBCASE("the trivial trace returns the tree itself") {
        const LocalConstructionTrace trace{simplex_complex(3), {}};
        const LocalConstructionResult res = build_local_construction(trace);
        CHECK(res.complex == simplex_complex(3));
        CHECK_FALSE(res.closed);
    }
    SUBCASE("folding a triangle fan closes it into a disk") {
        const LocalConstructionTrace trace{
            build_complex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}}),
            {{Simplex{0, 1}, Simplex{0, 4}}}};
        const LocalConstructionResult res = build_local_construction(trace);
        CHECK(res.complex == build_complex({{0, 1, 2}, {0, 2, 3}, {0, 1, 3}}));
        CHECK(res.complex.euler_characteristic() == 1);
        CHECK(betti_gf2(res.complex) == std::vector<long>{1, 0, 0});
        CHECK_FALSE(res.closed);
    }
    SUBCASE("non-adjacent or non-boundary identifications are rejected") {
        const SimplicialComplex strip =
            build_complex({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
        CHECK_THROWS_AS(build_local_construction(
                            {strip, {{Simplex{0, 1}, Simplex{3, 4}}}}),
                        error);
        CHECK_THROWS_AS(build_local_construction(
                            {strip, {{Simplex{1, 2}, Simplex{2, 3}}}}),
                        error);
    }
    SUBCASE("random traces replay to pseudomanifolds") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const LocalConstructionTrace trace = random_lc_trace(3, 6, 4, seed);
            CHECK(is_tree_of_simplices(trace.tree));
            const LocalConstructionResult res = build_local_construction(trace);
            CHECK(manifold_check(res.complex).ok);
            const std::vector<long> beta = betti_gf2(res.complex);
            CHECK(beta[1] == 0);
            if (res.closed) CHECK(beta == std::vector<long>{1, 0, 0, 1});
        }
    }
}

TEST_CASE("local constructibility certificates") {
    SUBCASE("the 3-sphere boundary is LC") {
        const CertificateResult res = is_lc(boundary_simplex(4));
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(validate_matching(*res.matching).valid);
    }
    SUBCASE("the octahedron is LC") {
        CHECK(is_lc(octahedron()).status == SearchStatus::Found);
    }
    SUBCASE("the solid tetrahedron is LC") {
        CHECK(is_lc(simplex_complex(3)).status == SearchStatus::Found);
    }
}

TEST_CASE("handle pipeline") {
    SUBCASE("the circle as two arcs") {
        HandleDecomposition H;
        H.handles.push_back({path_complex(3), 0, {}});
        Handle cap;
        cap.complex = build_complex({{0, 4}, {3, 4}});
        cap.index = 1;
        cap.attach = {{0, 0}, {3, 3}};
        H.handles.push_back(cap);
        const MorseMatching u = handle_pipeline(H);
        CHECK(validate_matching(u).valid);
        CHECK(morse_vector(u).c == std::vector<long>{1, 1});
    }
    SUBCASE("the 2-sphere as 0-handle plus 2-handle") {
        const GluingSpec spec = bipyramid_spec(2);
        HandleDecomposition H;
        H.handles.push_back({spec.left, 0, {}});
        H.handles.push_back({spec.right, 2, spec.identification});
        const MorseMatching u = handle_pipeline(H);
        CHECK(morse_vector(u).c_int == std::vector<long>{1, 0, 1});
    }
    SUBCASE("the 3-sphere as 0-handle plus 3-handle") {
        const GluingSpec spec = bipyramid_spec(3);
        HandleDecomposition H;
        H.handles.push_back({spec.left, 0, {}});
        H.handles.push_back({spec.right, 3, spec.identification});
        const MorseMatching u = handle_pipeline(H);
        CHECK(morse_vector(u).c_int == std::vector<long>{1, 0, 0, 1});
    }
    SUBCASE("decompositions must start with a 0-handle") {
        HandleDecomposition H;
        H.handles.push_back({fixtures::disk2(), 1, {}});
        CHECK_THROWS_AS(handle_pipeline(H), error);
    }
}
