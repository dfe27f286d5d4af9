#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "morsecraft/homology.hpp"

using namespace morsecraft;

namespace {

void check_lift(const SimplicialComplex& K, const MorseMatching& V, const Simplex& s) {
    CAPTURE(s.str());
    const MorseVector before = morse_vector(V);
    const LiftResult res = lift_matching(K, V, s);
    CHECK(validate_matching(res.lifted).valid);
    const MorseVector after = morse_vector(res.lifted);
    if (V.boundary_critical) {
        CHECK(after.c_int == before.c_int);
    } else {
        CHECK(after.c == before.c);
    }
}

}  // namespace

TEST_CASE("lifting through a single starring") {
    SUBCASE("collapsibility certificate of the solid triangle, top face starred") {
        const SimplicialComplex K = simplex_complex(2);
        const MorseMatching V{K,
                              {{Simplex{0}, Simplex{0, 1}},
                               {Simplex{1, 2}, Simplex{0, 1, 2}},
                               {Simplex{2}, Simplex{0, 2}}}};
        REQUIRE(morse_vector(V).c == std::vector<long>{1, 0, 0});
        const LiftResult res = lift_matching(K, V, Simplex{0, 1, 2});
        CHECK(validate_matching(res.lifted).valid);
        CHECK(morse_vector(res.lifted).c == std::vector<long>{1, 0, 0});
        CHECK(res.refined.f_vector() == std::vector<long>{4, 6, 3});
    }
    SUBCASE("triangle boundary, an edge starred") {
        const SimplicialComplex K = boundary_simplex(2);
        const MorseMatching V{K, {{Simplex{0}, Simplex{0, 1}}, {Simplex{1}, Simplex{1, 2}}}};
        const LiftResult res = lift_matching(K, V, Simplex{0, 1});
        CHECK(res.refined.f_vector() == std::vector<long>{4, 4});
        CHECK(morse_vector(res.lifted).c == std::vector<long>{1, 1});
    }
    SUBCASE("empty matching on the segment") {
        const SimplicialComplex K = simplex_complex(1);
        const LiftResult res = lift_matching(K, MorseMatching{K, {}}, Simplex{0, 1});
        CHECK(morse_vector(res.lifted).c == std::vector<long>{2, 1});
    }
    SUBCASE("starring a vertex is a no-op") {
        const SimplicialComplex K = simplex_complex(2);
        const MorseMatching V = random_morse(K, 0, 1);
        const LiftResult res = lift_matching(K, V, Simplex{0});
        CHECK(res.refined == K);
        CHECK(morse_vector(res.lifted).c == morse_vector(V).c);
    }
}

TEST_CASE("lifting through derived subdivisions") {
    SUBCASE("endo-collapsibility of the 2-sphere survives sd") {
        const SimplicialComplex K = boundary_simplex(3);
        const CertificateResult cert = is_endo_collapsible(K);
        REQUIRE(cert.status == SearchStatus::Found);
        const LiftResult res = lift_through_derived(K, *cert.matching, 1);
        CHECK(res.refined == derived_subdivision(K, 1).first);
        CHECK(validate_matching(res.lifted).valid);
        CHECK(morse_vector(res.lifted).c == std::vector<long>{1, 0, 1});
    }
    SUBCASE("collapsibility of the solid triangle through two rounds") {
        const SimplicialComplex K = simplex_complex(2);
        const OptimalMorseResult opt = optimal_morse(K);
        REQUIRE(morse_vector(opt.matching).c == std::vector<long>{1, 0, 0});
        const LiftResult res = lift_through_derived(K, opt.matching, 2);
        CHECK(res.refined == derived_subdivision(K, 2).first);
        CHECK(morse_vector(res.lifted).c == std::vector<long>{1, 0, 0});
    }
    SUBCASE("boundary-critical counts survive a starring") {
        const SimplicialComplex K = simplex_complex(2);
        const CertificateResult cert = is_endo_collapsible(K);
        REQUIRE(cert.status == SearchStatus::Found);
        for (const Simplex& s : K.all_faces()) check_lift(K, *cert.matching, s);
    }
}

TEST_CASE("lifted carrier maps are sound") {
    const SimplicialComplex K = boundary_simplex(3);
    const MorseMatching V = random_morse(K, 2, 3);
    const LiftResult res = lift_matching(K, V, Simplex{0, 1, 2});
    CHECK(res.map.source == K);
    CHECK(res.map.target == res.refined);
    std::size_t covered = 0;
    for (const auto& [src, targets] : res.map.carrier) covered += targets.size();
    CHECK(covered == res.refined.face_count());
}

TEST_CASE("randomized lift triples preserve morse vectors") {
    std::mt19937_64 rng(17);
    const std::vector<SimplicialComplex> pool = {
        simplex_complex(2), simplex_complex(3), boundary_simplex(2), boundary_simplex(3),
        octahedron(),       polygon(6),         fixtures::disk2(),   fixtures::ball3(),
    };
    for (int trial = 0; trial < 40; ++trial) {
        const SimplicialComplex& K = pool[rng() % pool.size()];
        const MorseMatching V = random_morse(K, rng(), 1);
        const std::vector<Simplex> faces = K.all_faces();
        check_lift(K, V, faces[rng() % faces.size()]);
    }
}
