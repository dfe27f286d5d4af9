#pragma once

#include <random>
#include <vector>

#include "morsecraft/io.hpp"

namespace fixtures {

using namespace morsecraft;

/// Cone over the triangle boundary: the smallest 2-disk whose interior
/// contains faces of every dimension.
inline SimplicialComplex disk2() { return cone(boundary_simplex(2), 3); }

/// Cone over the tetrahedron boundary: a 3-ball with boundary the 2-sphere.
inline SimplicialComplex ball3() { return cone(boundary_simplex(3), 4); }

/// Independent oracle for the derived-subdivision facet count: number of
/// maximal chains in the face poset, by dynamic programming over covers.
inline long maximal_chain_count(const SimplicialComplex& K) {
    const FacePoset P = FacePoset::build(K);
    std::vector<long> ways(P.size(), 0);
    long total = 0;
    for (std::size_t f = 0; f < P.size(); ++f) {
        if (P.face_dim[f] == 0) {
            ways[f] = 1;
        } else {
            for (int g : P.down[f]) ways[f] += ways[static_cast<std::size_t>(g)];
        }
        if (P.up[f].empty()) total += ways[f];
    }
    return total;
}

/// Mixed-dimension corpus used by the property tests.
inline std::vector<SimplicialComplex> fixture_pool() {
    std::vector<SimplicialComplex> pool;
    for (int d = 1; d <= 4; ++d) pool.push_back(simplex_complex(d));
    for (int d = 1; d <= 4; ++d) pool.push_back(boundary_simplex(d + 1));
    pool.push_back(octahedron());
    pool.push_back(polygon(6));
    pool.push_back(disk2());
    pool.push_back(ball3());
    pool.push_back(build_complex({{0, 1, 2}, {1, 2, 3}}));  // two triangles on an edge
    return pool;
}

}  // namespace fixtures
