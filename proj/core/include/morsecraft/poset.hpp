#pragma once

#include <unordered_map>
#include <vector>

#include "morsecraft/complex.hpp"

namespace morsecraft {

/// Materialized face poset with covering relations and boundary flags.
/// Face ids are positions in `faces`, which is sorted by (dim, lex) — all
/// search tie-breaking is by ascending face id.
struct FacePoset {
    SimplicialComplex complex;
    std::vector<Simplex> faces;
    std::unordered_map<Simplex, int, SimplexHash> index;
    std::vector<int> face_dim;
    std::vector<std::vector<int>> down;  // codim-1 faces
    std::vector<std::vector<int>> up;    // codim-1 cofaces
    std::vector<char> on_boundary;
    bool boundary_known = false;  // false when the complex is not a pseudomanifold

    static FacePoset build(const SimplicialComplex& K);

    int id(const Simplex& s) const {
        auto it = index.find(s);
        if (it == index.end()) throw error("face " + s.str() + " not in complex");
        return it->second;
    }
    bool has(const Simplex& s) const { return index.count(s) > 0; }
    std::size_t size() const { return faces.size(); }
    bool interior(int f) const { return !on_boundary[static_cast<std::size_t>(f)]; }
};

}  // namespace morsecraft
