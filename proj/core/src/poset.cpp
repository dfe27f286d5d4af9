#include "morsecraft/poset.hpp"

namespace morsecraft {

FacePoset FacePoset::build(const SimplicialComplex& K) {
    FacePoset P;
    P.complex = K;
    P.faces = K.all_faces();
    P.index.reserve(P.faces.size());
    for (std::size_t i = 0; i < P.faces.size(); ++i)
        P.index.emplace(P.faces[i], static_cast<int>(i));
    P.face_dim.resize(P.faces.size());
    P.down.resize(P.faces.size());
    P.up.resize(P.faces.size());
    for (std::size_t i = 0; i < P.faces.size(); ++i) {
        P.face_dim[i] = P.faces[i].dim();
        if (P.face_dim[i] == 0) continue;
        for (const Simplex& sub : P.faces[i].facets()) {
            const int j = P.index.at(sub);
            P.down[i].push_back(j);
            P.up[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
        }
    }
    P.on_boundary.assign(P.faces.size(), 0);
    try {
        SubcomplexRef bd = boundary_subcomplex(K);
        for (const Simplex& f : bd.faces()) P.on_boundary[static_cast<std::size_t>(P.id(f))] = 1;
        P.boundary_known = true;
    } catch (const error&) {
        P.boundary_known = false;
    }
    return P;
}

}  // namespace morsecraft
