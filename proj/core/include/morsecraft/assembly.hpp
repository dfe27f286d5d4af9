#pragma once

#include "morsecraft/subdivision.hpp"

namespace morsecraft {

/// Gluing of two manifolds along isomorphic pure codimension-1
/// subcomplexes of their boundaries, given as a vertex-level bijection.
struct GluingSpec {
    SimplicialComplex left;
    SimplicialComplex right;
    std::vector<std::pair<VertexId, VertexId>> identification;  // left -> right vertex
};

struct GlueResult {
    SimplicialComplex complex;  // left labels kept, right relabeled
    SubcomplexRef left_image;
    SubcomplexRef right_image;
    SubcomplexRef intersection;  // the identified subcomplex, left labels
    std::map<VertexId, VertexId> right_relabel;  // right vertex -> label in complex
};

GlueResult glue(const GluingSpec& spec);

/// Union theorem: combine boundary-critical matchings f on left, g on
/// right (each with one critical interior facet) and h on the identified
/// subcomplex (with one critical interior codimension-1 cell, given in
/// left labels) into a boundary-critical matching u on the glued complex
/// with c_int_k(u) = f+g+h for k <= d-2 and f+g+h-1 for k in {d-1, d}.
MorseMatching compose_boundary_critical(const GluingSpec& spec, const MorseMatching& f,
                                        const MorseMatching& g, const MorseMatching& h,
                                        Budget budget = {});

/// A tree of d-simplices plus an ordered list of identifications of
/// adjacent boundary ridges, replayed to build an LC complex.
struct LocalConstructionTrace {
    SimplicialComplex tree;
    std::vector<std::pair<Simplex, Simplex>> identifications;
};

struct LocalConstructionResult {
    SimplicialComplex complex;
    bool closed = false;
};

LocalConstructionResult build_local_construction(const LocalConstructionTrace& trace);

/// Seeded generator of valid traces: grows a random tree of d-simplices,
/// then applies up to `identifications` random ridge identifications that
/// keep the manifold necessary-condition stack passing.
LocalConstructionTrace random_lc_trace(int d, int tree_facets, int identifications,
                                       std::uint64_t seed);

/// Local constructibility via collapse depth >= 2: certificate is a
/// boundary-critical matching with one critical facet and no critical
/// interior codimension-1 cells.
CertificateResult is_lc(const SimplicialComplex& M, Budget budget = {});

struct Handle {
    SimplicialComplex complex;
    int index = 0;
    /// Vertex map from the running union onto this handle's boundary;
    /// empty for the leading 0-handle.
    std::vector<std::pair<VertexId, VertexId>> attach;
};

struct HandleDecomposition {
    std::vector<Handle> handles;
};

/// Fold of compose_boundary_critical over the handle order: the result
/// has one critical interior (d-i)-cell per index-i handle (the leading
/// 0-handle contributes the critical facet).
MorseMatching handle_pipeline(const HandleDecomposition& H, Budget budget = {});

}  // namespace morsecraft
