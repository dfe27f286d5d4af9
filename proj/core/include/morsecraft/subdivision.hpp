#pragma once

#include "morsecraft/search.hpp"

namespace morsecraft {

/// Carrier map of a subdivision: each source face maps to the set of
/// target faces whose interiors subdivide its region. The carrier sets
/// partition the target faces (every target face has exactly one minimal
/// carrier); faces untouched by the subdivision carry themselves.
struct SubdivisionMap {
    SimplicialComplex source;
    SimplicialComplex target;
    std::map<Simplex, std::vector<Simplex>> carrier;

    const std::vector<Simplex>& carrier_of(const Simplex& source_face) const;

    /// Composition: this maps A to B, next maps B to C; result maps A to C.
    SubdivisionMap compose(const SubdivisionMap& next) const;

    static SubdivisionMap identity(const SimplicialComplex& K);
};

/// Inverse lookup: target face -> the unique source face carrying it.
std::map<Simplex, Simplex> reverse_carrier(const SubdivisionMap& m);

/// Stellar subdivision at s: K' = (K - star(s)) + apex * link(s) with a
/// fresh apex vertex. Starring a vertex is the identity subdivision.
std::pair<SimplicialComplex, SubdivisionMap> star_face(const SimplicialComplex& K,
                                                       const Simplex& s);

/// Iterated barycentric subdivision: per round, star every face in weakly
/// decreasing dimension order (lexicographic within a dimension).
std::pair<SimplicialComplex, SubdivisionMap> derived_subdivision(const SimplicialComplex& K,
                                                                 int rounds);

/// Bistellar flip: replace s * boundary(t) by boundary(s) * t. Requires
/// link(M, s) = boundary(t), dim s + dim t = dim M, and t not in M.
SimplicialComplex bistellar_flip(const SimplicialComplex& M, const Simplex& s,
                                 const Simplex& t);

struct PrismResult {
    SimplicialComplex complex;  // triangulates |K| x I
    SubcomplexRef bottom;       // labeled copy of K, original vertex ids
    SubcomplexRef top;          // labeled copy of K, fresh vertex ids
    CollapseSequence onto_bottom;
    std::vector<VertexId> top_ids;  // top vertex id for each vertex_order entry
};

/// Staircase prism over a pure complex, split along vertex_order; the
/// emitted sequence collapses the prism onto its bottom copy.
PrismResult prism_over(const SimplicialComplex& K, const std::vector<VertexId>& vertex_order);

struct NicesubResult {
    SimplicialComplex refined;  // B', endo-collapsible
    SubdivisionMap boundary_map;  // derived subdivision of the boundary
    MorseMatching certificate;  // boundary-critical, one critical facet
    int rounds = 0;             // achieved derived rounds on the boundary
};

/// Re-triangulate a ball-like complex B as a cylinder over a derived
/// subdivision of its boundary plus a cone closing the top, emitting an
/// endo-collapsibility certificate for the result.
NicesubResult nicesub_pipeline(const SimplicialComplex& B, Budget budget = {});

}  // namespace morsecraft
