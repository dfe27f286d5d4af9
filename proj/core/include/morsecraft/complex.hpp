#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "morsecraft/simplex.hpp"

namespace morsecraft {

/// Immutable simplicial complex, cheap to copy (shared internal state).
/// Faces beyond the facet list are materialized on demand, under a lock,
/// subject to a global face cap (derived subdivisions grow factorially).
class SimplicialComplex {
public:
    SimplicialComplex();  // the empty complex (dim -1)

    /// Canonicalizes facets, drops dominated ones. Throws on repeated
    /// vertex ids within a facet. An empty facet list yields the empty
    /// complex; build_complex() below is the user-facing strict variant.
    static SimplicialComplex from_simplices(std::vector<Simplex> facets);
    static SimplicialComplex from_facet_lists(const std::vector<std::vector<VertexId>>& lists);

    const std::vector<Simplex>& facets() const;
    int dim() const;
    bool empty() const { return dim() < 0; }
    bool is_pure() const;

    /// All faces of dimension k, sorted; empty vector when out of range.
    const std::vector<Simplex>& faces(int k) const;
    std::vector<Simplex> all_faces() const;
    bool has_face(const Simplex& s) const;
    std::size_t face_count() const;

    /// Codimension-1 cofaces of s within the complex.
    std::vector<Simplex> cofacets(const Simplex& s) const;

    std::vector<VertexId> vertex_ids() const;
    VertexId fresh_vertex_id() const;  // max existing id + 1 (0 when empty)

    std::vector<long> f_vector() const;
    long euler_characteristic() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.facets() == b.facets();
    }
    friend bool operator!=(const SimplicialComplex& a, const SimplicialComplex& b) {
        return !(a == b);
    }

    static void set_face_cap(std::size_t cap);
    static std::size_t face_cap();

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// A set of faces of a parent complex, closed under taking subsets.
class SubcomplexRef {
public:
    SubcomplexRef(SimplicialComplex parent, std::vector<Simplex> faces);

    const SimplicialComplex& parent() const { return parent_; }
    const std::vector<Simplex>& faces() const { return faces_; }  // sorted
    bool empty() const { return faces_.empty(); }
    bool contains(const Simplex& s) const;

    /// The face set as a standalone complex.
    SimplicialComplex as_complex() const;

private:
    SimplicialComplex parent_;
    std::vector<Simplex> faces_;
};

/// Strict construction entry point: errors on empty input.
SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& facet_lists);

/// link(K, s) = { t : t disjoint from s and t * s in K }.
SimplicialComplex link(const SimplicialComplex& K, const Simplex& s);

/// All faces containing s, plus their subfaces.
SubcomplexRef star(const SimplicialComplex& K, const Simplex& s);

SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B);
SimplicialComplex cone(const SimplicialComplex& K, VertexId apex_id);

/// Ridges lying in exactly one facet, closed downward. Requires a pure
/// pseudomanifold; empty for closed complexes.
SubcomplexRef boundary_subcomplex(const SimplicialComplex& M);

struct DualGraph {
    std::size_t node_count = 0;                    // facets, in sorted order
    std::vector<std::pair<int, int>> edges;        // shared ridges
    bool connected() const;
    bool acyclic() const;
};

DualGraph dual_graph(const SimplicialComplex& M);

bool is_pseudomanifold(const SimplicialComplex& K);
bool is_strongly_connected(const SimplicialComplex& K);

/// Necessary-condition check for "tree of d-simplices": dual graph is a
/// connected tree and M is a pseudomanifold with non-empty boundary.
/// At d >= 3 this does not certify that M is a ball.
bool is_tree_of_simplices(const SimplicialComplex& M);

struct ManifoldCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

/// The documented necessary-condition stack for "M is a manifold":
/// pseudomanifold + strong connectivity, vertex-link classification for
/// d <= 3, Betti sanity only for d >= 4.
ManifoldCheck manifold_check(const SimplicialComplex& M);

// Small standard shapes, used throughout the tests and the search fixtures.
SimplicialComplex simplex_complex(int d, VertexId first_id = 0);
SimplicialComplex boundary_simplex(int d, VertexId first_id = 0);  // boundary of the d-simplex
SimplicialComplex polygon(int n, VertexId first_id = 0);           // n-cycle
SimplicialComplex path_complex(int n_edges, VertexId first_id = 0);
SimplicialComplex octahedron();

}  // namespace morsecraft
