#include "morsecraft/assembly.hpp"

#include <random>
#include <set>
#include <unordered_map>

namespace morsecraft {

namespace {

std::set<Simplex> face_set(const std::vector<Simplex>& faces) {
    return {faces.begin(), faces.end()};
}

Simplex map_simplex(const Simplex& s, const std::map<VertexId, VertexId>& vmap) {
    std::vector<VertexId> vs;
    vs.reserve(s.size());
    for (VertexId v : s.vertices()) vs.push_back(vmap.at(v));
    return Simplex(std::move(vs));
}

std::vector<long> interior_critical_counts(const MorseMatching& V) {
    return morse_vector(V).c_int;
}

}  // namespace

// ------------------------------------------------------------------ glue

GlueResult glue(const GluingSpec& spec) {
    const SimplicialComplex& left = spec.left;
    const SimplicialComplex& right = spec.right;
    if (left.empty() || right.empty()) throw error("glue: empty complex");
    if (left.dim() != right.dim()) throw error("glue: dimension mismatch");
    const int d = left.dim();
    if (spec.identification.empty()) throw error("glue: empty identification");

    const SubcomplexRef bd_left = boundary_subcomplex(left);
    const SubcomplexRef bd_right = boundary_subcomplex(right);

    std::map<VertexId, VertexId> phi;      // left -> right
    std::map<VertexId, VertexId> phi_inv;  // right -> left
    for (auto [l, r] : spec.identification) {
        if (!phi.emplace(l, r).second || !phi_inv.emplace(r, l).second)
            throw error("glue: identification is not a bijection");
        if (!bd_left.contains(Simplex{l}))
            throw error("glue: vertex " + std::to_string(l) + " is not on the left boundary");
        if (!bd_right.contains(Simplex{r}))
            throw error("glue: vertex " + std::to_string(r) + " is not on the right boundary");
    }

    // The identified subcomplexes: all boundary faces spanned by the
    // listed vertices; the vertex map must carry one onto the other.
    std::vector<Simplex> region_left;
    for (const Simplex& f : bd_left.faces()) {
        bool inside = true;
        for (VertexId v : f.vertices()) inside = inside && phi.count(v);
        if (inside) region_left.push_back(f);
    }
    std::set<Simplex> region_right_set;
    for (const Simplex& f : bd_right.faces()) {
        bool inside = true;
        for (VertexId v : f.vertices()) inside = inside && phi_inv.count(v);
        if (inside) region_right_set.insert(f);
    }
    for (const Simplex& f : region_left) {
        if (!region_right_set.erase(map_simplex(f, phi)))
            throw error("glue: identification is not simplicial at " + f.str());
    }
    if (!region_right_set.empty())
        throw error("glue: identification is not simplicial at " +
                    region_right_set.begin()->str() + " (right side)");

    SimplicialComplex region = SimplicialComplex::from_simplices(region_left);
    if (region.dim() != d - 1 || !region.is_pure())
        throw error("glue: identified subcomplex is not pure of dimension d-1");

    // Right labels: identified vertices take their left partner's id,
    // the rest take fresh ids in ascending order.
    std::map<VertexId, VertexId> rho = phi_inv;
    VertexId next = left.fresh_vertex_id();
    for (VertexId v : right.vertex_ids())
        if (!rho.count(v)) rho[v] = next++;

    std::vector<Simplex> facets = left.facets();
    for (const Simplex& f : right.facets()) facets.push_back(map_simplex(f, rho));
    SimplicialComplex M = SimplicialComplex::from_simplices(facets);
    if (M.facets().size() != left.facets().size() + right.facets().size())
        throw error("glue: facet collision between the two sides");

    // No identifications beyond the specified subcomplex.
    std::vector<Simplex> right_faces;
    for (const Simplex& f : right.all_faces()) right_faces.push_back(map_simplex(f, rho));
    std::sort(right_faces.begin(), right_faces.end());
    {
        std::set<Simplex> left_faces = face_set(left.all_faces());
        std::set<Simplex> shared = face_set(region_left);
        for (const Simplex& f : right_faces) {
            const bool in_left = left_faces.count(f) > 0;
            const bool intended = shared.count(f) > 0;
            if (in_left != intended)
                throw error("glue: unintended face collision at " + f.str());
        }
    }

    return GlueResult{M, SubcomplexRef(M, left.all_faces()),
                      SubcomplexRef(M, std::move(right_faces)),
                      SubcomplexRef(M, region_left), std::move(rho)};
}

// --------------------------------------------------------------- compose

MorseMatching compose_boundary_critical(const GluingSpec& spec, const MorseMatching& f,
                                        const MorseMatching& g, const MorseMatching& h,
                                        Budget budget) {
    const int d = spec.left.dim();
    if (d < 2) throw error("compose_boundary_critical: requires dimension >= 2");
    GlueResult glued = glue(spec);

    if (f.complex != spec.left || g.complex != spec.right)
        throw error("compose_boundary_critical: matchings do not match the gluing sides");
    if (h.complex != glued.intersection.as_complex())
        throw error("compose_boundary_critical: h is not on the identified subcomplex");
    for (const MorseMatching* V : {&f, &g, &h}) {
        if (!V->boundary_critical)
            throw error("compose_boundary_critical: inputs must be boundary-critical");
        ValidationReport rep = validate_matching(*V);
        if (!rep.valid)
            throw error("compose_boundary_critical: invalid input matching: " +
                        rep.violations.front());
    }
    const std::vector<long> fc = interior_critical_counts(f);
    const std::vector<long> gc = interior_critical_counts(g);
    const std::vector<long> hc = interior_critical_counts(h);
    if (fc[static_cast<std::size_t>(d)] != 1 || gc[static_cast<std::size_t>(d)] != 1)
        throw error("compose_boundary_critical: f and g need one critical interior facet");
    if (hc[static_cast<std::size_t>(d - 1)] != 1)
        throw error("compose_boundary_critical: h needs one critical interior (d-1)-cell");

    // Target counts from the union theorem's two-case formula.
    std::vector<long> target(static_cast<std::size_t>(d + 1), 0);
    for (int k = 0; k <= d; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        target[i] = fc[i] + gc[i] + (i < hc.size() ? hc[i] : 0);
        if (k >= d - 1) target[i] -= 1;
    }

    // The surplus pair: h's critical interior (d-1)-cell sigma gets
    // matched with the unique right-side facet above it.
    Simplex sigma;
    {
        FacePoset hp = FacePoset::build(h.complex);
        bool found = false;
        for (const Simplex& c : critical_cells(h))
            if (c.dim() == d - 1 && hp.interior(hp.id(c))) {
                sigma = c;
                found = true;
            }
        if (!found)
            throw error("compose_boundary_critical: internal: missing critical (d-1)-cell");
    }
    std::map<VertexId, VertexId> phi;  // left -> right
    for (auto [l, r] : spec.identification) phi[l] = r;
    const Simplex sigma_right = map_simplex(sigma, phi);
    const std::vector<Simplex> above = spec.right.cofacets(sigma_right);
    if (above.size() != 1)
        throw error("compose_boundary_critical: identified cell is not a boundary ridge of "
                    "the right side");
    const Simplex& pivot = above.front();

    // Tier 1: reuse the three matchings, re-targeting g's critical facet
    // to the pivot with a pinned re-search when needed.
    std::optional<MorseMatching> g2;
    bool g_has_pivot = true;
    for (const Simplex& c : critical_cells(g))
        if (c.dim() == d && c != pivot) g_has_pivot = false;
    if (g_has_pivot) {
        g2 = g;
    } else {
        CertificateResult res =
            search_boundary_critical(spec.right, CriticalBounds::exact(gc), budget, pivot);
        if (res.status == SearchStatus::Found) g2 = std::move(res.matching);
    }
    if (g2) {
        MorseMatching u;
        u.complex = glued.complex;
        u.boundary_critical = true;
        u.pairs = f.pairs;
        for (const auto& [a, b] : g2->pairs)
            u.pairs.emplace_back(map_simplex(a, glued.right_relabel),
                                 map_simplex(b, glued.right_relabel));
        for (const auto& p : h.pairs) u.pairs.push_back(p);
        u.pairs.emplace_back(sigma, map_simplex(pivot, glued.right_relabel));
        std::sort(u.pairs.begin(), u.pairs.end());
        if (validate_matching(u).valid && interior_critical_counts(u) == target) return u;
    }

    // Tier 2: the theorem guarantees a matching with the target counts
    // exists; search for any witness.
    CertificateResult res =
        search_boundary_critical(glued.complex, CriticalBounds::exact(target), budget);
    if (res.status == SearchStatus::Found) return *res.matching;
    if (res.status == SearchStatus::Inconclusive)
        throw budget_exhausted("compose_boundary_critical: witness search ran out of budget");
    throw error("compose_boundary_critical: no matching with the required counts exists "
                "(construction failure)");
}

// ------------------------------------------------------- local construction

namespace {

/// One ridge identification step: merge the two off-ridge vertices.
SimplicialComplex identify_ridges(const SimplicialComplex& C, const Simplex& r1,
                                  const Simplex& r2) {
    const int d = C.dim();
    const SubcomplexRef bd = boundary_subcomplex(C);
    if (r1.dim() != d - 1 || r2.dim() != d - 1 || r1 == r2)
        throw error("local construction: step must name two distinct boundary ridges");
    if (!bd.contains(r1) || !bd.contains(r2))
        throw error("local construction: ridge not on the current boundary (" + r1.str() +
                    ", " + r2.str() + ")");
    const Simplex shared = r1.intersect(r2);
    if (static_cast<int>(shared.size()) != d - 1)
        throw error("local construction: ridges " + r1.str() + " and " + r2.str() +
                    " are not adjacent");
    const VertexId x = r1.minus(shared).vertices().front();
    const VertexId y = r2.minus(shared).vertices().front();
    const VertexId keep = std::min(x, y);
    const VertexId drop = std::max(x, y);

    std::vector<Simplex> facets;
    for (const Simplex& F : C.facets()) {
        if (!F.contains(drop)) {
            facets.push_back(F);
            continue;
        }
        if (F.contains(keep))
            throw error("local construction: identifying " + r1.str() + " with " + r2.str() +
                        " pinches facet " + F.str());
        facets.push_back(F.without_vertex(drop).with_vertex(keep));
    }
    std::sort(facets.begin(), facets.end());
    if (std::adjacent_find(facets.begin(), facets.end()) != facets.end())
        throw error("local construction: identification collapses two facets into one");
    SimplicialComplex next = SimplicialComplex::from_simplices(std::move(facets));
    if (!is_pseudomanifold(next))
        throw error("local construction: identification breaks the pseudomanifold property");
    return next;
}

}  // namespace

LocalConstructionResult build_local_construction(const LocalConstructionTrace& trace) {
    if (!is_tree_of_simplices(trace.tree))
        throw error("build_local_construction: seed is not a tree of simplices");
    SimplicialComplex C = trace.tree;
    for (const auto& [r1, r2] : trace.identifications) C = identify_ridges(C, r1, r2);
    const bool closed = boundary_subcomplex(C).empty();
    return LocalConstructionResult{std::move(C), closed};
}

LocalConstructionTrace random_lc_trace(int d, int tree_facets, int identifications,
                                       std::uint64_t seed) {
    if (d < 2) throw error("random_lc_trace: dimension must be >= 2");
    if (tree_facets < 1) throw error("random_lc_trace: need at least one facet");
    std::mt19937_64 rng(seed);

    LocalConstructionTrace trace;
    SimplicialComplex C = simplex_complex(d);
    for (int n = 1; n < tree_facets; ++n) {
        const SubcomplexRef bd = boundary_subcomplex(C);
        std::vector<Simplex> ridges;
        for (const Simplex& f : bd.faces())
            if (f.dim() == d - 1) ridges.push_back(f);
        std::uniform_int_distribution<std::size_t> pick(0, ridges.size() - 1);
        std::vector<Simplex> facets = C.facets();
        facets.push_back(ridges[pick(rng)].with_vertex(C.fresh_vertex_id()));
        C = SimplicialComplex::from_simplices(std::move(facets));
    }
    trace.tree = C;

    for (int step = 0; step < identifications; ++step) {
        const SubcomplexRef bd = boundary_subcomplex(C);
        std::vector<std::pair<Simplex, Simplex>> candidates;
        std::vector<Simplex> ridges;
        for (const Simplex& f : bd.faces())
            if (f.dim() == d - 1) ridges.push_back(f);
        for (std::size_t i = 0; i < ridges.size(); ++i)
            for (std::size_t j = i + 1; j < ridges.size(); ++j)
                if (static_cast<int>(ridges[i].intersect(ridges[j]).size()) == d - 1)
                    candidates.emplace_back(ridges[i], ridges[j]);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        bool applied = false;
        for (const auto& [r1, r2] : candidates) {
            try {
                SimplicialComplex next = identify_ridges(C, r1, r2);
                if (!manifold_check(next).ok) continue;
                C = std::move(next);
                trace.identifications.emplace_back(r1, r2);
                applied = true;
                break;
            } catch (const error&) {
                continue;  // step would break simpliciality; try another
            }
        }
        if (!applied) break;  // no legal identification remains
    }
    return trace;
}

// ----------------------------------------------------------------- is_lc

CertificateResult is_lc(const SimplicialComplex& M, Budget budget) {
    ManifoldCheck mc = manifold_check(M);
    if (!mc.ok) throw error("is_lc: manifold checks failed: " + mc.problems.front());
    if (M.dim() < 2) throw error("is_lc: requires dimension >= 2");
    CertificateResult res =
        search_boundary_critical(M, CriticalBounds::cdepth_profile(M.dim(), 2), budget);
    switch (res.status) {
        case SearchStatus::Found:
            res.detail = "LC: collapse depth >= 2 certificate found";
            break;
        case SearchStatus::ProvedImpossible:
            res.detail = "not LC: exhaustive search found no collapse depth >= 2 matching";
            break;
        case SearchStatus::Inconclusive:
            res.detail = "inconclusive: budget exhausted";
            break;
    }
    return res;
}

// -------------------------------------------------------------- pipeline

namespace {

MorseMatching matching_from_search(const SimplicialComplex& M, const std::vector<long>& target,
                                   Budget budget, const std::string& stage) {
    CertificateResult res = search_boundary_critical(M, CriticalBounds::exact(target), budget);
    if (res.status == SearchStatus::Found) return *res.matching;
    if (res.status == SearchStatus::Inconclusive)
        throw budget_exhausted("handle_pipeline: " + stage + ": budget exhausted");
    throw error("handle_pipeline: " + stage + ": no matching with the required counts");
}

MorseMatching endo_matching(const SimplicialComplex& M, Budget budget,
                            const std::string& stage) {
    CertificateResult res = is_endo_collapsible(M, budget);
    if (res.status == SearchStatus::Found) return *res.matching;
    if (res.status == SearchStatus::Inconclusive)
        throw budget_exhausted("handle_pipeline: " + stage + ": budget exhausted");
    throw error("handle_pipeline: " + stage + ": handle is not endo-collapsible");
}

}  // namespace

MorseMatching handle_pipeline(const HandleDecomposition& H, Budget budget) {
    if (H.handles.empty()) throw error("handle_pipeline: no handles");
    if (H.handles.front().index != 0 || !H.handles.front().attach.empty())
        throw error("handle_pipeline: first handle must be an unattached 0-handle");
    const int d = H.handles.front().complex.dim();
    for (std::size_t i = 1; i < H.handles.size(); ++i) {
        if (H.handles[i].complex.dim() != d)
            throw error("handle_pipeline: handle dimension mismatch");
        if (H.handles[i].index < H.handles[i - 1].index)
            throw error("handle_pipeline: handles must be attached in order of "
                        "increasing index");
    }

    if (d == 1) {
        // Base case: assemble the arcs, then match directly (a polygon
        // keeps one critical vertex and one critical edge; an arc keeps
        // one critical interior edge).
        SimplicialComplex U = H.handles.front().complex;
        for (std::size_t i = 1; i < H.handles.size(); ++i)
            U = glue(GluingSpec{U, H.handles[i].complex, H.handles[i].attach}).complex;
        const bool closed = boundary_subcomplex(U).empty();
        std::vector<long> target = closed ? std::vector<long>{1, 1} : std::vector<long>{0, 1};
        return matching_from_search(U, target, budget, "dimension-1 base case");
    }

    SimplicialComplex U = H.handles.front().complex;
    MorseMatching u = endo_matching(U, budget, "0-handle");
    for (std::size_t i = 1; i < H.handles.size(); ++i) {
        const Handle& handle = H.handles[i];
        const std::string stage = "handle " + std::to_string(i);
        GluingSpec spec{U, handle.complex, handle.attach};
        GlueResult glued = glue(spec);
        SimplicialComplex A = glued.intersection.as_complex();
        if (!is_strongly_connected(A))
            throw error("handle_pipeline: " + stage +
                        ": disconnected attachment regions are not supported");
        MorseMatching g = endo_matching(handle.complex, budget, stage);

        // Attachment matching: one critical interior (d-1)-cell plus one
        // critical interior (d - index)-cell.
        std::vector<long> target(static_cast<std::size_t>(d), 0);
        target[static_cast<std::size_t>(d - 1)] += 1;
        target[static_cast<std::size_t>(d - handle.index)] += 1;
        MorseMatching h = matching_from_search(A, target, budget, stage + " attachment");

        u = compose_boundary_critical(spec, u, g, h, budget);
        U = glued.complex;
    }
    return u;
}

}  // namespace morsecraft
