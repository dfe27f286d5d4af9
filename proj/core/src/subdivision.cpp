#include "morsecraft/subdivision.hpp"

#include <unordered_map>

namespace morsecraft {

const std::vector<Simplex>& SubdivisionMap::carrier_of(const Simplex& source_face) const {
    auto it = carrier.find(source_face);
    if (it == carrier.end())
        throw error("carrier_of: " + source_face.str() + " is not a source face");
    return it->second;
}

SubdivisionMap SubdivisionMap::compose(const SubdivisionMap& next) const {
    if (next.source != target)
        throw error("SubdivisionMap::compose: intermediate complexes differ");
    SubdivisionMap out;
    out.source = source;
    out.target = next.target;
    for (const auto& [face, mids] : carrier) {
        std::vector<Simplex> acc;
        for (const Simplex& mid : mids) {
            const std::vector<Simplex>& fine = next.carrier_of(mid);
            acc.insert(acc.end(), fine.begin(), fine.end());
        }
        std::sort(acc.begin(), acc.end());
        out.carrier.emplace(face, std::move(acc));
    }
    return out;
}

SubdivisionMap SubdivisionMap::identity(const SimplicialComplex& K) {
    SubdivisionMap m;
    m.source = K;
    m.target = K;
    for (const Simplex& f : K.all_faces()) m.carrier.emplace(f, std::vector<Simplex>{f});
    return m;
}

std::map<Simplex, Simplex> reverse_carrier(const SubdivisionMap& m) {
    std::map<Simplex, Simplex> out;
    for (const auto& [face, targets] : m.carrier)
        for (const Simplex& t : targets) {
            auto [it, fresh] = out.emplace(t, face);
            if (!fresh)
                throw error("carrier sets overlap on target face " + t.str());
        }
    return out;
}

// ------------------------------------------------------------------ star

std::pair<SimplicialComplex, SubdivisionMap> star_face(const SimplicialComplex& K,
                                                       const Simplex& s) {
    if (!K.has_face(s)) throw error("star_face: " + s.str() + " is not a face");
    if (s.dim() == 0) return {K, SubdivisionMap::identity(K)};

    const Simplex apex({K.fresh_vertex_id()});
    std::vector<Simplex> facets;
    for (const Simplex& F : K.facets()) {
        if (!F.contains(s)) {
            facets.push_back(F);
            continue;
        }
        const Simplex rest = F.minus(s);
        for (const Simplex& sf : s.facets()) facets.push_back(apex.join(sf).join(rest));
    }
    SimplicialComplex refined = SimplicialComplex::from_simplices(std::move(facets));

    SubdivisionMap m;
    m.source = K;
    m.target = refined;
    // Proper faces of s, including the empty simplex.
    std::vector<Simplex> proper{Simplex{}};
    for (const Simplex& f : s.all_faces())
        if (f != s) proper.push_back(f);
    for (const Simplex& G : K.all_faces()) {
        if (!G.contains(s)) {
            m.carrier.emplace(G, std::vector<Simplex>{G});
            continue;
        }
        const Simplex rest = G.minus(s);
        std::vector<Simplex> region;
        region.reserve(proper.size());
        for (const Simplex& f : proper) region.push_back(apex.join(f).join(rest));
        std::sort(region.begin(), region.end());
        m.carrier.emplace(G, std::move(region));
    }
    return {std::move(refined), std::move(m)};
}

std::pair<SimplicialComplex, SubdivisionMap> derived_subdivision(const SimplicialComplex& K,
                                                                 int rounds) {
    if (rounds < 1) throw error("derived_subdivision: rounds must be >= 1");
    if (K.empty()) throw error("derived_subdivision: empty complex");
    SimplicialComplex current = K;
    SubdivisionMap m = SubdivisionMap::identity(K);
    for (int round = 0; round < rounds; ++round) {
        const SimplicialComplex source = current;
        for (int k = source.dim(); k >= 1; --k) {
            for (const Simplex& f : source.faces(k)) {
                auto [next, step] = star_face(current, f);
                m = m.compose(step);
                current = std::move(next);
            }
        }
    }
    return {std::move(current), std::move(m)};
}

// ------------------------------------------------------------------ flip

SimplicialComplex bistellar_flip(const SimplicialComplex& M, const Simplex& s,
                                 const Simplex& t) {
    if (!M.has_face(s)) throw error("bistellar_flip: " + s.str() + " is not a face");
    if (t.empty()) throw error("bistellar_flip: empty replacement simplex");
    if (!s.disjoint_from(t)) throw error("bistellar_flip: simplices share vertices");
    if (M.has_face(t)) throw error("bistellar_flip: " + t.str() + " is already a face");
    if (s.dim() + t.dim() != M.dim())
        throw error("bistellar_flip: dim s + dim t must equal dim M");
    if (t.dim() == 0) {
        if (!M.cofacets(s).empty())
            throw error("bistellar_flip: link of " + s.str() + " is not the boundary of " +
                        t.str());
    } else if (link(M, s) != SimplicialComplex::from_simplices(t.facets())) {
        throw error("bistellar_flip: link of " + s.str() + " is not the boundary of " +
                    t.str());
    }

    std::vector<Simplex> facets;
    for (const Simplex& F : M.facets())
        if (!F.contains(s)) facets.push_back(F);
    for (const Simplex& sf : s.facets()) facets.push_back(sf.join(t));
    return SimplicialComplex::from_simplices(std::move(facets));
}

// ----------------------------------------------------------------- prism

PrismResult prism_over(const SimplicialComplex& K, const std::vector<VertexId>& vertex_order) {
    if (K.empty()) throw error("prism_over: empty complex");
    if (!K.is_pure()) throw error("prism_over: complex is not pure");
    {
        std::vector<VertexId> sorted = vertex_order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != K.vertex_ids())
            throw error("prism_over: vertex_order is not a permutation of the vertex set");
    }
    std::unordered_map<VertexId, int> rank;
    for (std::size_t i = 0; i < vertex_order.size(); ++i)
        rank[vertex_order[i]] = static_cast<int>(i);
    const VertexId base = K.fresh_vertex_id();
    auto top_of = [&](VertexId v) { return base + rank.at(v); };

    std::vector<Simplex> facets;
    for (const Simplex& F : K.facets()) {
        std::vector<VertexId> by_rank = F.vertices();
        std::sort(by_rank.begin(), by_rank.end(),
                  [&](VertexId a, VertexId b) { return rank.at(a) < rank.at(b); });
        // Staircase prisms: bottom of the first i+1 vertices, top of the rest.
        for (std::size_t i = 0; i < by_rank.size(); ++i) {
            std::vector<VertexId> cell(by_rank.begin(), by_rank.begin() + i + 1);
            for (std::size_t j = i; j < by_rank.size(); ++j) cell.push_back(top_of(by_rank[j]));
            facets.emplace_back(std::move(cell));
        }
    }
    SimplicialComplex C = SimplicialComplex::from_simplices(std::move(facets));

    auto lift = [&](const Simplex& f) {
        std::vector<VertexId> vs;
        for (VertexId v : f.vertices()) vs.push_back(top_of(v));
        return Simplex(std::move(vs));
    };
    std::vector<Simplex> bottom_faces = K.all_faces();
    std::vector<Simplex> top_faces;
    for (const Simplex& f : bottom_faces) top_faces.push_back(lift(f));
    std::sort(top_faces.begin(), top_faces.end());

    // Collapse onto the bottom: match each face holding a top vertex with
    // its toggle on the bottom companion of the lowest top vertex.
    FacePoset P = FacePoset::build(C);
    std::vector<std::pair<int, int>> id_pairs;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Simplex& G = P.faces[i];
        VertexId lowest_top = -1;
        for (VertexId v : G.vertices())
            if (v >= base) {
                lowest_top = v;
                break;
            }
        if (lowest_top < 0) continue;  // bottom face, survives
        const VertexId b = vertex_order[static_cast<std::size_t>(lowest_top - base)];
        if (G.contains(b)) continue;  // recorded from the free side
        id_pairs.emplace_back(static_cast<int>(i), P.id(G.with_vertex(b)));
    }
    std::optional<CollapseSequence> seq =
        schedule_pairs(P, id_pairs, std::vector<char>(P.size(), 1));
    if (!seq) throw error("prism_over: staircase matching failed to schedule");

    std::vector<VertexId> top_ids;
    for (VertexId v : vertex_order) top_ids.push_back(top_of(v));
    return PrismResult{C, SubcomplexRef(C, std::move(bottom_faces)),
                       SubcomplexRef(C, std::move(top_faces)), std::move(*seq),
                       std::move(top_ids)};
}

// --------------------------------------------------------------- nicesub

NicesubResult nicesub_pipeline(const SimplicialComplex& B, Budget budget) {
    if (B.empty() || !B.is_pure()) throw error("nicesub_pipeline: complex must be pure");
    ManifoldCheck mc = manifold_check(B);
    if (!mc.ok) throw error("nicesub_pipeline: manifold checks failed: " + mc.problems.front());
    SubcomplexRef bd = boundary_subcomplex(B);
    if (bd.empty()) throw error("nicesub_pipeline: complex has no boundary");

    // Derive the boundary sphere until an endo-collapsibility certificate
    // for it is found; the cone over it inherits the certificate.
    const SimplicialComplex S0 = bd.as_complex();
    SimplicialComplex S = S0;
    SubdivisionMap boundary_map = SubdivisionMap::identity(S0);
    int rounds = 0;
    constexpr int kMaxRounds = 3;
    std::optional<MorseMatching> sphere_cert;
    while (true) {
        if (S.dim() == 0) {
            MorseMatching trivial;
            trivial.complex = S;
            trivial.boundary_critical = true;
            sphere_cert = std::move(trivial);
            break;
        }
        CertificateResult res = is_endo_collapsible(S, budget);
        if (res.status == SearchStatus::Found) {
            sphere_cert = std::move(res.matching);
            break;
        }
        if (res.status == SearchStatus::Inconclusive)
            throw error("nicesub_pipeline: boundary sphere certificate search ran out of "
                        "budget at round " +
                        std::to_string(rounds));
        if (rounds == kMaxRounds)
            throw error("nicesub_pipeline: no endo-collapsible derived subdivision of the "
                        "boundary within " +
                        std::to_string(kMaxRounds) + " rounds");
        auto [finer, step] = derived_subdivision(S, 1);
        boundary_map = boundary_map.compose(step);
        S = std::move(finer);
        ++rounds;
    }

    // Cylinder over the sphere, collapsing onto the bottom copy.
    PrismResult prism = prism_over(S, S.vertex_ids());
    std::unordered_map<VertexId, VertexId> to_top;
    {
        const std::vector<VertexId> order = S.vertex_ids();
        for (std::size_t i = 0; i < order.size(); ++i) to_top[order[i]] = prism.top_ids[i];
    }
    auto lift_top = [&](const Simplex& f) {
        std::vector<VertexId> vs;
        for (VertexId v : f.vertices()) vs.push_back(to_top.at(v));
        return Simplex(std::move(vs));
    };

    // Cone closing the top copy.
    const Simplex apex({prism.complex.fresh_vertex_id()});
    std::vector<Simplex> facets = prism.complex.facets();
    for (const Simplex& F : S.facets()) facets.push_back(apex.join(lift_top(F)));
    SimplicialComplex refined = SimplicialComplex::from_simplices(std::move(facets));

    // Certificate: cone pairs from the sphere certificate, then the
    // cylinder's staircase pairs; critical facet = apex * (critical sphere
    // facet), paired apex * (critical sphere vertex) with the bare apex.
    MorseMatching cert;
    cert.complex = refined;
    cert.boundary_critical = true;
    std::vector<Simplex> sphere_crit;
    {
        std::map<Simplex, char> in_pair;
        for (const auto& [f, c] : sphere_cert->pairs) {
            in_pair[f] = 1;
            in_pair[c] = 1;
            cert.pairs.emplace_back(apex.join(lift_top(f)), apex.join(lift_top(c)));
        }
        for (const Simplex& f : S.all_faces())
            if (!in_pair.count(f)) sphere_crit.push_back(f);
    }
    if (sphere_crit.size() != 2)
        throw error("nicesub_pipeline: sphere certificate has unexpected critical cells");
    const Simplex& crit_vertex = sphere_crit.front();  // sorted: vertex first
    cert.pairs.emplace_back(apex, apex.join(lift_top(crit_vertex)));
    for (const auto& step : prism.onto_bottom.steps) cert.pairs.emplace_back(step);
    std::sort(cert.pairs.begin(), cert.pairs.end());

    ValidationReport report = validate_matching(cert);
    if (!report.valid)
        throw error("nicesub_pipeline: emitted certificate failed validation: " +
                    report.violations.front());

    return NicesubResult{std::move(refined), std::move(boundary_map), std::move(cert), rounds};
}

}  // namespace morsecraft
