#include "morsecraft/lift.hpp"

#include <mutex>
#include <numeric>
#include <tuple>

namespace morsecraft {

namespace {

// A subdivided-simplex region is determined up to relabeling by the size
// of the starred face, the size of the untouched remainder, and which
// subdividing facet is withheld. Region endo-collapses are memoized on
// that canonical form.
struct RegionKey {
    int starred = 0;
    int rest = 0;
    int omit_rank = 0;
    bool operator<(const RegionKey& o) const {
        return std::tie(starred, rest, omit_rank) < std::tie(o.starred, o.rest, o.omit_rank);
    }
};

std::vector<std::pair<Simplex, Simplex>> region_collapse_pairs(const RegionKey& key) {
    static std::mutex mu;
    static std::map<RegionKey, std::vector<std::pair<Simplex, Simplex>>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    // Canonical labels: starred face 0..t-1, remainder t..t+r-1, apex t+r.
    const int t = key.starred;
    const int r = key.rest;
    const VertexId apex = static_cast<VertexId>(t + r);
    std::vector<VertexId> starred(static_cast<std::size_t>(t));
    std::iota(starred.begin(), starred.end(), 0);
    std::vector<VertexId> rest(static_cast<std::size_t>(r));
    std::iota(rest.begin(), rest.end(), t);
    const Simplex rest_s(rest);

    std::vector<Simplex> facets;
    for (int i = 0; i < t; ++i) {
        std::vector<VertexId> vs;
        for (int j = 0; j < t; ++j)
            if (j != i) vs.push_back(j);
        Simplex cell = Simplex(vs).join(rest_s).with_vertex(apex);
        facets.push_back(std::move(cell));
    }
    const Simplex withheld = facets[static_cast<std::size_t>(key.omit_rank)];
    SimplicialComplex region = SimplicialComplex::from_simplices(facets);

    FacePoset P = FacePoset::build(region);
    std::vector<char> present(P.size(), 1);
    std::vector<char> keep(P.size(), 1);
    // Interior of the region: faces holding the apex and the full remainder.
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Simplex& f = P.faces[i];
        if (f.contains(apex) && f.contains(rest_s)) keep[i] = 0;
    }
    present[static_cast<std::size_t>(P.id(withheld))] = 0;
    CollapseResult res = collapse_present_onto(P, std::move(present), keep);
    if (res.status != SearchStatus::Found)
        throw error("lift_matching: endo-collapse of subdivided region failed (starred size " +
                    std::to_string(t) + ", remainder size " + std::to_string(r) + ")");

    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(key, std::move(res.sequence.steps)).first->second;
}

/// Pairs disposing of the subdivided region of `source` (which contains
/// the starred face), excluding the withheld subdividing facet.
void append_region_pairs(std::vector<std::pair<Simplex, Simplex>>& out, const Simplex& tau,
                         VertexId apex, const Simplex& source, int omit_rank) {
    const Simplex rest = source.minus(tau);
    RegionKey key{static_cast<int>(tau.size()), static_cast<int>(rest.size()), omit_rank};
    // Canonical id -> actual id.
    std::vector<VertexId> back;
    back.insert(back.end(), tau.vertices().begin(), tau.vertices().end());
    back.insert(back.end(), rest.vertices().begin(), rest.vertices().end());
    back.push_back(apex);
    auto translate = [&](const Simplex& f) {
        std::vector<VertexId> vs;
        for (VertexId v : f.vertices()) vs.push_back(back[static_cast<std::size_t>(v)]);
        return Simplex(std::move(vs));
    };
    for (const auto& [free, coface] : region_collapse_pairs(key))
        out.emplace_back(translate(free), translate(coface));
}

int omit_rank_of(const Simplex& tau, VertexId omitted) {
    const auto& vs = tau.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] == omitted) return static_cast<int>(i);
    throw error("lift_matching: internal: omitted vertex not in starred face");
}

}  // namespace

LiftResult lift_matching(const SimplicialComplex& K, const MorseMatching& V, const Simplex& s) {
    if (V.complex != K) throw error("lift_matching: matching does not belong to the complex");
    ValidationReport report = validate_matching(V);
    if (!report.valid)
        throw error("lift_matching: input matching invalid: " + report.violations.front());
    auto [refined, m] = star_face(K, s);
    if (s.dim() == 0) return {refined, m, V};  // identity subdivision

    const VertexId apex = K.fresh_vertex_id();
    MorseMatching lifted;
    lifted.complex = refined;
    lifted.boundary_critical = V.boundary_critical;

    std::map<Simplex, char> in_pair;
    for (const auto& [f, c] : V.pairs) {
        in_pair[f] = 1;
        in_pair[c] = 1;
    }

    for (const auto& [sigma, Sigma] : V.pairs) {
        const bool lo = sigma.contains(s);
        const bool hi = Sigma.contains(s);
        if (!lo && !hi) {
            lifted.pairs.emplace_back(sigma, Sigma);  // untouched pair
        } else if (lo && hi) {
            // Cone rule: the subdivided region of Sigma is the cone with
            // the opposite vertex v over the subdivided region of sigma.
            const Simplex diff = Sigma.minus(sigma);
            if (diff.size() != 1)
                throw error("lift_matching: pair is not a codimension-1 cover: " +
                            sigma.str() + " < " + Sigma.str());
            const VertexId v = diff.vertices().front();
            for (const Simplex& f : m.carrier_of(sigma))
                lifted.pairs.emplace_back(f, f.with_vertex(v));
        } else if (!lo && hi) {
            // sigma = Sigma minus one starred-face vertex; exactly one
            // subdividing facet of Sigma still contains sigma.
            const Simplex diff = Sigma.minus(sigma);
            if (diff.size() != 1)
                throw error("lift_matching: pair is not a codimension-1 cover: " +
                            sigma.str() + " < " + Sigma.str());
            const VertexId w = diff.vertices().front();
            const Simplex kept =
                Simplex({apex}).join(s.without_vertex(w)).join(Sigma.minus(s));
            lifted.pairs.emplace_back(sigma, kept);
            append_region_pairs(lifted.pairs, s, apex, Sigma, omit_rank_of(s, w));
        } else {
            throw error("lift_matching: matched face below its starred coface contains the "
                        "starred face: " + sigma.str() + " < " + Sigma.str());
        }
    }

    // Critical faces containing s: withhold the lexicographically least
    // subdividing facet, dispose of the rest of the region. In a
    // boundary-critical matching, subdivided boundary faces stay wholly
    // critical instead: their region lies on the new boundary.
    std::map<Simplex, char> on_boundary;
    if (V.boundary_critical) {
        const SubcomplexRef bd = boundary_subcomplex(K);
        for (const Simplex& f : bd.faces()) on_boundary[f] = 1;
    }
    for (const Simplex& f : K.all_faces()) {
        if (in_pair.count(f) || !f.contains(s)) continue;
        if (V.boundary_critical && on_boundary.count(f)) continue;
        const std::vector<Simplex>& region = m.carrier_of(f);
        Simplex least;
        bool first = true;
        for (const Simplex& g : region)
            if (g.dim() == f.dim() && (first || g < least)) {
                least = g;
                first = false;
            }
        // The least subdividing facet omits the largest starred vertex.
        append_region_pairs(lifted.pairs, s, apex, f,
                            static_cast<int>(s.size()) - 1);
        const Simplex check =
            Simplex({apex}).join(s.without_vertex(s.vertices().back())).join(f.minus(s));
        if (check != least)
            throw error("lift_matching: internal: withheld facet is not the least");
    }

    std::sort(lifted.pairs.begin(), lifted.pairs.end());
    ValidationReport lifted_report = validate_matching(lifted);
    if (!lifted_report.valid)
        throw error("lift_matching: lifted matching failed validation: " +
                    lifted_report.violations.front());
    MorseVector before = morse_vector(V);
    MorseVector after = morse_vector(lifted);
    if (V.boundary_critical ? before.c_int != after.c_int : before.c != after.c)
        throw error("lift_matching: critical counts not preserved (defect)");
    return {std::move(refined), std::move(m), std::move(lifted)};
}

LiftResult lift_through_derived(const SimplicialComplex& K, const MorseMatching& V,
                                int rounds) {
    if (rounds < 1) throw error("lift_through_derived: rounds must be >= 1");
    LiftResult acc{K, SubdivisionMap::identity(K), V};
    for (int round = 0; round < rounds; ++round) {
        const SimplicialComplex source = acc.refined;
        for (int k = source.dim(); k >= 1; --k) {
            for (const Simplex& f : source.faces(k)) {
                LiftResult step = lift_matching(acc.refined, acc.lifted, f);
                acc.map = acc.map.compose(step.map);
                acc.refined = std::move(step.refined);
                acc.lifted = std::move(step.lifted);
            }
        }
    }
    return acc;
}

}  // namespace morsecraft
