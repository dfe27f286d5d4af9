#include "morsecraft/complex.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>

namespace morsecraft {

namespace {
std::atomic<std::size_t> g_face_cap{50'000'000};
}

void SimplicialComplex::set_face_cap(std::size_t cap) { g_face_cap.store(cap); }
std::size_t SimplicialComplex::face_cap() { return g_face_cap.load(); }

struct SimplicialComplex::Impl {
    std::vector<Simplex> facets;  // sorted, inclusion-maximal
    int dim = -1;

    mutable std::mutex mu;
    mutable bool materialized = false;
    mutable std::vector<std::vector<Simplex>> faces_by_dim;
    mutable std::unordered_set<Simplex, SimplexHash> face_set;
    mutable std::size_t face_count = 0;

    void materialize() const {
        std::lock_guard<std::mutex> lock(mu);
        if (materialized) return;
        faces_by_dim.assign(static_cast<std::size_t>(dim + 1), {});
        for (const Simplex& f : facets) {
            for (Simplex& s : f.all_faces()) {
                if (face_set.insert(s).second) {
                    if (face_set.size() > face_cap())
                        throw resource_error("face cap exceeded (" +
                                             std::to_string(face_cap()) + " faces)");
                    faces_by_dim[static_cast<std::size_t>(s.dim())].push_back(std::move(s));
                }
            }
        }
        for (auto& level : faces_by_dim) std::sort(level.begin(), level.end());
        face_count = face_set.size();
        materialized = true;
    }
};

SimplicialComplex::SimplicialComplex() : impl_(std::make_shared<Impl>()) {}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> facets) {
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    // Drop dominated facets. Sorted by dimension, so only later (larger)
    // entries can dominate earlier ones.
    std::vector<Simplex> maximal;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = i + 1; j < facets.size() && !dominated; ++j)
            if (facets[j].contains(facets[i])) dominated = true;
        if (!dominated) maximal.push_back(facets[i]);
    }
    for (const Simplex& f : maximal)
        if (f.empty()) throw error("the empty simplex cannot be a facet");
    auto impl = std::make_shared<Impl>();
    impl->facets = std::move(maximal);
    for (const Simplex& f : impl->facets) impl->dim = std::max(impl->dim, f.dim());
    SimplicialComplex K;
    K.impl_ = std::move(impl);
    return K;
}

SimplicialComplex SimplicialComplex::from_facet_lists(
    const std::vector<std::vector<VertexId>>& lists) {
    std::vector<Simplex> facets;
    facets.reserve(lists.size());
    for (const auto& l : lists) facets.emplace_back(l);
    return from_simplices(std::move(facets));
}

const std::vector<Simplex>& SimplicialComplex::facets() const { return impl_->facets; }
int SimplicialComplex::dim() const { return impl_->dim; }

bool SimplicialComplex::is_pure() const {
    for (const Simplex& f : impl_->facets)
        if (f.dim() != impl_->dim) return false;
    return true;
}

const std::vector<Simplex>& SimplicialComplex::faces(int k) const {
    static const std::vector<Simplex> none;
    if (k < 0 || k > dim()) return none;
    impl_->materialize();
    return impl_->faces_by_dim[static_cast<std::size_t>(k)];
}

std::vector<Simplex> SimplicialComplex::all_faces() const {
    std::vector<Simplex> out;
    for (int k = 0; k <= dim(); ++k) {
        const auto& level = faces(k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

bool SimplicialComplex::has_face(const Simplex& s) const {
    if (s.empty() || s.dim() > dim()) return false;
    impl_->materialize();
    return impl_->face_set.count(s) > 0;
}

std::size_t SimplicialComplex::face_count() const {
    impl_->materialize();
    return impl_->face_count;
}

std::vector<Simplex> SimplicialComplex::cofacets(const Simplex& s) const {
    std::vector<Simplex> out;
    for (const Simplex& c : faces(s.dim() + 1))
        if (c.contains(s)) out.push_back(c);
    return out;
}

std::vector<VertexId> SimplicialComplex::vertex_ids() const {
    std::vector<VertexId> out;
    for (const Simplex& v : faces(0)) out.push_back(v.vertices()[0]);
    return out;
}

VertexId SimplicialComplex::fresh_vertex_id() const {
    VertexId next = 0;
    for (const Simplex& f : impl_->facets)
        for (VertexId v : f.vertices()) next = std::max(next, v + 1);
    return next;
}

std::vector<long> SimplicialComplex::f_vector() const {
    std::vector<long> out;
    for (int k = 0; k <= dim(); ++k) out.push_back(static_cast<long>(faces(k).size()));
    return out;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (int k = 0; k <= dim(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(faces(k).size());
    return chi;
}

SubcomplexRef::SubcomplexRef(SimplicialComplex parent, std::vector<Simplex> faces)
    : parent_(std::move(parent)), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end());
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    std::unordered_set<Simplex, SimplexHash> set(faces_.begin(), faces_.end());
    for (const Simplex& f : faces_) {
        if (!parent_.has_face(f))
            throw error("subcomplex face " + f.str() + " is not a face of the parent");
        if (f.dim() > 0)
            for (const Simplex& sub : f.facets())
                if (!set.count(sub))
                    throw error("subcomplex not closed under subsets at " + f.str());
    }
}

bool SubcomplexRef::contains(const Simplex& s) const {
    return std::binary_search(faces_.begin(), faces_.end(), s);
}

SimplicialComplex SubcomplexRef::as_complex() const {
    return SimplicialComplex::from_simplices(faces_);
}

SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& facet_lists) {
    if (facet_lists.empty()) throw error("build_complex: empty facet list");
    return SimplicialComplex::from_facet_lists(facet_lists);
}

SimplicialComplex link(const SimplicialComplex& K, const Simplex& s) {
    if (!K.has_face(s)) throw error("link: " + s.str() + " is not a face of the complex");
    std::vector<Simplex> facets;
    for (const Simplex& f : K.facets())
        if (f.contains(s)) facets.push_back(f.minus(s));
    facets.erase(std::remove_if(facets.begin(), facets.end(),
                                [](const Simplex& t) { return t.empty(); }),
                 facets.end());
    return SimplicialComplex::from_simplices(std::move(facets));
}

SubcomplexRef star(const SimplicialComplex& K, const Simplex& s) {
    if (!K.has_face(s)) throw error("star: " + s.str() + " is not a face of the complex");
    std::unordered_set<Simplex, SimplexHash> faces;
    for (const Simplex& f : K.facets())
        if (f.contains(s))
            for (Simplex& sub : f.all_faces()) faces.insert(std::move(sub));
    return SubcomplexRef(K, std::vector<Simplex>(faces.begin(), faces.end()));
}

SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B) {
    if (A.empty()) return B;
    if (B.empty()) return A;
    for (VertexId v : A.vertex_ids())
        for (VertexId w : B.vertex_ids())
            if (v == w) throw error("join: vertex id collision at " + std::to_string(v));
    std::vector<Simplex> facets;
    for (const Simplex& a : A.facets())
        for (const Simplex& b : B.facets()) facets.push_back(a.join(b));
    return SimplicialComplex::from_simplices(std::move(facets));
}

SimplicialComplex cone(const SimplicialComplex& K, VertexId apex_id) {
    for (VertexId v : K.vertex_ids())
        if (v == apex_id) throw error("cone: apex id " + std::to_string(apex_id) + " not fresh");
    return join(K, SimplicialComplex::from_simplices({Simplex{apex_id}}));
}

namespace {

// ridge -> incident facet indices, for a pure complex
std::unordered_map<Simplex, std::vector<int>, SimplexHash> ridge_incidence(
    const SimplicialComplex& M) {
    std::unordered_map<Simplex, std::vector<int>, SimplexHash> inc;
    const auto& facets = M.facets();
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (Simplex& r : facets[i].facets()) inc[std::move(r)].push_back(static_cast<int>(i));
    return inc;
}

}  // namespace

SubcomplexRef boundary_subcomplex(const SimplicialComplex& M) {
    if (M.empty()) return SubcomplexRef(M, {});
    if (!M.is_pure()) throw error("boundary_subcomplex: complex is not pure");
    auto inc = ridge_incidence(M);
    std::unordered_set<Simplex, SimplexHash> faces;
    for (const auto& [ridge, facet_ids] : inc) {
        if (facet_ids.size() > 2)
            throw error("boundary_subcomplex: ridge " + ridge.str() + " lies in " +
                        std::to_string(facet_ids.size()) + " facets");
        if (facet_ids.size() == 1)
            for (Simplex& sub : ridge.all_faces()) faces.insert(std::move(sub));
    }
    return SubcomplexRef(M, std::vector<Simplex>(faces.begin(), faces.end()));
}

bool DualGraph::connected() const {
    if (node_count == 0) return true;
    std::vector<std::vector<int>> adj(node_count);
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<char> seen(node_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == node_count;
}

bool DualGraph::acyclic() const {
    // A graph (with possible multi-edges counted) is a forest iff
    // #edges = #nodes - #components.
    std::vector<int> parent(node_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    return true;
}

DualGraph dual_graph(const SimplicialComplex& M) {
    if (!M.is_pure()) throw error("dual_graph: complex is not pure");
    DualGraph g;
    g.node_count = M.facets().size();
    for (const auto& [ridge, facet_ids] : ridge_incidence(M)) {
        (void)ridge;
        for (std::size_t i = 0; i < facet_ids.size(); ++i)
            for (std::size_t j = i + 1; j < facet_ids.size(); ++j)
                g.edges.emplace_back(facet_ids[i], facet_ids[j]);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool is_pseudomanifold(const SimplicialComplex& K) {
    if (K.empty()) return true;
    if (!K.is_pure()) return false;
    for (const auto& [ridge, facet_ids] : ridge_incidence(K)) {
        (void)ridge;
        if (facet_ids.size() > 2) return false;
    }
    return true;
}

bool is_strongly_connected(const SimplicialComplex& K) {
    if (K.empty()) return true;
    if (!K.is_pure()) return false;
    return dual_graph(K).connected();
}

bool is_tree_of_simplices(const SimplicialComplex& M) {
    if (M.empty() || !M.is_pure()) return false;
    if (!is_pseudomanifold(M)) return false;
    DualGraph g = dual_graph(M);
    if (!g.connected() || !g.acyclic()) return false;
    return !boundary_subcomplex(M).empty();
}

// GF(2) Betti numbers live in homology.cpp.
std::vector<long> betti_gf2(const SimplicialComplex& K);

namespace {

// Classification of a vertex link as a 1-manifold: single path or single cycle.
bool link_is_path(const SimplicialComplex& L) {
    if (L.dim() != 1 || !L.is_pure()) return false;
    if (!is_pseudomanifold(L) || !is_strongly_connected(L)) return false;
    return !boundary_subcomplex(L).empty();
}

bool link_is_cycle(const SimplicialComplex& L) {
    if (L.dim() != 1 || !L.is_pure()) return false;
    if (!is_pseudomanifold(L) || !is_strongly_connected(L)) return false;
    return boundary_subcomplex(L).empty();
}

bool link_is_sphere2(const SimplicialComplex& L) {
    if (L.dim() != 2 || !is_pseudomanifold(L) || !is_strongly_connected(L)) return false;
    if (!boundary_subcomplex(L).empty()) return false;
    // Closed surface with chi = 2 and beta = (1,0,1) over GF(2) is S^2.
    if (L.euler_characteristic() != 2) return false;
    return betti_gf2(L) == std::vector<long>{1, 0, 1};
}

bool link_is_disk2(const SimplicialComplex& L) {
    if (L.dim() != 2 || !is_pseudomanifold(L) || !is_strongly_connected(L)) return false;
    if (boundary_subcomplex(L).empty()) return false;
    if (L.euler_characteristic() != 1) return false;
    return betti_gf2(L) == std::vector<long>{1, 0, 0};
}

}  // namespace

ManifoldCheck manifold_check(const SimplicialComplex& M) {
    ManifoldCheck r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.problems.push_back(std::move(msg));
    };
    if (M.empty()) {
        fail("empty complex");
        return r;
    }
    if (!is_pseudomanifold(M)) {
        fail("not a pseudomanifold");
        return r;
    }
    if (!is_strongly_connected(M)) fail("dual graph not connected");
    const int d = M.dim();
    if (d >= 1 && d <= 3) {
        SubcomplexRef bd = boundary_subcomplex(M);
        for (const Simplex& v : M.faces(0)) {
            SimplicialComplex L = link(M, v);
            bool on_boundary = bd.contains(v);
            bool good = false;
            switch (d) {
                case 1:
                    good = on_boundary ? L.faces(0).size() == 1 : L.faces(0).size() == 2;
                    break;
                case 2:
                    good = on_boundary ? link_is_path(L) : link_is_cycle(L);
                    break;
                case 3:
                    good = on_boundary ? link_is_disk2(L) : link_is_sphere2(L);
                    break;
                default:
                    break;
            }
            if (!good)
                fail("link of vertex " + v.str() + " is not a " +
                     (on_boundary ? "disk" : "sphere"));
        }
    } else if (d >= 4) {
        if (!betti_gf2(M).empty() && betti_gf2(M)[0] != 1) fail("not connected (beta_0 != 1)");
    }
    return r;
}

SimplicialComplex simplex_complex(int d, VertexId first_id) {
    std::vector<VertexId> verts(static_cast<std::size_t>(d + 1));
    std::iota(verts.begin(), verts.end(), first_id);
    return SimplicialComplex::from_simplices({Simplex(verts)});
}

SimplicialComplex boundary_simplex(int d, VertexId first_id) {
    std::vector<VertexId> verts(static_cast<std::size_t>(d + 1));
    std::iota(verts.begin(), verts.end(), first_id);
    return SimplicialComplex::from_simplices(Simplex(verts).facets());
}

SimplicialComplex polygon(int n, VertexId first_id) {
    if (n < 3) throw error("polygon needs at least 3 vertices");
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back(Simplex{first_id + i, first_id + (i + 1) % n});
    return SimplicialComplex::from_simplices(std::move(edges));
}

SimplicialComplex path_complex(int n_edges, VertexId first_id) {
    if (n_edges < 1) throw error("path needs at least one edge");
    std::vector<Simplex> edges;
    for (int i = 0; i < n_edges; ++i)
        edges.push_back(Simplex{first_id + i, first_id + i + 1});
    return SimplicialComplex::from_simplices(std::move(edges));
}

SimplicialComplex octahedron() {
    std::vector<Simplex> facets;
    // Antipodal pairs: (0,1), (2,3), (4,5); facets avoid antipodes.
    for (VertexId a : {0, 1})
        for (VertexId b : {2, 3})
            for (VertexId c : {4, 5}) facets.push_back(Simplex{a, b, c});
    return SimplicialComplex::from_simplices(std::move(facets));
}

}  // namespace morsecraft
