#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsecraft {

using VertexId = std::int32_t;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resource_error : error {
    using error::error;
};

/// A simplex in canonical form: strictly increasing vertex ids.
/// The empty simplex is a valid value (the join identity) but is never
/// stored as a face of a complex.
class Simplex {
public:
    Simplex() = default;

    explicit Simplex(std::vector<VertexId> vertices) : verts_(std::move(vertices)) {
        std::sort(verts_.begin(), verts_.end());
        for (std::size_t i = 1; i < verts_.size(); ++i)
            if (verts_[i] == verts_[i - 1])
                throw error("simplex has a repeated vertex id: " + std::to_string(verts_[i]));
        for (VertexId v : verts_)
            if (v < 0) throw error("negative vertex id: " + std::to_string(v));
    }

    Simplex(std::initializer_list<VertexId> vertices)
        : Simplex(std::vector<VertexId>(vertices)) {}

    const std::vector<VertexId>& vertices() const { return verts_; }
    bool empty() const { return verts_.empty(); }
    int dim() const { return static_cast<int>(verts_.size()) - 1; }
    std::size_t size() const { return verts_.size(); }

    bool contains(VertexId v) const {
        return std::binary_search(verts_.begin(), verts_.end(), v);
    }

    /// true iff other is a (not necessarily proper) face of this simplex.
    bool contains(const Simplex& other) const {
        return std::includes(verts_.begin(), verts_.end(),
                             other.verts_.begin(), other.verts_.end());
    }

    bool disjoint_from(const Simplex& other) const {
        auto a = verts_.begin();
        auto b = other.verts_.begin();
        while (a != verts_.end() && b != other.verts_.end()) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else return false;
        }
        return true;
    }

    /// Join with a disjoint simplex.
    Simplex join(const Simplex& other) const {
        if (!disjoint_from(other)) throw error("join of non-disjoint simplices");
        std::vector<VertexId> out;
        out.reserve(verts_.size() + other.verts_.size());
        std::merge(verts_.begin(), verts_.end(),
                   other.verts_.begin(), other.verts_.end(), std::back_inserter(out));
        Simplex s;
        s.verts_ = std::move(out);
        return s;
    }

    Simplex with_vertex(VertexId v) const {
        if (contains(v)) throw error("vertex already present in simplex");
        std::vector<VertexId> out(verts_);
        out.insert(std::upper_bound(out.begin(), out.end(), v), v);
        Simplex s;
        s.verts_ = std::move(out);
        return s;
    }

    Simplex without_vertex(VertexId v) const {
        std::vector<VertexId> out;
        out.reserve(verts_.size());
        bool found = false;
        for (VertexId w : verts_) {
            if (w == v) { found = true; continue; }
            out.push_back(w);
        }
        if (!found) throw error("vertex not present in simplex");
        Simplex s;
        s.verts_ = std::move(out);
        return s;
    }

    Simplex intersect(const Simplex& other) const {
        std::vector<VertexId> out;
        std::set_intersection(verts_.begin(), verts_.end(),
                              other.verts_.begin(), other.verts_.end(),
                              std::back_inserter(out));
        Simplex s;
        s.verts_ = std::move(out);
        return s;
    }

    Simplex minus(const Simplex& other) const {
        std::vector<VertexId> out;
        std::set_difference(verts_.begin(), verts_.end(),
                            other.verts_.begin(), other.verts_.end(),
                            std::back_inserter(out));
        Simplex s;
        s.verts_ = std::move(out);
        return s;
    }

    /// All codimension-1 faces, in lexicographic order of the omitted vertex.
    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        if (verts_.empty()) return out;
        out.reserve(verts_.size());
        for (VertexId v : verts_) out.push_back(without_vertex(v));
        return out;
    }

    /// All non-empty faces, including the simplex itself.
    std::vector<Simplex> all_faces() const {
        std::vector<Simplex> out;
        const std::size_t n = verts_.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<VertexId> sub;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::uint64_t{1} << i)) sub.push_back(verts_[i]);
            Simplex s;
            s.verts_ = std::move(sub);
            out.push_back(std::move(s));
        }
        return out;
    }

    /// Canonical string form, e.g. "0-4-7".
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (i) out += '-';
            out += std::to_string(verts_[i]);
        }
        return out;
    }

    static Simplex parse(const std::string& text);

    friend bool operator==(const Simplex& a, const Simplex& b) { return a.verts_ == b.verts_; }
    friend bool operator!=(const Simplex& a, const Simplex& b) { return a.verts_ != b.verts_; }

    /// Order: by dimension first, then lexicographically on vertices.
    friend bool operator<(const Simplex& a, const Simplex& b) {
        if (a.verts_.size() != b.verts_.size()) return a.verts_.size() < b.verts_.size();
        return a.verts_ < b.verts_;
    }

private:
    std::vector<VertexId> verts_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (VertexId v : s.vertices()) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace morsecraft
