#include "morsecraft/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace morsecraft {

using nlohmann::json;

Simplex Simplex::parse(const std::string& text) {
    std::vector<VertexId> vs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dash = std::min(text.find('-', pos), text.size());
        const std::string token = text.substr(pos, dash - pos);
        try {
            std::size_t used = 0;
            const int v = std::stoi(token, &used);
            if (used != token.size() || v < 0) throw std::invalid_argument(token);
            vs.push_back(static_cast<VertexId>(v));
        } catch (const std::exception&) {
            throw error("cannot parse simplex \"" + text + "\": bad vertex id \"" + token +
                        "\"");
        }
        pos = dash + 1;
    }
    return Simplex(std::move(vs));
}

// ----------------------------------------------------------- facet files

SimplicialComplex parse_facets(const std::string& text, const std::string& origin) {
    std::vector<Simplex> facets;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<VertexId> vs;
        std::string token;
        while (fields >> token) {
            if (token.front() == '#') break;
            try {
                std::size_t used = 0;
                const int v = std::stoi(token, &used);
                if (used != token.size() || v < 0) throw std::invalid_argument(token);
                vs.push_back(static_cast<VertexId>(v));
            } catch (const std::exception&) {
                throw error(origin + ":" + std::to_string(line_no) + ": bad vertex id \"" +
                            token + "\"");
            }
        }
        if (vs.empty()) continue;
        try {
            facets.emplace_back(std::move(vs));
        } catch (const error& e) {
            throw error(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (facets.empty()) throw error(origin + ": no facets");
    return SimplicialComplex::from_simplices(std::move(facets));
}

SimplicialComplex read_facet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_facets(buffer.str(), path);
}

std::string facet_text(const SimplicialComplex& K) {
    std::string out;
    for (const Simplex& f : K.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(f.vertices()[i]);
        }
        out += '\n';
    }
    return out;
}

void write_facet_file(const std::string& path, const SimplicialComplex& K) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << facet_text(K);
}

std::string complex_hash(const SimplicialComplex& K) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : facet_text(K)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ------------------------------------------------------------- matchings

std::string matching_json(const MorseMatching& V) {
    MorseVector mv = morse_vector(V);  // throws on invalid matchings
    json pairs = json::array();
    for (const auto& [f, c] : V.pairs) pairs.push_back({f.str(), c.str()});
    json critical = json::array();
    for (const Simplex& f : critical_cells(V)) critical.push_back(f.str());
    json out{{"complex_hash", complex_hash(V.complex)},
             {"boundary_critical", V.boundary_critical},
             {"pairs", std::move(pairs)},
             {"critical", std::move(critical)},
             {"morse_vector", mv.c},
             {"c_int", mv.c_int}};
    return out.dump(2) + "\n";
}

MorseMatching matching_from_json(const std::string& text, const SimplicialComplex& K) {
    json doc = json::parse(text);
    if (doc.at("complex_hash").get<std::string>() != complex_hash(K))
        throw error("matching JSON does not belong to this complex (hash mismatch)");
    MorseMatching V;
    V.complex = K;
    V.boundary_critical = doc.at("boundary_critical").get<bool>();
    for (const auto& entry : doc.at("pairs"))
        V.pairs.emplace_back(Simplex::parse(entry.at(0).get<std::string>()),
                             Simplex::parse(entry.at(1).get<std::string>()));
    return V;
}

std::string collapse_json(const CollapseSequence& seq) {
    json steps = json::array();
    for (const auto& [f, c] : seq.steps) steps.push_back({f.str(), c.str()});
    return json{{"steps", std::move(steps)}}.dump(2) + "\n";
}

CollapseSequence collapse_from_json(const std::string& text) {
    json doc = json::parse(text);
    CollapseSequence seq;
    for (const auto& entry : doc.at("steps"))
        seq.steps.emplace_back(Simplex::parse(entry.at(0).get<std::string>()),
                               Simplex::parse(entry.at(1).get<std::string>()));
    return seq;
}

std::string subdivision_map_json(const SubdivisionMap& m) {
    json out = json::object();
    for (const auto& [face, targets] : m.carrier) {
        json arr = json::array();
        for (const Simplex& t : targets) arr.push_back(t.str());
        out[face.str()] = std::move(arr);
    }
    return out.dump(2) + "\n";
}

// -------------------------------------------------------- composite specs

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw error(path + ": " + e.what());
    }
}

std::string resolve(const std::string& base, const std::string& ref) {
    const std::filesystem::path p(ref);
    if (p.is_absolute()) return ref;
    return (std::filesystem::path(base).parent_path() / p).string();
}

std::vector<std::pair<VertexId, VertexId>> vertex_map(const json& arr) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& entry : arr)
        out.emplace_back(entry.at(0).get<VertexId>(), entry.at(1).get<VertexId>());
    return out;
}

}  // namespace

GluingSpec gluing_spec_from_file(const std::string& path) {
    json doc = load_json(path);
    GluingSpec spec;
    spec.left = read_facet_file(resolve(path, doc.at("left").get<std::string>()));
    spec.right = read_facet_file(resolve(path, doc.at("right").get<std::string>()));
    spec.identification = vertex_map(doc.at("map"));
    return spec;
}

LocalConstructionTrace trace_from_file(const std::string& path) {
    json doc = load_json(path);
    LocalConstructionTrace trace;
    trace.tree = read_facet_file(resolve(path, doc.at("tree").get<std::string>()));
    for (const auto& entry : doc.at("identify"))
        trace.identifications.emplace_back(Simplex::parse(entry.at(0).get<std::string>()),
                                           Simplex::parse(entry.at(1).get<std::string>()));
    return trace;
}

HandleDecomposition handles_from_file(const std::string& path) {
    json doc = load_json(path);
    HandleDecomposition H;
    for (const auto& entry : doc) {
        Handle h;
        h.complex = read_facet_file(resolve(path, entry.at("complex").get<std::string>()));
        h.index = entry.at("index").get<int>();
        if (entry.contains("attach")) h.attach = vertex_map(entry.at("attach").at("map"));
        H.handles.push_back(std::move(h));
    }
    return H;
}

}  // namespace morsecraft
