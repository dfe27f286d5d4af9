#include "morsecraft/matching.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace morsecraft {

namespace {

struct MatchArrays {
    std::vector<int> up;    // match_up[f] = paired coface id, or -1
    std::vector<int> down;  // match_down[f] = paired free-face id, or -1
};

// Fills arrays; reports structural violations (incidence, duplicates).
MatchArrays build_arrays(const FacePoset& P, const MorseMatching& V, ValidationReport* report) {
    MatchArrays m;
    m.up.assign(P.size(), -1);
    m.down.assign(P.size(), -1);
    auto fail = [&](std::string msg) {
        if (report) {
            report->valid = false;
            report->violations.push_back(std::move(msg));
        } else {
            throw error(std::move(msg));
        }
    };
    for (const auto& [free, coface] : V.pairs) {
        if (!P.has(free) || !P.has(coface)) {
            fail("pair (" + free.str() + ", " + coface.str() + ") not in the complex");
            continue;
        }
        if (coface.dim() != free.dim() + 1 || !coface.contains(free)) {
            fail("pair (" + free.str() + ", " + coface.str() + ") is not a covering pair");
            continue;
        }
        const int f = P.id(free);
        const int c = P.id(coface);
        if (m.up[static_cast<std::size_t>(f)] != -1 || m.down[static_cast<std::size_t>(f)] != -1) {
            fail("face " + free.str() + " occurs in two pairs");
            continue;
        }
        if (m.up[static_cast<std::size_t>(c)] != -1 || m.down[static_cast<std::size_t>(c)] != -1) {
            fail("face " + coface.str() + " occurs in two pairs");
            continue;
        }
        m.up[static_cast<std::size_t>(f)] = c;
        m.down[static_cast<std::size_t>(c)] = f;
    }
    return m;
}

// Cycle detection on the modified Hasse diagram, one dimension level at a
// time: sigma -> sigma' when sigma' is another facet of match(sigma) that
// is itself matched upward.
void check_acyclic(const FacePoset& P, const MatchArrays& m, ValidationReport& report) {
    const std::size_t n = P.size();
    std::vector<char> color(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<int> parent(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
        if (m.up[start] == -1 || color[start] != 0) continue;
        std::vector<std::pair<int, std::size_t>> stack;  // (face, next successor index)
        stack.emplace_back(static_cast<int>(start), 0);
        color[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const int sigma_up = m.up[static_cast<std::size_t>(v)];
            const auto& succs = P.down[static_cast<std::size_t>(sigma_up)];
            bool advanced = false;
            while (next < succs.size()) {
                const int w = succs[next++];
                if (w == v || m.up[static_cast<std::size_t>(w)] == -1) continue;
                if (color[static_cast<std::size_t>(w)] == 1) {
                    // Reconstruct the closed V-path as a witness.
                    std::string witness = P.faces[static_cast<std::size_t>(w)].str();
                    for (int x = v; x != -1 && x != w; x = parent[static_cast<std::size_t>(x)])
                        witness = P.faces[static_cast<std::size_t>(x)].str() + " -> " + witness;
                    report.valid = false;
                    report.violations.push_back("closed V-path: " + witness + " -> " +
                                                P.faces[static_cast<std::size_t>(w)].str());
                    return;
                }
                if (color[static_cast<std::size_t>(w)] == 0) {
                    color[static_cast<std::size_t>(w)] = 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    stack.emplace_back(w, 0);
                    advanced = true;
                    break;
                }
            }
            if (!advanced && (stack.back().second >= succs.size())) {
                color[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
            }
        }
    }
}

}  // namespace

ValidationReport validate_matching(const MorseMatching& V) {
    ValidationReport report;
    FacePoset P = FacePoset::build(V.complex);
    MatchArrays m = build_arrays(P, V, &report);
    if (V.boundary_critical) {
        if (!P.boundary_known) {
            report.valid = false;
            report.violations.push_back(
                "boundary_critical set but the complex has no well-defined boundary");
        } else {
            for (const auto& [free, coface] : V.pairs) {
                if (!P.has(free) || !P.has(coface)) continue;
                if (P.on_boundary[static_cast<std::size_t>(P.id(free))])
                    report.violations.push_back("boundary face " + free.str() + " is matched"),
                        report.valid = false;
                if (P.on_boundary[static_cast<std::size_t>(P.id(coface))])
                    report.violations.push_back("boundary face " + coface.str() + " is matched"),
                        report.valid = false;
            }
        }
    }
    if (report.valid) check_acyclic(P, m, report);
    return report;
}

std::vector<Simplex> critical_cells(const MorseMatching& V) {
    ValidationReport r = validate_matching(V);
    if (!r.valid) throw error("invalid matching: " + r.violations.front());
    std::unordered_set<Simplex, SimplexHash> matched;
    for (const auto& [a, b] : V.pairs) {
        matched.insert(a);
        matched.insert(b);
    }
    std::vector<Simplex> out;
    for (const Simplex& f : V.complex.all_faces())
        if (!matched.count(f)) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

MorseVector morse_vector(const MorseMatching& V) {
    std::vector<Simplex> crit = critical_cells(V);
    const int d = V.complex.dim();
    MorseVector mv;
    mv.c.assign(static_cast<std::size_t>(d + 1), 0);
    mv.c_int.assign(static_cast<std::size_t>(d + 1), 0);
    FacePoset P = FacePoset::build(V.complex);
    for (const Simplex& f : crit) {
        mv.c[static_cast<std::size_t>(f.dim())]++;
        const bool interior = !P.boundary_known || P.interior(P.id(f));
        if (interior) mv.c_int[static_cast<std::size_t>(f.dim())]++;
    }
    return mv;
}

std::map<Simplex, int> morse_function_values(const MorseMatching& V) {
    FacePoset P = FacePoset::build(V.complex);
    MatchArrays m = build_arrays(P, V, nullptr);
    // Contract matched pairs, then topologically sort the quotient.
    const std::size_t n = P.size();
    std::vector<int> group(n);
    for (std::size_t i = 0; i < n; ++i)
        group[i] = (m.down[i] != -1) ? m.down[i] : static_cast<int>(i);
    std::vector<std::set<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (std::size_t f = 0; f < n; ++f)
        for (int c : P.up[f]) {
            const int ga = group[f];
            const int gb = group[static_cast<std::size_t>(c)];
            if (ga == gb) continue;
            if (succ[static_cast<std::size_t>(ga)].insert(gb).second)
                indeg[static_cast<std::size_t>(gb)]++;
        }
    std::set<int> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (group[i] == static_cast<int>(i) && indeg[i] == 0) ready.insert(static_cast<int>(i));
    std::map<Simplex, int> values;
    int next_value = 1;
    std::size_t emitted = 0;
    while (!ready.empty()) {
        const int g = *ready.begin();
        ready.erase(ready.begin());
        values[P.faces[static_cast<std::size_t>(g)]] = next_value;
        ++emitted;
        if (m.up[static_cast<std::size_t>(g)] != -1) {
            values[P.faces[static_cast<std::size_t>(m.up[static_cast<std::size_t>(g)])]] =
                next_value;
            ++emitted;
        }
        ++next_value;
        for (int s : succ[static_cast<std::size_t>(g)])
            if (--indeg[static_cast<std::size_t>(s)] == 0) ready.insert(s);
    }
    if (emitted != n) throw error("matching is not acyclic; no Morse function exists");
    return values;
}

std::vector<Simplex> replay_collapse(const SimplicialComplex& K, const CollapseSequence& seq) {
    FacePoset P = FacePoset::build(K);
    std::vector<char> present(P.size(), 1);
    auto present_cofaces = [&](int f) {
        int count = 0;
        for (int c : P.up[static_cast<std::size_t>(f)])
            if (present[static_cast<std::size_t>(c)]) ++count;
        return count;
    };
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& [free, coface] = seq.steps[i];
        const std::string where = "collapse step " + std::to_string(i) + " (" + free.str() +
                                  ", " + coface.str() + "): ";
        if (!P.has(free) || !P.has(coface)) throw error(where + "face not in complex");
        const int f = P.id(free);
        const int c = P.id(coface);
        if (!present[static_cast<std::size_t>(f)] || !present[static_cast<std::size_t>(c)])
            throw error(where + "face already removed");
        if (coface.dim() != free.dim() + 1 || !coface.contains(free))
            throw error(where + "not a covering pair");
        if (present_cofaces(f) != 1) throw error(where + "free face has another coface");
        present[static_cast<std::size_t>(f)] = 0;
        present[static_cast<std::size_t>(c)] = 0;
    }
    std::vector<Simplex> remaining;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (present[i]) remaining.push_back(P.faces[i]);
    std::sort(remaining.begin(), remaining.end());
    return remaining;
}

bool collapse_reaches(const SimplicialComplex& K, const CollapseSequence& seq,
                      const std::vector<Simplex>& target) {
    std::vector<Simplex> want(target);
    std::sort(want.begin(), want.end());
    return replay_collapse(K, seq) == want;
}

std::optional<CollapseSequence> schedule_pairs(const FacePoset& P,
                                               const std::vector<std::pair<int, int>>& id_pairs,
                                               std::vector<char> present) {
    std::vector<int> partner(P.size(), -1);
    for (auto [f, c] : id_pairs) {
        partner[static_cast<std::size_t>(f)] = c;
        partner[static_cast<std::size_t>(c)] = f;
    }
    std::vector<int> coface_count(P.size(), 0);
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (!present[i]) continue;
        for (int c : P.up[i])
            if (present[static_cast<std::size_t>(c)]) coface_count[i]++;
    }
    auto unique_present_coface = [&](int f) {
        for (int c : P.up[static_cast<std::size_t>(f)])
            if (present[static_cast<std::size_t>(c)]) return c;
        return -1;
    };
    std::set<int> ready;  // free-face ids of pairs that might fire, smallest first
    for (auto [f, c] : id_pairs) {
        (void)c;
        if (coface_count[static_cast<std::size_t>(f)] == 1) ready.insert(f);
    }
    CollapseSequence seq;
    std::size_t scheduled = 0;
    while (!ready.empty()) {
        const int f = *ready.begin();
        ready.erase(ready.begin());
        if (!present[static_cast<std::size_t>(f)]) continue;
        if (coface_count[static_cast<std::size_t>(f)] != 1) continue;
        const int c = unique_present_coface(f);
        if (c != partner[static_cast<std::size_t>(f)]) continue;  // wrong coface; wait
        present[static_cast<std::size_t>(f)] = 0;
        present[static_cast<std::size_t>(c)] = 0;
        seq.steps.emplace_back(P.faces[static_cast<std::size_t>(f)],
                               P.faces[static_cast<std::size_t>(c)]);
        ++scheduled;
        for (int removed : {f, c})
            for (int below : P.down[static_cast<std::size_t>(removed)]) {
                if (!present[static_cast<std::size_t>(below)]) continue;
                if (--coface_count[static_cast<std::size_t>(below)] == 1 &&
                    partner[static_cast<std::size_t>(below)] != -1)
                    ready.insert(below);
            }
    }
    if (scheduled != id_pairs.size()) return std::nullopt;
    return seq;
}

std::vector<std::vector<Simplex>> gradient_paths(const MorseMatching& V, const Simplex& a,
                                                 const Simplex& b) {
    if (a.dim() != b.dim() + 1)
        throw error("gradient_paths: dim " + a.str() + " must exceed dim " + b.str() + " by one");
    FacePoset P = FacePoset::build(V.complex);
    MatchArrays m = build_arrays(P, V, nullptr);
    const int ida = P.id(a);
    const int idb = P.id(b);
    if (m.up[static_cast<std::size_t>(ida)] != -1 || m.down[static_cast<std::size_t>(ida)] != -1)
        throw error("gradient_paths: " + a.str() + " is not critical");
    if (m.up[static_cast<std::size_t>(idb)] != -1 || m.down[static_cast<std::size_t>(idb)] != -1)
        throw error("gradient_paths: " + b.str() + " is not critical");

    std::vector<std::vector<Simplex>> paths;
    std::vector<int> current;
    constexpr std::size_t kPathCap = 100000;
    std::function<void(int)> dfs = [&](int sigma) {
        current.push_back(sigma);
        if (sigma == idb) {
            if (paths.size() >= kPathCap) throw resource_error("gradient path cap exceeded");
            std::vector<Simplex> path;
            for (int f : current) path.push_back(P.faces[static_cast<std::size_t>(f)]);
            paths.push_back(std::move(path));
        } else if (m.up[static_cast<std::size_t>(sigma)] != -1) {
            const int big = m.up[static_cast<std::size_t>(sigma)];
            for (int next : P.down[static_cast<std::size_t>(big)])
                if (next != sigma) dfs(next);
        }
        current.pop_back();
    };
    for (int sigma : P.down[static_cast<std::size_t>(ida)]) dfs(sigma);
    return paths;
}

MorseMatching cancel_pair(const MorseMatching& V, const Simplex& a, const Simplex& b) {
    auto paths = gradient_paths(V, a, b);
    if (paths.size() != 1)
        throw error("cancel_pair(" + a.str() + ", " + b.str() + "): found " +
                    std::to_string(paths.size()) +
                    " gradient paths; cancellation needs exactly one");
    const std::vector<Simplex>& path = paths.front();
    std::unordered_map<Simplex, Simplex, SimplexHash> match_of;
    for (const auto& [f, c] : V.pairs) match_of.emplace(f, c);

    MorseMatching out;
    out.complex = V.complex;
    out.boundary_critical = V.boundary_critical;
    std::unordered_set<Simplex, SimplexHash> on_path(path.begin(), path.end());
    for (const auto& [f, c] : V.pairs)
        if (!on_path.count(f)) out.pairs.emplace_back(f, c);
    // Reverse the path: a picks up the first cell, each matched coface
    // shifts to the next cell, b picks up the last coface.
    out.pairs.emplace_back(path.front(), a);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        out.pairs.emplace_back(path[i + 1], match_of.at(path[i]));
    std::sort(out.pairs.begin(), out.pairs.end());

    ValidationReport r = validate_matching(out);
    if (!r.valid)
        throw error("cancel_pair produced an invalid matching: " + r.violations.front());
    return out;
}

}  // namespace morsecraft
