#include "morsecraft/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "morsecraft/homology.hpp"

namespace morsecraft {

namespace {

struct StateHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

int worker_count() {
    if (const char* env = std::getenv("MORSECRAFT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------- random

struct RandomRun {
    std::vector<long> vector;  // critical counts per dimension
    std::vector<std::pair<int, int>> pairs;
};

RandomRun random_run(const FacePoset& P, std::uint64_t seed, std::uint64_t restart,
                     bool boundary_critical) {
    std::seed_seq seq{seed, restart};
    std::mt19937_64 rng(seq);
    const std::size_t n = P.size();
    std::vector<char> present(n, 1);
    std::vector<int> coface_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) coface_count[i] = static_cast<int>(P.up[i].size());

    auto removable = [&](std::size_t f) {
        return present[f] && (!boundary_critical || P.interior(static_cast<int>(f)));
    };
    std::size_t left = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (removable(i)) ++left;

    RandomRun run;
    run.vector.assign(static_cast<std::size_t>(P.complex.dim() + 1), 0);
    auto remove_face = [&](std::size_t f) {
        present[f] = 0;
        --left;
        for (int below : P.down[f]) coface_count[static_cast<std::size_t>(below)]--;
    };
    auto declare_critical = [&](std::size_t f) {
        run.vector[static_cast<std::size_t>(P.face_dim[f])]++;
        remove_face(f);
    };

    if (boundary_critical && left > 0) {
        // Seed by deleting one interior facet, chosen uniformly.
        std::vector<std::size_t> facets;
        for (std::size_t i = 0; i < n; ++i)
            if (removable(i) && coface_count[i] == 0) facets.push_back(i);
        if (facets.empty()) throw error("random_morse: no interior facet to seed with");
        std::uniform_int_distribution<std::size_t> pick(0, facets.size() - 1);
        declare_critical(facets[pick(rng)]);
    }

    while (left > 0) {
        std::vector<std::pair<std::size_t, int>> free;
        for (std::size_t f = 0; f < n; ++f) {
            if (!removable(f) || coface_count[f] != 1) continue;
            for (int c : P.up[f])
                if (present[static_cast<std::size_t>(c)]) {
                    if (!boundary_critical || P.interior(c)) free.emplace_back(f, c);
                    break;
                }
        }
        if (!free.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
            auto [f, c] = free[pick(rng)];
            run.pairs.emplace_back(static_cast<int>(f), c);
            remove_face(f);
            remove_face(static_cast<std::size_t>(c));
            continue;
        }
        int top = -1;
        for (std::size_t f = 0; f < n; ++f)
            if (removable(f)) top = std::max(top, P.face_dim[f]);
        std::vector<std::size_t> candidates;
        for (std::size_t f = 0; f < n; ++f)
            if (removable(f) && P.face_dim[f] == top) candidates.push_back(f);
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        declare_critical(candidates[pick(rng)]);
    }
    return run;
}

}  // namespace

MorseMatching random_morse(const SimplicialComplex& K, std::uint64_t seed, int restarts,
                           bool boundary_critical) {
    if (restarts < 1) throw error("random_morse: restarts must be >= 1");
    FacePoset P = FacePoset::build(K);
    if (boundary_critical && !P.boundary_known)
        throw error("random_morse: boundary-critical mode needs a pseudomanifold");

    const int threads = std::min(worker_count(), restarts);
    std::vector<std::pair<int, RandomRun>> best_per_thread(static_cast<std::size_t>(threads));
    auto work = [&](int t) {
        std::pair<int, RandomRun> best{-1, {}};
        for (int r = t; r < restarts; r += threads) {
            RandomRun run =
                random_run(P, seed, static_cast<std::uint64_t>(r), boundary_critical);
            if (best.first < 0 || run.vector < best.second.vector)
                best = {r, std::move(run)};
        }
        best_per_thread[static_cast<std::size_t>(t)] = std::move(best);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    // Deterministic merge: best vector, then lowest restart index.
    const std::pair<int, RandomRun>* best = nullptr;
    for (const auto& cand : best_per_thread) {
        if (cand.first < 0) continue;
        if (!best || cand.second.vector < best->second.vector ||
            (cand.second.vector == best->second.vector && cand.first < best->first))
            best = &cand;
    }
    MorseMatching V;
    V.complex = K;
    V.boundary_critical = boundary_critical;
    for (auto [f, c] : best->second.pairs)
        V.pairs.emplace_back(P.faces[static_cast<std::size_t>(f)],
                             P.faces[static_cast<std::size_t>(c)]);
    std::sort(V.pairs.begin(), V.pairs.end());
    return V;
}

// ---------------------------------------------------------------- optimal

namespace {

class OptimalSearcher {
public:
    OptimalSearcher(const FacePoset& P, std::vector<long> betti, Budget budget)
        : P_(P), betti_(std::move(betti)), budget_(budget) {
        present_.assign(P_.size(), 1);
        coface_count_.assign(P_.size(), 0);
        for (std::size_t i = 0; i < P_.size(); ++i)
            coface_count_[i] = static_cast<int>(P_.up[i].size());
        crit_.assign(static_cast<std::size_t>(P_.complex.dim() + 1), 0);
        left_ = P_.size();
        beta_total_ = 0;
        for (long b : betti_) beta_total_ += b;
    }

    OptimalMorseResult run(const MorseMatching& incumbent) {
        best_total_ = morse_vector(incumbent).total();
        best_pairs_.clear();
        for (const auto& [f, c] : incumbent.pairs)
            best_pairs_.emplace_back(P_.id(f), P_.id(c));

        bool complete = true;
        if (best_total_ > beta_total_) dfs(complete);

        OptimalMorseResult out;
        out.expansions = expansions_;
        out.exact = complete || best_total_ == beta_total_;
        out.matching.complex = P_.complex;
        for (auto [f, c] : best_pairs_)
            out.matching.pairs.emplace_back(P_.faces[static_cast<std::size_t>(f)],
                                            P_.faces[static_cast<std::size_t>(c)]);
        std::sort(out.matching.pairs.begin(), out.matching.pairs.end());
        return out;
    }

private:
    long lower_bound() const {
        long per_dim = 0;
        long cur_total = 0;
        for (std::size_t k = 0; k < crit_.size(); ++k) {
            per_dim += std::max(crit_[k], k < betti_.size() ? betti_[k] : 0);
            cur_total += crit_[k];
        }
        long alt = 0;
        for (std::size_t f = 0; f < P_.size(); ++f)
            if (present_[f]) alt += (P_.face_dim[f] % 2 == 0) ? 1 : -1;
        long rem = 0;
        if (left_ > 0) rem = std::max<long>(std::labs(alt), alt == 0 ? 2 : 0);
        return std::max(per_dim, cur_total + rem);
    }

    void dfs(bool& complete) {
        if (left_ == 0) {
            long total = 0;
            for (long c : crit_) total += c;
            if (total < best_total_) {
                best_total_ = total;
                best_pairs_ = steps_;
            }
            return;
        }
        if (lower_bound() >= best_total_) return;
        if (expansions_ >= budget_.node_expansions) {
            complete = false;
            return;
        }
        ++expansions_;

        long cur_total = 0;
        for (long c : crit_) cur_total += c;
        auto key = pack_state();
        auto it = seen_.find(key);
        if (it != seen_.end() && it->second <= cur_total) return;
        seen_[std::move(key)] = cur_total;

        // Collapse moves first, then critical deletions, each in face order.
        for (std::size_t f = 0; f < P_.size(); ++f) {
            if (!present_[f] || coface_count_[f] != 1) continue;
            int c = -1;
            for (int up : P_.up[f])
                if (present_[static_cast<std::size_t>(up)]) {
                    c = up;
                    break;
                }
            remove(f);
            remove(static_cast<std::size_t>(c));
            steps_.emplace_back(static_cast<int>(f), c);
            dfs(complete);
            steps_.pop_back();
            restore(static_cast<std::size_t>(c));
            restore(f);
            if (best_total_ == beta_total_) return;  // provably optimal
        }
        for (std::size_t f = 0; f < P_.size(); ++f) {
            if (!present_[f] || coface_count_[f] != 0) continue;
            crit_[static_cast<std::size_t>(P_.face_dim[f])]++;
            remove(f);
            dfs(complete);
            restore(f);
            crit_[static_cast<std::size_t>(P_.face_dim[f])]--;
            if (best_total_ == beta_total_) return;
        }
    }

    void remove(std::size_t f) {
        present_[f] = 0;
        --left_;
        for (int below : P_.down[f]) coface_count_[static_cast<std::size_t>(below)]--;
    }
    void restore(std::size_t f) {
        present_[f] = 1;
        ++left_;
        for (int below : P_.down[f]) coface_count_[static_cast<std::size_t>(below)]++;
    }

    std::vector<std::uint64_t> pack_state() const {
        std::vector<std::uint64_t> packed((P_.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < P_.size(); ++i)
            if (present_[i]) packed[i / 64] |= std::uint64_t{1} << (i % 64);
        return packed;
    }

    const FacePoset& P_;
    std::vector<long> betti_;
    Budget budget_;
    std::vector<char> present_;
    std::vector<int> coface_count_;
    std::vector<long> crit_;
    std::size_t left_;
    long beta_total_;
    long best_total_ = 0;
    std::vector<std::pair<int, int>> steps_;
    std::vector<std::pair<int, int>> best_pairs_;
    std::uint64_t expansions_ = 0;
    std::unordered_map<std::vector<std::uint64_t>, long, StateHash> seen_;
};

}  // namespace

OptimalMorseResult optimal_morse(const SimplicialComplex& K, Budget budget) {
    if (K.empty()) throw error("optimal_morse: empty complex");
    FacePoset P = FacePoset::build(K);
    MorseMatching incumbent = random_morse(K, 0x6d6f727365ull, 10);
    return OptimalSearcher(P, betti_gf2(K), budget).run(incumbent);
}

// ----------------------------------------------- boundary-critical search

CriticalBounds CriticalBounds::free_bounds(int dim) {
    CriticalBounds b;
    b.min.assign(static_cast<std::size_t>(dim + 1), 0);
    b.max.assign(static_cast<std::size_t>(dim + 1), -1);
    return b;
}

CriticalBounds CriticalBounds::cdepth_profile(int dim, int k) {
    CriticalBounds b = free_bounds(dim);
    b.min[static_cast<std::size_t>(dim)] = 1;
    b.max[static_cast<std::size_t>(dim)] = 1;
    for (int i = 1; i < k; ++i) {
        b.min[static_cast<std::size_t>(dim - i)] = 0;
        b.max[static_cast<std::size_t>(dim - i)] = 0;
    }
    return b;
}

CriticalBounds CriticalBounds::exact(std::vector<long> target) {
    CriticalBounds b;
    b.min = target;
    b.max = std::move(target);
    return b;
}

namespace {

class BoundaryCriticalSearcher {
public:
    BoundaryCriticalSearcher(const FacePoset& P, const CriticalBounds& bounds, Budget budget)
        : P_(P), bounds_(bounds), budget_(budget) {
        present_.assign(P_.size(), 1);
        coface_count_.assign(P_.size(), 0);
        for (std::size_t i = 0; i < P_.size(); ++i)
            coface_count_[i] = static_cast<int>(P_.up[i].size());
        crit_.assign(static_cast<std::size_t>(P_.complex.dim() + 1), 0);
        interior_ids_.clear();
        for (std::size_t i = 0; i < P_.size(); ++i)
            if (P_.interior(static_cast<int>(i))) interior_ids_.push_back(i);
        left_ = interior_ids_.size();
    }

    // Forces f to be deleted as the first critical cell.
    void pin(std::size_t f) {
        crit_[static_cast<std::size_t>(P_.face_dim[f])]++;
        remove(f);
    }

    CertificateResult run() {
        CertificateResult result;
        bool complete = true;
        const bool found = dfs(complete);
        result.expansions = expansions_;
        if (found) {
            result.status = SearchStatus::Found;
            MorseMatching V;
            V.complex = P_.complex;
            V.boundary_critical = true;
            for (auto [f, c] : steps_)
                V.pairs.emplace_back(P_.faces[static_cast<std::size_t>(f)],
                                     P_.faces[static_cast<std::size_t>(c)]);
            std::sort(V.pairs.begin(), V.pairs.end());
            result.matching = std::move(V);
        } else {
            result.status =
                complete ? SearchStatus::ProvedImpossible : SearchStatus::Inconclusive;
        }
        return result;
    }

private:
    bool satisfied() const {
        for (std::size_t k = 0; k < crit_.size(); ++k)
            if (crit_[k] < bounds_.min[k]) return false;
        return true;
    }

    bool feasible() const {
        // Remaining interior faces per dimension and their alternating sum.
        std::vector<long> n(crit_.size(), 0);
        for (std::size_t f : interior_ids_)
            if (present_[f]) n[static_cast<std::size_t>(P_.face_dim[f])]++;
        long alt = 0;
        for (std::size_t k = 0; k < n.size(); ++k) alt += (k % 2 == 0) ? n[k] : -n[k];
        // Future criticals x_k must satisfy min-need <= x_k <= capacity and
        // sum (-1)^k x_k == alt.
        long base = 0;
        long slack_even = 0, slack_odd = 0;
        for (std::size_t k = 0; k < crit_.size(); ++k) {
            const long need = std::max<long>(0, bounds_.min[k] - crit_[k]);
            const long cap =
                bounds_.max[k] < 0 ? n[k] : std::min(n[k], bounds_.max[k] - crit_[k]);
            if (cap < need) return false;
            base += (k % 2 == 0) ? need : -need;
            ((k % 2 == 0) ? slack_even : slack_odd) += cap - need;
        }
        const long delta = alt - base;
        return delta <= slack_even && delta >= -slack_odd;
    }

    bool dfs(bool& complete) {
        if (left_ == 0) return satisfied();
        if (!feasible()) return false;
        if (expansions_ >= budget_.node_expansions) {
            complete = false;
            return false;
        }
        ++expansions_;
        if (!failed_.insert(pack_state()).second) return false;

        // Collapse moves.
        for (std::size_t f : interior_ids_) {
            if (!present_[f] || coface_count_[f] != 1) continue;
            int c = -1;
            for (int up : P_.up[f])
                if (present_[static_cast<std::size_t>(up)]) {
                    c = up;
                    break;
                }
            remove(f);
            remove(static_cast<std::size_t>(c));
            steps_.emplace_back(static_cast<int>(f), c);
            if (dfs(complete)) return true;
            steps_.pop_back();
            restore(static_cast<std::size_t>(c));
            restore(f);
        }
        // Critical deletions.
        for (std::size_t f : interior_ids_) {
            if (!present_[f] || coface_count_[f] != 0) continue;
            const std::size_t k = static_cast<std::size_t>(P_.face_dim[f]);
            if (bounds_.max[k] >= 0 && crit_[k] + 1 > bounds_.max[k]) continue;
            crit_[k]++;
            remove(f);
            if (dfs(complete)) return true;
            restore(f);
            crit_[k]--;
        }
        return false;
    }

    void remove(std::size_t f) {
        present_[f] = 0;
        --left_;
        for (int below : P_.down[f]) coface_count_[static_cast<std::size_t>(below)]--;
    }
    void restore(std::size_t f) {
        present_[f] = 1;
        ++left_;
        for (int below : P_.down[f]) coface_count_[static_cast<std::size_t>(below)]++;
    }

    std::vector<std::uint64_t> pack_state() const {
        std::vector<std::uint64_t> packed((interior_ids_.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < interior_ids_.size(); ++i)
            if (present_[interior_ids_[i]]) packed[i / 64] |= std::uint64_t{1} << (i % 64);
        for (long c : crit_) packed.push_back(static_cast<std::uint64_t>(c));
        return packed;
    }

    const FacePoset& P_;
    CriticalBounds bounds_;
    Budget budget_;
    std::vector<char> present_;
    std::vector<int> coface_count_;
    std::vector<long> crit_;
    std::vector<std::size_t> interior_ids_;
    std::size_t left_ = 0;
    std::uint64_t expansions_ = 0;
    std::vector<std::pair<int, int>> steps_;
    std::unordered_set<std::vector<std::uint64_t>, StateHash> failed_;
};

}  // namespace

CertificateResult search_boundary_critical(const SimplicialComplex& M,
                                           const CriticalBounds& bounds, Budget budget,
                                           std::optional<Simplex> pinned_facet) {
    FacePoset P = FacePoset::build(M);
    if (!P.boundary_known)
        throw error("search_boundary_critical: complex has no well-defined boundary");
    if (bounds.min.size() != static_cast<std::size_t>(M.dim() + 1) ||
        bounds.max.size() != bounds.min.size())
        throw error("search_boundary_critical: bounds have wrong length");

    if (!pinned_facet) {
        BoundaryCriticalSearcher s(P, bounds, budget);
        return s.run();
    }
    const Simplex& pin = *pinned_facet;
    if (pin.dim() != M.dim()) throw error("pinned critical cell must be a facet");
    const int id = P.id(pin);
    if (!P.interior(id)) throw error("pinned facet must be interior");
    BoundaryCriticalSearcher s(P, bounds, budget);
    s.pin(static_cast<std::size_t>(id));
    return s.run();
}

CertificateResult is_endo_collapsible(const SimplicialComplex& M, Budget budget) {
    ManifoldCheck mc = manifold_check(M);
    if (!mc.ok)
        throw error("is_endo_collapsible: manifold checks failed: " + mc.problems.front());
    const int d = M.dim();
    std::vector<long> target(static_cast<std::size_t>(d + 1), 0);
    target[static_cast<std::size_t>(d)] = 1;
    if (boundary_subcomplex(M).empty()) target[0] = 1;
    CertificateResult r =
        search_boundary_critical(M, CriticalBounds::exact(std::move(target)), budget);
    if (r.status != SearchStatus::Found)
        r.detail = r.status == SearchStatus::ProvedImpossible
                       ? "proved impossible: exhaustive search completed"
                       : "inconclusive: budget exhausted";
    return r;
}

CollapseDepthResult collapse_depth(const SimplicialComplex& M, Budget budget) {
    ManifoldCheck mc = manifold_check(M);
    if (!mc.ok) throw error("collapse_depth: manifold checks failed: " + mc.problems.front());
    const int d = M.dim();
    CollapseDepthResult out;
    bool higher_all_refuted = true;
    for (int k = d; k >= 1; --k) {
        CertificateResult r =
            search_boundary_critical(M, CriticalBounds::cdepth_profile(d, k), budget);
        out.expansions += r.expansions;
        if (r.status == SearchStatus::Found) {
            out.k_lower = k;
            out.certificate = std::move(r.matching);
            out.exact = (k == d) || higher_all_refuted;
            return out;
        }
        if (r.status == SearchStatus::Inconclusive) higher_all_refuted = false;
    }
    return out;  // k_lower = 0: even k = 1 was not certified within budget
}

}  // namespace morsecraft
