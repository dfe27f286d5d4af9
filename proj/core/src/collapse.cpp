#include "morsecraft/collapse.hpp"

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

class CollapseSearcher {
public:
    CollapseSearcher(const FacePoset& P, std::vector<char> present, std::vector<char> keep,
                     Budget budget, std::size_t target_remaining = 0)
        : P_(P),
          present_(std::move(present)),
          keep_(std::move(keep)),
          budget_(budget),
          target_remaining_(target_remaining) {
        coface_count_.assign(P_.size(), 0);
        removable_left_ = 0;
        for (std::size_t i = 0; i < P_.size(); ++i) {
            if (!present_[i]) continue;
            if (!keep_[i]) ++removable_left_;
            for (int c : P_.up[i])
                if (present_[static_cast<std::size_t>(c)]) coface_count_[i]++;
        }
    }

    CollapseResult run() {
        CollapseResult result;
        bool complete = true;
        const bool found = dfs(complete);
        result.expansions = expansions_;
        if (found) {
            result.status = SearchStatus::Found;
            for (auto [f, c] : steps_)
                result.sequence.steps.emplace_back(P_.faces[static_cast<std::size_t>(f)],
                                                   P_.faces[static_cast<std::size_t>(c)]);
        } else {
            result.status = complete ? SearchStatus::ProvedImpossible
                                     : SearchStatus::Inconclusive;
        }
        return result;
    }

private:
    bool dfs(bool& complete) {
        if (removable_left_ == target_remaining_) return true;
        if (expansions_ >= budget_.node_expansions) {
            complete = false;
            return false;
        }
        ++expansions_;

        std::vector<std::pair<int, int>> moves = free_pairs();
        if (moves.empty()) return false;  // dead end; exhaustively refuted

        if (!failed_.insert(pack_state()).second) return false;  // seen and refuted

        for (auto [f, c] : moves) {
            apply(f, c);
            steps_.emplace_back(f, c);
            if (dfs(complete)) return true;
            steps_.pop_back();
            undo(f, c);
            if (!complete && expansions_ >= budget_.node_expansions) return false;
        }
        return false;
    }

    std::vector<std::pair<int, int>> free_pairs() const {
        std::vector<std::pair<int, int>> moves;
        for (std::size_t f = 0; f < P_.size(); ++f) {
            if (!present_[f] || keep_[f] || coface_count_[f] != 1) continue;
            int coface = -1;
            for (int c : P_.up[f])
                if (present_[static_cast<std::size_t>(c)]) {
                    coface = c;
                    break;
                }
            if (coface >= 0 && !keep_[static_cast<std::size_t>(coface)])
                moves.emplace_back(static_cast<int>(f), coface);
        }
        return moves;  // already in ascending free-face order
    }

    void apply(int f, int c) {
        present_[static_cast<std::size_t>(f)] = 0;
        present_[static_cast<std::size_t>(c)] = 0;
        removable_left_ -= 2;
        for (int removed : {f, c})
            for (int below : P_.down[static_cast<std::size_t>(removed)])
                coface_count_[static_cast<std::size_t>(below)]--;
    }

    void undo(int f, int c) {
        for (int removed : {f, c})
            for (int below : P_.down[static_cast<std::size_t>(removed)])
                coface_count_[static_cast<std::size_t>(below)]++;
        present_[static_cast<std::size_t>(f)] = 1;
        present_[static_cast<std::size_t>(c)] = 1;
        removable_left_ += 2;
    }

    std::vector<std::uint64_t> pack_state() const {
        std::vector<std::uint64_t> packed((P_.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < P_.size(); ++i)
            if (present_[i]) packed[i / 64] |= std::uint64_t{1} << (i % 64);
        return packed;
    }

    const FacePoset& P_;
    std::vector<char> present_;
    std::vector<char> keep_;
    Budget budget_;
    std::vector<int> coface_count_;
    std::size_t removable_left_;
    std::size_t target_remaining_ = 0;
    std::uint64_t expansions_ = 0;
    std::vector<std::pair<int, int>> steps_;
    std::unordered_set<std::vector<std::uint64_t>, StateHash> failed_;
};

}  // namespace

CollapseResult collapse_present_onto(const FacePoset& P, std::vector<char> present,
                                     const std::vector<char>& keep, Budget budget) {
    std::size_t removable = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (present[i] && !keep[i]) ++removable;
    if (removable % 2 != 0) {
        // Parity obstruction: collapses remove faces in pairs.
        CollapseResult r;
        r.status = SearchStatus::ProvedImpossible;
        return r;
    }
    return CollapseSearcher(P, std::move(present), keep, budget).run();
}

CollapseResult collapses_onto(const SimplicialComplex& K, const SubcomplexRef& L,
                              Budget budget) {
    FacePoset P = FacePoset::build(K);
    std::vector<char> present(P.size(), 1);
    std::vector<char> keep(P.size(), 0);
    for (const Simplex& f : L.faces()) {
        if (!P.has(f)) throw error("collapses_onto: target face " + f.str() + " not in complex");
        keep[static_cast<std::size_t>(P.id(f))] = 1;
    }
    return collapse_present_onto(P, std::move(present), keep, budget);
}

CollapseResult collapse_to_single_vertex(const SimplicialComplex& K, Budget budget) {
    if (K.empty()) throw error("collapse_to_single_vertex: empty complex");
    FacePoset P = FacePoset::build(K);
    if (P.size() % 2 == 0) {
        CollapseResult r;
        r.status = SearchStatus::ProvedImpossible;  // parity: pairs leave an odd remainder
        return r;
    }
    std::vector<char> present(P.size(), 1);
    std::vector<char> keep(P.size(), 0);
    // Collapses preserve downward closure, so a single surviving face is
    // necessarily a vertex.
    return CollapseSearcher(P, std::move(present), keep, budget, 1).run();
}

}  // namespace morsecraft
