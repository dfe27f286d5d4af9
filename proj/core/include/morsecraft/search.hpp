#pragma once

#include <optional>

#include "morsecraft/collapse.hpp"

namespace morsecraft {

/// Seeded heuristic: repeatedly remove a uniformly chosen free pair; when
/// none exists, delete a uniformly chosen face of the current top
/// dimension as critical. Returns the lexicographically best Morse vector
/// over `restarts` runs, ties broken by earliest restart index.
/// In boundary-critical mode all removals are restricted to interior
/// faces and the run is seeded by deleting one interior facet.
MorseMatching random_morse(const SimplicialComplex& K, std::uint64_t seed, int restarts,
                           bool boundary_critical = false);

struct OptimalMorseResult {
    MorseMatching matching;
    bool exact = false;  // set only when the search space was exhausted
    std::uint64_t expansions = 0;
};

/// Branch-and-bound over matchings minimizing the total critical count,
/// pruned by the GF(2) Morse inequalities.
OptimalMorseResult optimal_morse(const SimplicialComplex& K, Budget budget = {});

struct CertificateResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<MorseMatching> matching;
    std::uint64_t expansions = 0;
    std::string detail;
};

/// Endo-collapsibility: boundary-critical matching with exactly one
/// critical interior facet (with boundary), or one critical vertex and
/// one critical facet (closed case).
CertificateResult is_endo_collapsible(const SimplicialComplex& M, Budget budget = {});

/// Per-dimension bounds on interior critical cells; max = -1 is unbounded.
struct CriticalBounds {
    std::vector<long> min;
    std::vector<long> max;

    static CriticalBounds free_bounds(int dim);
    /// Exactly one critical facet, zero critical interior cells in
    /// dimensions d-1 .. d-k+1, free below: the collapse-depth-k profile.
    static CriticalBounds cdepth_profile(int dim, int k);
    static CriticalBounds exact(std::vector<long> target);
};

/// Search for a boundary-critical matching whose interior critical counts
/// satisfy the bounds. `pinned_facet`, when set, is forced to be the
/// (unique) critical facet. Exhaustive completion without a witness
/// yields ProvedImpossible.
CertificateResult search_boundary_critical(const SimplicialComplex& M,
                                           const CriticalBounds& bounds, Budget budget = {},
                                           std::optional<Simplex> pinned_facet = {});

struct CollapseDepthResult {
    int k_lower = 0;  // 0 means even the k=1 search was inconclusive
    bool exact = false;
    std::optional<MorseMatching> certificate;
    std::uint64_t expansions = 0;
};

/// Largest certified k admitting a boundary-critical matching with one
/// critical d-cell and no critical interior cells in dims d-1..d-k+1.
CollapseDepthResult collapse_depth(const SimplicialComplex& M, Budget budget = {});

}  // namespace morsecraft
