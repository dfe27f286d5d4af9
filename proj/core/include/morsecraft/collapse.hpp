#pragma once

#include <cstdint>

#include "morsecraft/matching.hpp"

namespace morsecraft {

/// Budgets are node-expansion counts, not wall clock.
struct Budget {
    std::uint64_t node_expansions = 1'000'000;
};

/// Thrown when an operation that must return a definite result runs out
/// of search budget; callers report it as "inconclusive", not failure.
struct budget_exhausted : error {
    using error::error;
};

enum class SearchStatus {
    Found,
    ProvedImpossible,  // exhaustive search completed without a witness
    Inconclusive,      // budget exhausted
};

struct CollapseResult {
    SearchStatus status = SearchStatus::Inconclusive;
    CollapseSequence sequence;
    std::uint64_t expansions = 0;
};

/// Search for a sequence of elementary collapses removing exactly the
/// faces of K outside L.
CollapseResult collapses_onto(const SimplicialComplex& K, const SubcomplexRef& L,
                              Budget budget = {});

/// Collapse K down to any single vertex.
CollapseResult collapse_to_single_vertex(const SimplicialComplex& K, Budget budget = {});

/// Low-level variant on a prebuilt poset: collapse the faces marked
/// present down to exactly the faces marked keep. Faces with present=0
/// are treated as already removed.
CollapseResult collapse_present_onto(const FacePoset& P, std::vector<char> present,
                                     const std::vector<char>& keep, Budget budget = {});

}  // namespace morsecraft
