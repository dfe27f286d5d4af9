#pragma once

#include "morsecraft/subdivision.hpp"

namespace morsecraft {

struct LiftResult {
    SimplicialComplex refined;
    SubdivisionMap map;
    MorseMatching lifted;
};

/// Transport a Morse matching through the starring of s, preserving the
/// Morse vector exactly: critical faces map one-to-one to critical faces,
/// subdivided regions are closed up by endo-collapses of the region.
LiftResult lift_matching(const SimplicialComplex& K, const MorseMatching& V, const Simplex& s);

/// Fold of lift_matching over the derived-subdivision starring schedule.
LiftResult lift_through_derived(const SimplicialComplex& K, const MorseMatching& V,
                                int rounds);

}  // namespace morsecraft
