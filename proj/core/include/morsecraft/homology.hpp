#pragma once

#include <vector>

#include "morsecraft/complex.hpp"

namespace morsecraft {

/// beta_i = rank H_i(K; GF(2)), from boundary-matrix ranks over GF(2).
/// Empty vector for the empty complex.
std::vector<long> betti_gf2(const SimplicialComplex& K);

/// Rank over GF(2) of the boundary map from k-faces to (k-1)-faces.
long boundary_rank_gf2(const SimplicialComplex& K, int k);

}  // namespace morsecraft
