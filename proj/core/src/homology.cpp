#include "morsecraft/homology.hpp"

#include <cstdint>
#include <unordered_map>

namespace morsecraft {

namespace {

// Row-reduction rank of a GF(2) matrix stored as bit-packed rows.
long rank_gf2(std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols) {
    long rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        const std::size_t block = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = row;
        while (pivot < rows.size() && !(rows[pivot][block] & bit)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[row], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == row || !(rows[r][block] & bit)) continue;
            for (std::size_t b = 0; b < rows[r].size(); ++b) rows[r][b] ^= rows[row][b];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace

long boundary_rank_gf2(const SimplicialComplex& K, int k) {
    if (k <= 0 || k > K.dim()) return 0;
    const auto& upper = K.faces(k);
    const auto& lower = K.faces(k - 1);
    std::unordered_map<Simplex, std::size_t, SimplexHash> lower_index;
    for (std::size_t i = 0; i < lower.size(); ++i) lower_index.emplace(lower[i], i);

    const std::size_t blocks = (lower.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(upper.size(),
                                                 std::vector<std::uint64_t>(blocks, 0));
    for (std::size_t i = 0; i < upper.size(); ++i)
        for (const Simplex& f : upper[i].facets()) {
            const std::size_t j = lower_index.at(f);
            rows[i][j / 64] ^= std::uint64_t{1} << (j % 64);
        }
    return rank_gf2(rows, lower.size());
}

std::vector<long> betti_gf2(const SimplicialComplex& K) {
    std::vector<long> betti;
    if (K.empty()) return betti;
    const int d = K.dim();
    std::vector<long> rank(static_cast<std::size_t>(d + 2), 0);
    for (int k = 1; k <= d; ++k) rank[static_cast<std::size_t>(k)] = boundary_rank_gf2(K, k);
    for (int k = 0; k <= d; ++k) {
        const long cells = static_cast<long>(K.faces(k).size());
        betti.push_back(cells - rank[static_cast<std::size_t>(k)] -
                        rank[static_cast<std::size_t>(k + 1)]);
    }
    return betti;
}

}  // namespace morsecraft
