#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morsecraft/poset.hpp"

namespace morsecraft {

/// Acyclic partial matching on the face poset: each pair matches a face
/// with one of its codimension-1 cofaces; unmatched faces are critical.
struct MorseMatching {
    SimplicialComplex complex;
    std::vector<std::pair<Simplex, Simplex>> pairs;  // (free, coface)
    bool boundary_critical = false;
};

struct MorseVector {
    std::vector<long> c;      // critical cells per dimension
    std::vector<long> c_int;  // interior critical cells per dimension

    friend bool operator==(const MorseVector& a, const MorseVector& b) {
        return a.c == b.c && a.c_int == b.c_int;
    }
    long total() const {
        long t = 0;
        for (long x : c) t += x;
        return t;
    }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;  // each with a witness
};

ValidationReport validate_matching(const MorseMatching& V);

/// Unmatched faces, sorted. Throws on an invalid matching.
std::vector<Simplex> critical_cells(const MorseMatching& V);

MorseVector morse_vector(const MorseMatching& V);

/// One integer value per face realizing the matching (equal values exactly
/// on matched pairs, strictly increasing along unmatched covers). Obtained
/// from a linear extension of the modified Hasse diagram.
std::map<Simplex, int> morse_function_values(const MorseMatching& V);

/// Ordered elementary collapses; each step's free face must have its
/// coface as unique proper coface at the moment of removal.
struct CollapseSequence {
    std::vector<std::pair<Simplex, Simplex>> steps;
};

/// Replays `seq` on K and checks every step. On success returns the faces
/// that remain. Throws `error` with the offending step otherwise.
std::vector<Simplex> replay_collapse(const SimplicialComplex& K, const CollapseSequence& seq);

/// True iff replaying seq on K removes exactly the faces of K not in `target`.
bool collapse_reaches(const SimplicialComplex& K, const CollapseSequence& seq,
                      const std::vector<Simplex>& target);

/// Orders an acyclic perfect matching on a removable face set into an
/// elementary collapse sequence. `present` marks the faces of the current
/// complex; the paired faces must all be present. Returns nullopt if the
/// pairs cannot be scheduled (i.e. the matching is not acyclic).
std::optional<CollapseSequence> schedule_pairs(const FacePoset& P,
                                               const std::vector<std::pair<int, int>>& id_pairs,
                                               std::vector<char> present);

// --- gradient paths and Forman cancellation ---

/// All V-paths from the boundary of critical cell a (dim p+1) to critical
/// cell b (dim p). Each path is the list of p-cells visited.
std::vector<std::vector<Simplex>> gradient_paths(const MorseMatching& V, const Simplex& a,
                                                 const Simplex& b);

/// Reverses the unique gradient path from a to b; both cells stop being
/// critical. Throws when the path is not unique (zero or >= 2 paths).
MorseMatching cancel_pair(const MorseMatching& V, const Simplex& a, const Simplex& b);

}  // namespace morsecraft
