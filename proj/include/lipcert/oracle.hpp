#pragma once

#include <optional>
#include <vector>

#include "lipcert/family.hpp"

namespace lipcert {

// Exhaustive reference computations for small instances. Hard caps keep every
// scan in the seconds range; beyond them the ops throw TooLarge.

inline constexpr int kMaxCoveringPoints = 16;
inline constexpr int kMaxOscillationElements = 8;
inline constexpr int kMaxOscillationParts = 4;

// Minimal number of centers (drawn from the points themselves) whose closed
// eps-balls cover the space / the subset.
int exact_covering_number(const FiniteMetricSpace& space, double eps);
int exact_covering_number(const FiniteMetricSpace& space, const std::vector<int>& subset,
                          double eps);

struct CoveringProfile {
    std::vector<double> eps_grid;
    std::vector<int> exact_sizes;
    std::vector<int> greedy_sizes;
};

CoveringProfile covering_profile(const FiniteMetricSpace& space,
                                 const std::vector<double>& eps_grid);

enum class OscKind { B, DS, L, LDS };

// Minimum over all covers with at most max_parts parts of the worst in-part
// oscillation (the minimum over partitions equals the minimum over covers).
// B/DS partition points; L/LDS partition off-diagonal pair indices and need
// phi (argument, or the family's). `subset` restricts the partitioned
// elements; a restricted minimum lower-bounds every full cover with the same
// budget.
double exact_min_oscillation(const FunctionFamily& A, int max_parts, OscKind kind,
                             const std::optional<std::vector<int>>& subset = std::nullopt,
                             const std::optional<ComparisonFunction>& phi = std::nullopt);

struct PigeonWitness {
    int part = -1;
    int x = -1, y = -1;  // domain point indices, first coordinate differing at l
    int k = -1, l = -1;  // member indices (1-based sequence positions)
    double gap = 0;      // | ||(f_k-f_l)(x)|| - ||(f_k-f_l)(y)|| |
};

// Counting argument on a zero-one sequence family (2^p domain points encoded
// by index bits, members f_1..f_p): whenever some k <= p has 2^(k-1) > parts,
// two sequences vanishing from position k onward share a part, and the
// difference f_k - f_l at their first disagreement l gives a gap >= 1/2
// (exactly 1 in the basis realization). Returns nullopt only when no such k
// exists.
std::optional<PigeonWitness> pigeonhole_B_witness(const FunctionFamily& family, int p,
                                                  const Cover& cover);

}  // namespace lipcert
