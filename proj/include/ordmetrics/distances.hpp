#pragma once

#include <cstdint>
#include <vector>

#include "ordmetrics/core.hpp"

namespace ordmetrics {

// Number of candidate pairs the two rankings order differently (Kendall tau
// distance). O(m log m) merge-sort inversion count.
long long swap_distance(const Ranking& a, const Ranking& b);

// Same quantity by direct pair scan; kept as an independent path for
// property tests and as the reference on tiny inputs.
long long swap_distance_quadratic(const Ranking& a, const Ranking& b);

// Bit p of the result encodes the orientation of the p-th candidate pair
// (a<b, p = a*m - a*(a+1)/2 + b - a - 1): 1 iff a is ranked above b.
// Requires m <= 11 so all pairs fit in 64 bits; then
// swap_distance = popcount(mask(u) ^ mask(v)).
uint64_t pair_orientation_mask(const Ranking& r);

std::vector<std::vector<long long>> vote_distance_matrix(const Election& e);

// Min-cost perfect matching on a square cost matrix (assignment problem),
// O(n^3) shortest augmenting paths. If `match` is given, match[row] = column.
long long min_cost_assignment(const std::vector<std::vector<long long>>& cost,
                              std::vector<int>* match = nullptr);

enum class IsoMode { exact, heuristic };

struct IsoDistanceResult {
  long long distance = 0;
  std::vector<int> candidate_map;  // candidate c of the first election -> candidate_map[c] of the second
  std::vector<int> voter_map;      // voter i of the first election -> voter_map[i] of the second
  bool exact = false;
};

// Minimum total swap distance over all candidate and voter bijections.
// exact: branch-and-bound over candidate bijections (guarded, m <= 10),
//        assignment solved exactly at the leaves.
// heuristic: `restarts` alternating-optimization runs (fix candidate map ->
//        optimal voter matching; fix matching -> pairwise candidate
//        transpositions), first restart seeded from a position-histogram
//        match, the rest random. Result is always >= the exact optimum.
IsoDistanceResult isomorphic_swap_distance(const Election& a, const Election& b,
                                           IsoMode mode = IsoMode::heuristic,
                                           uint64_t seed = 1, int restarts = 10);

}  // namespace ordmetrics
