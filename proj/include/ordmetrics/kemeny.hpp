#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ordmetrics/core.hpp"

namespace ordmetrics {

// geq[a][b] = true iff at least half the voters rank a above b
struct MajorityRelation {
  int num_candidates = 0;
  std::vector<std::vector<char>> geq;

  bool strict(int a, int b) const { return geq[static_cast<size_t>(a)][static_cast<size_t>(b)] && !geq[static_cast<size_t>(b)][static_cast<size_t>(a)]; }
  bool tied(int a, int b) const { return geq[static_cast<size_t>(a)][static_cast<size_t>(b)] && geq[static_cast<size_t>(b)][static_cast<size_t>(a)]; }
};

MajorityRelation majority_relation(const Election& e);

// true iff some closed walk along weak majority edges contains a strict edge
bool has_condorcet_cycle(const Election& e);

struct KemenyResult {
  Ranking ranking;
  long long cost = 0;
};

long long kemeny_cost(const Election& e, const Ranking& r);

// exact optimum over all rankings; subset DP, m <= 16 (BudgetExceeded beyond)
KemenyResult kemeny_exact(const Election& e);

enum class KKMethod { greedy, local_search, combined, best_of };

struct KKemenyResult {
  int k = 0;
  std::vector<Ranking> rankings;     // exactly k entries (padded with repeats if needed)
  std::vector<int> assignment;       // voter -> index of a nearest chosen ranking
  long long distance = 0;            // sum over voters of min distance to the set
  std::string method;
};

// Exact oracle: enumerate partitions of the voters into at most k blocks and
// solve 1-Kemeny per block. `budget` caps the number of set partitions
// (throws BudgetExceeded when the count exceeds it).
KKemenyResult k_kemeny_exact_partition(const Election& e, int k, long long budget = 2000000);

// Exact restricted optimum over k-subsets of the distinct votes. `budget`
// caps the number of subsets.
KKemenyResult k_kemeny_among_votes(const Election& e, int k, long long budget = 2000000);

// Greedy trace: result for every k = 1..k_max; step k adds the distinct vote
// that lowers the total cost most (ties by lowest distinct-vote index, in
// order of first appearance).
std::vector<KKemenyResult> k_kemeny_greedy(const Election& e, int k_max);

// Best-improvement local search over the distinct votes, starting from k of
// them chosen uniformly at random; a step swaps one chosen ranking for one
// unchosen one (ties by lexicographic (out, in) distinct-vote index).
KKemenyResult k_kemeny_local_search(const Election& e, int k, uint64_t seed);

// Local search started from the k-th greedy solution.
KKemenyResult k_kemeny_combined(const Election& e, int k, uint64_t seed);

// kappa_k for all k = 1..n. Per-k runs are repaired to a non-increasing
// trace: the reported k-solution is the better of the method's own run and
// the (k-1)-solution extended by the best additional distinct vote, so every
// value is realized by an explicit ranking set. best_of = pointwise min of
// the local-search and combined profiles.
std::vector<long long> k_kemeny_profile(const Election& e, KKMethod method, uint64_t seed);

// Profile used by the indices: best_of (or the given solver) with the k=1
// entry replaced by the exact optimum when m <= 16 and the repair chain
// re-run against that head.
std::vector<long long> kappa_profile_for_indices(const Election& e, KKMethod solver, uint64_t seed);

// (kappa_1, kappa_2) only — kappa_1 exact when m <= 16, kappa_2 via the
// given solver. Avoids materializing anything quadratic in the number of
// distinct votes, so it scales to elections listing every ranking once.
std::pair<long long, long long> kappa_head(const Election& e, KKMethod solver, uint64_t seed);

}  // namespace ordmetrics
