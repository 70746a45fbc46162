#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordmetrics {

// Thrown on malformed input (files, rankings, matrices, CLI args). CLI exit 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an exact solver would exceed its configured budget. CLI exit 2.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ranking lists candidate ids best-first. Valid iff it is a permutation of
// 0..m-1.
struct Ranking {
  std::vector<int> order;

  Ranking() = default;
  explicit Ranking(std::vector<int> o) : order(std::move(o)) {}

  int size() const { return static_cast<int>(order.size()); }

  // pos[c] = index of candidate c in `order` (0 = best)
  std::vector<int> positions() const;

  bool operator==(const Ranking& o) const { return order == o.order; }
  bool operator!=(const Ranking& o) const { return order != o.order; }
  bool operator<(const Ranking& o) const { return order < o.order; }
};

Ranking identity_ranking(int m);
Ranking reversed(const Ranking& r);

struct Election {
  int num_candidates = 0;
  std::vector<Ranking> votes;
  // optional candidate labels; empty or exactly num_candidates entries
  std::vector<std::string> labels;

  int num_voters() const { return static_cast<int>(votes.size()); }
};

// counts[p][c] = number of votes placing candidate c at position p
struct PositionMatrix {
  int num_candidates = 0;
  long long num_voters = 0;
  std::vector<std::vector<long long>> counts;
};

// wins[a][b] = number of votes ranking a above b (diagonal 0)
struct PairwisePreference {
  int num_candidates = 0;
  long long num_voters = 0;
  std::vector<std::vector<long long>> wins;
};

inline long long pair_count(int m) { return static_cast<long long>(m) * (m - 1) / 2; }

void validate_ranking(const Ranking& r, int num_candidates);
// throws ValidationError naming the first offending vote index
void validate_election(const Election& e);
void validate_position_matrix(const PositionMatrix& x);

PositionMatrix position_matrix(const Election& e);
PairwisePreference pairwise_preference(const Election& e);

// score[c] = sum over votes of (m-1-position of c)
std::vector<long long> borda_scores(const Election& e);

// Restrict to the `top_m` candidates with highest Borda score (ties broken by
// lower candidate id), drop the rest from every vote, re-index survivors by
// (score desc, old id asc) -> 0..top_m-1.
Election borda_top(const Election& e, int top_m);

// Each partial vote is a duplicate-free prefix over a subset of 0..m-1; the
// missing candidates are appended in uniformly random order.
Election complete_partial_votes(int num_candidates,
                                const std::vector<std::vector<int>>& partial_votes,
                                uint64_t seed);

// Text format:
//   # ordmetrics-election v1
//   m=<int> n=<int>
//   # label <idx> <text>          (optional, one per labelled candidate)
//   <count>: <c0>,<c1>,...         (counts sum to n)
Election read_election(std::istream& in);
Election read_election_file(const std::string& path);
void write_election(const Election& e, std::ostream& out);
void write_election_file(const Election& e, const std::string& path);

// Distinct votes in order of first appearance, with multiplicities.
struct DistinctVotes {
  std::vector<Ranking> rankings;
  std::vector<long long> weights;
  std::vector<int> voter_to_distinct;
};

DistinctVotes collapse_votes(const Election& e);

// true iff the two elections hold the same multiset of votes
bool same_vote_multiset(const Election& a, const Election& b);

}  // namespace ordmetrics
