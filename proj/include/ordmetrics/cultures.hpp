#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"

namespace ordmetrics {

class Rng;

// Dispersion parameter conversion for the Mallows model: finds phi such that
// the expected swap distance from the central vote equals
// norm_phi * C(m,2)/2 (the phi=1 expectation). Bisection; |error| < 1e-10.
double norm_phi_to_phi(double norm_phi, int m);

Election sample_ic(int m, int n, uint64_t seed);

// Repeated-insertion sampling; exact Mallows distribution for any phi.
Election sample_mallows(const Ranking& central, double norm_phi, int n, uint64_t seed);

// Per vote: with probability omega use the reversed central vote.
Election sample_mallows_mixture(const Ranking& central, double norm_phi, double omega, int n,
                                uint64_t seed);

// Polya urn with real-valued contagion alpha >= 0: the i-th vote copies a
// uniformly random earlier vote with probability (i-1)a/(1+(i-1)a), else is a
// fresh uniform ranking.
Election sample_urn(double alpha, int m, int n, uint64_t seed);

// Single-peaked w.r.t. the axis 0 < 1 < ... < m-1.
// Walsh: uniform over all 2^(m-1) single-peaked votes.
// Conitzer: uniform random peak, then extend left/right with prob 1/2 each.
Election sample_sp_walsh(int m, int n, uint64_t seed);
Election sample_sp_conitzer(int m, int n, uint64_t seed);

// Single-peaked on the cycle 0,1,...,m-1,0: uniform top candidate, then the
// arc grows at either end with prob 1/2. Uniform over all m*2^(m-2) votes.
Election sample_spoc(int m, int n, uint64_t seed);

// v1 = 0>1>...>m-1; each later vote swaps one uniformly random
// still-ascending adjacent pair of its predecessor. Once the reverse order is
// reached (after C(m,2) steps) the remaining votes repeat it. The voter order
// of the result is the domain order.
Election sample_single_crossing(int m, int n, uint64_t seed);

enum class GsTree { balanced, caterpillar };

// The vote read off the tree's leaves after reversing the children of every
// internal node whose bit is set in `flips` (preorder numbering of the m-1
// internal nodes). flips = 0 yields 0>1>...>m-1.
Ranking gs_vote(GsTree tree, int m, uint64_t flips);

// Uniform over the 2^(m-1) votes consistent with the fixed tree.
Election sample_group_separable(GsTree tree, int m, int n, uint64_t seed);

enum class PointSpace { cube, circle, sphere };

struct EuclideanPoints {
  std::vector<std::vector<double>> candidates;
  std::vector<std::vector<double>> voters;
};

// Candidates sorted by squared distance to the voter point; ties by id.
Ranking rank_by_distance(const std::vector<std::vector<double>>& candidate_points,
                         const std::vector<double>& voter_point);

// Candidate and voter points uniform on [0,1]^dim, the unit circle (2D) or
// the unit sphere (3D); dim is only read for cube. Sampled points are
// returned through `points` when non-null.
Election sample_euclidean(PointSpace space, int dim, int m, int n, uint64_t seed,
                          EuclideanPoints* points = nullptr);

// Samples an election realizing X exactly: votes are built position by
// position, uniformly over the candidates that keep the residual matrix
// completable (bipartite-matching feasibility check). Every realization has
// positive probability.
Election realize_position_matrix(const PositionMatrix& x, uint64_t seed);

Election identity_election(int m, int n);
// n/2 copies of 0>1>...>m-1 and n/2 of its reverse; n must be even.
Election antagonism_election(int m, int n);

// All entries n/m; requires m | n.
PositionMatrix un_star_matrix(int m, int n);
// Two diagonal blocks of sizes (alpha*m, m - alpha*m); alpha*m must be
// integral. Within a block of size s, entries are n/s rounded to a circulant
// pattern: base floor(n/s), plus one on the r = n mod s diagonals starting at
// the main one.
PositionMatrix st_star_matrix(double alpha, int m, int n);
// k diagonal blocks of near-equal size (ascending), same circulant rounding.
PositionMatrix id_st_matrix(int blocks, int m, int n);

Election un_star_election(int m, int n, uint64_t seed);
Election st_star_election(double alpha, int m, int n, uint64_t seed);

// share = fraction of antagonism voters; identity block first. share*n must
// be an even integer count.
Election id_an_election(double share, int m, int n);
// share = fraction of uniformity voters; antagonism block first, then a
// realization of the all-(share*n/m) matrix. share*n must be integral,
// divisible by m, and n - share*n even.
Election an_un_election(double share, int m, int n, uint64_t seed);
Election id_st_election(int blocks, int m, int n, uint64_t seed);

// Restrict the source to its top-m Borda candidates, then draw n votes
// i.i.d. uniformly with replacement.
Election sample_empirical(const Election& source, int m, int n, uint64_t seed);

// Every ranking of m candidates exactly once, in lexicographic order (m <= 9).
Election full_un_election(int m);

// axis lists candidate ids along the societal axis.
bool is_single_peaked(const Ranking& vote, const std::vector<int>& axis);
bool is_single_peaked(const Election& e, const std::vector<int>& axis);
bool is_single_peaked_on_circle(const Ranking& vote, const std::vector<int>& axis);
bool is_single_peaked_on_circle(const Election& e, const std::vector<int>& axis);
// Checks the given voter order: for every candidate pair the voters
// preferring one side form a prefix.
bool is_single_crossing(const Election& e);
bool is_consistent_with_tree(const Ranking& vote, GsTree tree, int m);

// ---------------------------------------------------------------------------
// Dataset manifests

struct ParamSpec {
  enum class Dist { fixed, uniform, gamma, one_minus_sqrt };
  Dist dist = Dist::fixed;
  double value = 0.0;           // fixed
  double lo = 0.0, hi = 1.0;    // uniform
  double shape = 1.0;           // gamma (scale 1)

  double resolve(Rng& rng) const;
};

struct CultureSpec {
  std::string kind;
  std::map<std::string, ParamSpec> params;
  std::string source;  // election file path, empirical only
  int m = 0;
  int n = 0;
  uint64_t seed = 0;
  int count = 1;
  std::string tag;
};

// One concrete election to generate. Parameters are resolved with the stream
// Rng(mix(entry.seed, instance)) in sorted parameter-name order (fixed values
// consume no draws); the sampler seed is the next u64 of the same stream.
struct ResolvedSpec {
  std::string kind;
  std::map<std::string, double> params;
  std::string source;
  int m = 0;
  int n = 0;
  uint64_t seed = 0;
  std::string id;   // "<entry:02d>_<tag>_<instance:03d>"
  std::string tag;
};

// JSON array of {kind, params, m, n, seed, count, tag[, source]}; a param is
// a number or {"dist": "uniform"|"gamma"|"one_minus_sqrt", ...}.
std::vector<CultureSpec> load_manifest(const std::string& path);
std::vector<ResolvedSpec> resolve_specs(const std::vector<CultureSpec>& entries);

double param_or(const ResolvedSpec& spec, const std::string& name, double fallback);

// Dispatch on spec.kind; the central vote for Mallows kinds is
// 0>1>...>m-1. Throws ValidationError for unknown kinds or out-of-range
// parameters.
Election sample(const ResolvedSpec& spec);

}  // namespace ordmetrics
