#include "ordmetrics/cultures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include "json.hpp"
#include "ordmetrics/rng.hpp"

namespace fs = std::filesystem;

namespace ordmetrics {

namespace {

// Expected swap distance from the central vote under Mallows(phi), computed
// insertion by insertion; stable for phi in [0,1] including both endpoints.
double expected_swap(double phi, int m) {
  double total = 0.0;
  for (int k = 1; k < m; ++k) {
    double den = 0.0, num = 0.0, pj = 1.0;
    for (int j = 0; j <= k; ++j) {
      den += pj;
      num += j * pj;
      pj *= phi;
    }
    total += num / den;
  }
  return total;
}

}  // namespace

double norm_phi_to_phi(double norm_phi, int m) {
  if (norm_phi < 0.0 || norm_phi > 1.0) throw ValidationError("norm_phi must lie in [0,1]");
  if (m < 2 || norm_phi == 0.0) return 0.0;
  if (norm_phi == 1.0) return 1.0;
  const double target = norm_phi * m * (m - 1) / 4.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    (expected_swap(mid, m) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Election sample_ic(int m, int n, uint64_t seed) {
  if (m < 1 || n < 0) throw ValidationError("ic: need m >= 1, n >= 0");
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    Ranking r = identity_ranking(m);
    rng.shuffle(r.order);
    e.votes.push_back(std::move(r));
  }
  return e;
}

namespace {

// One repeated-insertion draw: candidate k of the central vote is inserted
// b slots above the bottom with probability proportional to phi^b, adding
// exactly b new inversions.
Ranking mallows_vote(const Ranking& central, double phi, Rng& rng) {
  const int m = central.size();
  std::vector<int> vote;
  vote.reserve(m);
  for (int k = 0; k < m; ++k) {
    int b = 0;
    if (k > 0) {
      double total = 0.0, pj = 1.0;
      for (int j = 0; j <= k; ++j) {
        total += pj;
        pj *= phi;
      }
      double u = rng.real01() * total;
      double cum = 0.0;
      pj = 1.0;
      for (int j = 0; j <= k; ++j) {
        cum += pj;
        if (u < cum) {
          b = j;
          break;
        }
        pj *= phi;
        b = k;
      }
    }
    vote.insert(vote.begin() + (k - b), central.order[k]);
  }
  return Ranking(std::move(vote));
}

}  // namespace

Election sample_mallows(const Ranking& central, double norm_phi, int n, uint64_t seed) {
  const int m = central.size();
  validate_ranking(central, m);
  const double phi = norm_phi_to_phi(norm_phi, m);
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) e.votes.push_back(mallows_vote(central, phi, rng));
  return e;
}

Election sample_mallows_mixture(const Ranking& central, double norm_phi, double omega, int n,
                                uint64_t seed) {
  if (omega < 0.0 || omega > 0.5) throw ValidationError("omega must lie in [0,0.5]");
  const int m = central.size();
  validate_ranking(central, m);
  const double phi = norm_phi_to_phi(norm_phi, m);
  const Ranking rev = reversed(central);
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    bool flip = rng.coin(omega);  // coin first, then the insertion draws
    e.votes.push_back(mallows_vote(flip ? rev : central, phi, rng));
  }
  return e;
}

Election sample_urn(double alpha, int m, int n, uint64_t seed) {
  if (alpha < 0.0) throw ValidationError("urn: alpha must be >= 0");
  if (m < 1 || n < 0) throw ValidationError("urn: need m >= 1, n >= 0");
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    double p_copy = i == 0 ? 0.0 : i * alpha / (1.0 + i * alpha);
    if (i > 0 && rng.coin(p_copy)) {
      e.votes.push_back(e.votes[static_cast<size_t>(rng.below(i))]);
    } else {
      Ranking r = identity_ranking(m);
      rng.shuffle(r.order);
      e.votes.push_back(std::move(r));
    }
  }
  return e;
}

Election sample_sp_walsh(int m, int n, uint64_t seed) {
  if (m < 1 || n < 0) throw ValidationError("sp_walsh: need m >= 1, n >= 0");
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    // Fill from the worst position: the worst remaining candidate is always
    // an endpoint of the remaining axis interval, each side with prob 1/2.
    std::vector<int> v(m);
    int lo = 0, hi = m - 1;
    for (int p = m - 1; p > 0; --p) v[p] = rng.coin(0.5) ? lo++ : hi--;
    v[0] = lo;
    e.votes.push_back(Ranking(std::move(v)));
  }
  return e;
}

Election sample_sp_conitzer(int m, int n, uint64_t seed) {
  if (m < 1 || n < 0) throw ValidationError("sp_conitzer: need m >= 1, n >= 0");
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(m);
    int lo = static_cast<int>(rng.below(m));
    int hi = lo;
    v[0] = lo;
    for (int p = 1; p < m; ++p) {
      if (lo == 0)
        v[p] = ++hi;
      else if (hi == m - 1)
        v[p] = --lo;
      else
        v[p] = rng.coin(0.5) ? --lo : ++hi;
    }
    e.votes.push_back(Ranking(std::move(v)));
  }
  return e;
}

Election sample_spoc(int m, int n, uint64_t seed) {
  if (m < 1 || n < 0) throw ValidationError("spoc: need m >= 1, n >= 0");
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(m);
    int lo = static_cast<int>(rng.below(m));
    int hi = lo;
    v[0] = lo;
    for (int p = 1; p < m; ++p) {
      if (rng.coin(0.5)) {
        lo = (lo + m - 1) % m;
        v[p] = lo;
      } else {
        hi = (hi + 1) % m;
        v[p] = hi;
      }
    }
    e.votes.push_back(Ranking(std::move(v)));
  }
  return e;
}

Election sample_single_crossing(int m, int n, uint64_t seed) {
  if (m < 1 || n < 0) throw ValidationError("single_crossing: need m >= 1, n >= 0");
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  Ranking cur = identity_ranking(m);
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      std::vector<int> ascending;
      for (int j = 0; j + 1 < m; ++j)
        if (cur.order[j] < cur.order[j + 1]) ascending.push_back(j);
      if (!ascending.empty()) {
        int j = ascending[static_cast<size_t>(rng.below(ascending.size()))];
        std::swap(cur.order[j], cur.order[j + 1]);
      }
    }
    e.votes.push_back(cur);
  }
  return e;
}

namespace {

struct TreeNode {
  int left = -1, right = -1, leaf = -1;
};

// Creation order is preorder; internal nodes are numbered by a scan below.
int build_balanced(std::vector<TreeNode>& nodes, int lo, int hi) {
  int idx = static_cast<int>(nodes.size());
  nodes.push_back({});
  if (hi - lo == 1) {
    nodes[idx].leaf = lo;
    return idx;
  }
  int half = (hi - lo + 1) / 2;
  nodes[idx].left = build_balanced(nodes, lo, lo + half);
  nodes[idx].right = build_balanced(nodes, lo + half, hi);
  return idx;
}

int build_caterpillar(std::vector<TreeNode>& nodes, int lo, int hi) {
  int idx = static_cast<int>(nodes.size());
  nodes.push_back({});
  if (hi - lo == 1) {
    nodes[idx].leaf = lo;
    return idx;
  }
  int leaf_idx = static_cast<int>(nodes.size());
  nodes.push_back({});
  nodes[leaf_idx].leaf = lo;
  nodes[idx].left = leaf_idx;
  nodes[idx].right = build_caterpillar(nodes, lo + 1, hi);
  return idx;
}

std::vector<TreeNode> build_tree(GsTree tree, int m) {
  if (m < 1 || m > 64) throw ValidationError("tree votes support 1..64 candidates");
  std::vector<TreeNode> nodes;
  if (tree == GsTree::balanced)
    build_balanced(nodes, 0, m);
  else
    build_caterpillar(nodes, 0, m);
  return nodes;
}

// internal_index[node] for nodes in creation (= preorder) order; -1 for leaves
std::vector<int> internal_indices(const std::vector<TreeNode>& nodes) {
  std::vector<int> idx(nodes.size(), -1);
  int next = 0;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].leaf < 0) idx[i] = next++;
  return idx;
}

}  // namespace

Ranking gs_vote(GsTree tree, int m, uint64_t flips) {
  auto nodes = build_tree(tree, m);
  auto internal = internal_indices(nodes);
  std::vector<int> out;
  out.reserve(m);
  std::function<void(int)> read = [&](int idx) {
    const TreeNode& nd = nodes[idx];
    if (nd.leaf >= 0) {
      out.push_back(nd.leaf);
      return;
    }
    bool flip = (flips >> internal[idx]) & 1;
    read(flip ? nd.right : nd.left);
    read(flip ? nd.left : nd.right);
  };
  read(0);
  return Ranking(std::move(out));
}

Election sample_group_separable(GsTree tree, int m, int n, uint64_t seed) {
  if (m < 2) throw ValidationError("group_separable: need m >= 2");
  if (n < 0) throw ValidationError("group_separable: need n >= 0");
  Rng rng(seed);
  const uint64_t mask = (uint64_t{1} << (m - 1)) - 1;
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i) e.votes.push_back(gs_vote(tree, m, rng.next_u64() & mask));
  return e;
}

Ranking rank_by_distance(const std::vector<std::vector<double>>& candidate_points,
                         const std::vector<double>& voter_point) {
  const int m = static_cast<int>(candidate_points.size());
  std::vector<double> d2(m, 0.0);
  for (int c = 0; c < m; ++c) {
    if (candidate_points[c].size() != voter_point.size())
      throw ValidationError("rank_by_distance: dimension mismatch");
    for (size_t k = 0; k < voter_point.size(); ++k) {
      double diff = candidate_points[c][k] - voter_point[k];
      d2[c] += diff * diff;
    }
  }
  Ranking r = identity_ranking(m);
  std::sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    if (d2[a] != d2[b]) return d2[a] < d2[b];
    return a < b;
  });
  return r;
}

namespace {

std::vector<double> sample_point(PointSpace space, int dim, Rng& rng) {
  switch (space) {
    case PointSpace::cube: {
      std::vector<double> p(dim);
      for (int k = 0; k < dim; ++k) p[k] = rng.real01();
      return p;
    }
    case PointSpace::circle: {
      double t = rng.real01() * 2.0 * M_PI;
      return {std::cos(t), std::sin(t)};
    }
    case PointSpace::sphere: {
      for (;;) {
        double x = rng.normal(), y = rng.normal(), z = rng.normal();
        double r = std::sqrt(x * x + y * y + z * z);
        if (r > 1e-9) return {x / r, y / r, z / r};
      }
    }
  }
  throw ValidationError("unknown point space");
}

}  // namespace

Election sample_euclidean(PointSpace space, int dim, int m, int n, uint64_t seed,
                          EuclideanPoints* points) {
  if (space == PointSpace::cube && dim < 1) throw ValidationError("euclidean: need dim >= 1");
  if (m < 1 || n < 0) throw ValidationError("euclidean: need m >= 1, n >= 0");
  Rng rng(seed);
  EuclideanPoints pts;
  pts.candidates.reserve(m);
  pts.voters.reserve(n);
  for (int c = 0; c < m; ++c) pts.candidates.push_back(sample_point(space, dim, rng));
  for (int v = 0; v < n; ++v) pts.voters.push_back(sample_point(space, dim, rng));
  Election e;
  e.num_candidates = m;
  e.votes.reserve(n);
  for (int v = 0; v < n; ++v) e.votes.push_back(rank_by_distance(pts.candidates, pts.voters[v]));
  if (points) *points = std::move(pts);
  return e;
}

namespace {

// Can positions p0..m-1 be matched one-to-one to the unused candidates along
// positive entries of rem? (Kuhn's augmenting paths.)
bool completable(const std::vector<std::vector<long long>>& rem, const std::vector<char>& used,
                 int p0) {
  const int m = static_cast<int>(rem.size());
  std::vector<int> match_pos(m, -1);  // candidate -> position
  std::vector<char> vis(m, 0);
  std::function<bool(int)> augment = [&](int p) -> bool {
    for (int c = 0; c < m; ++c) {
      if (used[c] || vis[c] || rem[p][c] <= 0) continue;
      vis[c] = 1;
      if (match_pos[c] < 0 || augment(match_pos[c])) {
        match_pos[c] = p;
        return true;
      }
    }
    return false;
  };
  for (int p = p0; p < m; ++p) {
    std::fill(vis.begin(), vis.end(), 0);
    if (!augment(p)) return false;
  }
  return true;
}

}  // namespace

Election realize_position_matrix(const PositionMatrix& x, uint64_t seed) {
  validate_position_matrix(x);
  const int m = x.num_candidates;
  const long long n = x.num_voters;
  auto rem = x.counts;
  Rng rng(seed);
  Election e;
  e.num_candidates = m;
  e.votes.reserve(static_cast<size_t>(n));
  for (long long t = 0; t < n; ++t) {
    std::vector<int> vote;
    vote.reserve(m);
    std::vector<char> used(m, 0);
    for (int p = 0; p < m; ++p) {
      std::vector<int> feasible;
      for (int c = 0; c < m; ++c) {
        if (used[c] || rem[p][c] <= 0) continue;
        used[c] = 1;
        if (completable(rem, used, p + 1)) feasible.push_back(c);
        used[c] = 0;
      }
      if (feasible.empty()) throw ValidationError("position matrix is not realizable");
      int c = feasible[static_cast<size_t>(rng.below(feasible.size()))];
      vote.push_back(c);
      used[c] = 1;
    }
    for (int p = 0; p < m; ++p) --rem[p][vote[p]];
    e.votes.push_back(Ranking(std::move(vote)));
  }
  return e;
}

Election identity_election(int m, int n) {
  if (m < 1 || n < 0) throw ValidationError("identity: need m >= 1, n >= 0");
  Election e;
  e.num_candidates = m;
  e.votes.assign(n, identity_ranking(m));
  return e;
}

Election antagonism_election(int m, int n) {
  if (m < 1 || n < 0) throw ValidationError("antagonism: need m >= 1, n >= 0");
  if (n % 2 != 0) throw ValidationError("antagonism requires an even number of voters");
  Election e;
  e.num_candidates = m;
  e.votes.assign(n / 2, identity_ranking(m));
  e.votes.resize(n, reversed(identity_ranking(m)));
  return e;
}

namespace {

PositionMatrix zero_matrix(int m, long long n) {
  PositionMatrix x;
  x.num_candidates = m;
  x.num_voters = n;
  x.counts.assign(m, std::vector<long long>(m, 0));
  return x;
}

// Entries base = floor(n/s) everywhere, +1 on the r = n mod s circulant
// diagonals starting at the main one; every row and column sums to n.
void fill_block(PositionMatrix& x, int off, int s, long long n) {
  const long long base = n / s;
  const int r = static_cast<int>(n % s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) x.counts[off + i][off + j] = base + ((j - i + s) % s < r ? 1 : 0);
}

PositionMatrix block_matrix(const std::vector<int>& sizes, int m, long long n) {
  PositionMatrix x = zero_matrix(m, n);
  int off = 0;
  for (int s : sizes) {
    fill_block(x, off, s, n);
    off += s;
  }
  return x;
}

int integral_param(double v, const char* what) {
  double r = std::llround(v);
  if (std::abs(v - r) > 1e-9) throw ValidationError(std::string(what) + " must be integral");
  return static_cast<int>(r);
}

}  // namespace

PositionMatrix un_star_matrix(int m, int n) {
  if (m < 1 || n < 0) throw ValidationError("un_star: need m >= 1, n >= 0");
  if (n % m != 0) throw ValidationError("un_star requires m | n");
  PositionMatrix x = zero_matrix(m, n);
  for (auto& row : x.counts) std::fill(row.begin(), row.end(), n / m);
  return x;
}

PositionMatrix st_star_matrix(double alpha, int m, int n) {
  if (m < 2 || n < 0) throw ValidationError("st_star: need m >= 2, n >= 0");
  int s1 = integral_param(alpha * m, "st_star: alpha * m");
  if (s1 < 1 || s1 > m - 1) throw ValidationError("st_star: alpha * m must lie in 1..m-1");
  return block_matrix({s1, m - s1}, m, n);
}

PositionMatrix id_st_matrix(int blocks, int m, int n) {
  if (m < 1 || n < 0) throw ValidationError("id_st: need m >= 1, n >= 0");
  if (blocks < 2 || blocks > m) throw ValidationError("id_st: blocks must lie in 2..m");
  std::vector<int> sizes;
  if (m == 8 && blocks == 6) {
    sizes = {1, 2, 2, 1, 1, 1};
  } else {
    int q = m / blocks, r = m % blocks;
    sizes.assign(blocks - r, q);
    sizes.insert(sizes.end(), r, q + 1);
  }
  return block_matrix(sizes, m, n);
}

Election un_star_election(int m, int n, uint64_t seed) {
  return realize_position_matrix(un_star_matrix(m, n), seed);
}

Election st_star_election(double alpha, int m, int n, uint64_t seed) {
  return realize_position_matrix(st_star_matrix(alpha, m, n), seed);
}

Election id_an_election(double share, int m, int n) {
  if (share < 0.0 || share > 1.0) throw ValidationError("id_an: share must lie in [0,1]");
  int a = integral_param(share * n, "id_an: share * n");
  if (a % 2 != 0) throw ValidationError("id_an: share * n must be even");
  Election e = identity_election(m, n - a);
  Election an = antagonism_election(m, a);
  e.votes.insert(e.votes.end(), an.votes.begin(), an.votes.end());
  return e;
}

Election an_un_election(double share, int m, int n, uint64_t seed) {
  if (share < 0.0 || share > 1.0) throw ValidationError("an_un: share must lie in [0,1]");
  int u = integral_param(share * n, "an_un: share * n");
  if (u % m != 0) throw ValidationError("an_un: share * n must be divisible by m");
  if ((n - u) % 2 != 0) throw ValidationError("an_un: (1 - share) * n must be even");
  Election e = antagonism_election(m, n - u);
  Election un = realize_position_matrix(un_star_matrix(m, u), seed);
  e.votes.insert(e.votes.end(), un.votes.begin(), un.votes.end());
  return e;
}

Election id_st_election(int blocks, int m, int n, uint64_t seed) {
  return realize_position_matrix(id_st_matrix(blocks, m, n), seed);
}

Election sample_empirical(const Election& source, int m, int n, uint64_t seed) {
  if (source.num_voters() == 0) throw ValidationError("empirical: source election is empty");
  Election base = borda_top(source, m);
  Rng rng(seed);
  Election e;
  e.num_candidates = base.num_candidates;
  e.labels = base.labels;
  e.votes.reserve(n);
  for (int i = 0; i < n; ++i)
    e.votes.push_back(base.votes[static_cast<size_t>(rng.below(base.votes.size()))]);
  return e;
}

Election full_un_election(int m) {
  if (m < 1 || m > 9) throw ValidationError("full_un: supported for 1 <= m <= 9");
  Election e;
  e.num_candidates = m;
  Ranking r = identity_ranking(m);
  do {
    e.votes.push_back(r);
  } while (std::next_permutation(r.order.begin(), r.order.end()));
  return e;
}

bool is_single_peaked(const Ranking& vote, const std::vector<int>& axis) {
  const int m = vote.size();
  validate_ranking(Ranking(axis), m);
  std::vector<int> axpos(m);
  for (int i = 0; i < m; ++i) axpos[axis[i]] = i;
  int mn = axpos[vote.order[0]], mx = mn;
  for (int t = 1; t < m; ++t) {
    int p = axpos[vote.order[t]];
    mn = std::min(mn, p);
    mx = std::max(mx, p);
    if (mx - mn != t) return false;  // top-(t+1) set is not an axis interval
  }
  return true;
}

bool is_single_peaked(const Election& e, const std::vector<int>& axis) {
  for (const auto& v : e.votes)
    if (!is_single_peaked(v, axis)) return false;
  return true;
}

bool is_single_peaked_on_circle(const Ranking& vote, const std::vector<int>& axis) {
  const int m = vote.size();
  validate_ranking(Ranking(axis), m);
  std::vector<int> axpos(m);
  for (int i = 0; i < m; ++i) axpos[axis[i]] = i;
  std::vector<char> occ(m, 0);
  for (int t = 0; t < m; ++t) {
    occ[axpos[vote.order[t]]] = 1;
    int transitions = 0;
    for (int i = 0; i < m; ++i) transitions += occ[i] != occ[(i + 1) % m];
    if (transitions > 2) return false;  // top set is not a cyclic interval
  }
  return true;
}

bool is_single_peaked_on_circle(const Election& e, const std::vector<int>& axis) {
  for (const auto& v : e.votes)
    if (!is_single_peaked_on_circle(v, axis)) return false;
  return true;
}

bool is_single_crossing(const Election& e) {
  const int m = e.num_candidates;
  const int n = e.num_voters();
  if (n == 0) return true;
  std::vector<std::vector<int>> pos(n);
  for (int v = 0; v < n; ++v) pos[v] = e.votes[v].positions();
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      int switches = 0;
      bool prev = pos[0][a] < pos[0][b];
      for (int v = 1; v < n; ++v) {
        bool cur = pos[v][a] < pos[v][b];
        if (cur != prev) {
          ++switches;
          prev = cur;
        }
      }
      if (switches > 1) return false;
    }
  }
  return true;
}

bool is_consistent_with_tree(const Ranking& vote, GsTree tree, int m) {
  validate_ranking(vote, m);
  auto nodes = build_tree(tree, m);
  std::vector<uint64_t> leafmask(nodes.size(), 0);
  std::vector<int> count(nodes.size(), 0);
  // children have larger indices than their parent, so a reverse scan fills
  // masks bottom-up
  for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
    if (nodes[i].leaf >= 0) {
      leafmask[i] = uint64_t{1} << nodes[i].leaf;
      count[i] = 1;
    } else {
      leafmask[i] = leafmask[nodes[i].left] | leafmask[nodes[i].right];
      count[i] = count[nodes[i].left] + count[nodes[i].right];
    }
  }
  std::vector<uint64_t> prefix(m + 1, 0);
  for (int i = 0; i < m; ++i) prefix[i + 1] = prefix[i] | (uint64_t{1} << vote.order[i]);
  std::function<bool(int, int, int)> check = [&](int idx, int lo, int hi) -> bool {
    const TreeNode& nd = nodes[idx];
    if (nd.leaf >= 0) return vote.order[lo] == nd.leaf;
    int ls = count[nd.left];
    uint64_t first = prefix[lo + ls] ^ prefix[lo];
    if (first == leafmask[nd.left])
      return check(nd.left, lo, lo + ls) && check(nd.right, lo + ls, hi);
    int rs = count[nd.right];
    uint64_t alt = prefix[lo + rs] ^ prefix[lo];
    if (alt == leafmask[nd.right])
      return check(nd.right, lo, lo + rs) && check(nd.left, lo + rs, hi);
    return false;
  };
  return check(0, 0, m);
}

// ---------------------------------------------------------------------------
// Dataset manifests

double ParamSpec::resolve(Rng& rng) const {
  switch (dist) {
    case Dist::fixed:
      return value;
    case Dist::uniform:
      return rng.real(lo, hi);
    case Dist::gamma:
      return rng.gamma(shape);
    case Dist::one_minus_sqrt:
      return 1.0 - std::sqrt(rng.real01());
  }
  throw ValidationError("unknown parameter distribution");
}

namespace {

const std::set<std::string>& known_kinds() {
  static const std::set<std::string> kinds = {
      "ic",           "mallows",        "mallows_mixture",
      "urn",          "sp_walsh",       "sp_conitzer",
      "spoc",         "single_crossing", "group_separable_balanced",
      "group_separable_caterpillar",    "euclidean_cube",
      "euclidean_circle",               "euclidean_sphere",
      "identity",     "antagonism",     "un_star",
      "st_star",      "id_an_mixture",  "an_un_mixture",
      "id_st_mixture", "empirical"};
  return kinds;
}

ParamSpec parse_param(const nlohmann::json& j, const std::string& name) {
  ParamSpec p;
  if (j.is_number()) {
    p.dist = ParamSpec::Dist::fixed;
    p.value = j.get<double>();
    return p;
  }
  if (!j.is_object() || !j.contains("dist"))
    throw ValidationError("parameter '" + name + "' must be a number or a {dist: ...} object");
  std::string dist = j.at("dist").get<std::string>();
  if (dist == "fixed") {
    p.dist = ParamSpec::Dist::fixed;
    p.value = j.at("value").get<double>();
  } else if (dist == "uniform") {
    p.dist = ParamSpec::Dist::uniform;
    p.lo = j.at("lo").get<double>();
    p.hi = j.at("hi").get<double>();
    if (p.hi < p.lo) throw ValidationError("parameter '" + name + "': hi < lo");
  } else if (dist == "gamma") {
    p.dist = ParamSpec::Dist::gamma;
    p.shape = j.at("shape").get<double>();
    if (p.shape <= 0) throw ValidationError("parameter '" + name + "': shape must be > 0");
  } else if (dist == "one_minus_sqrt") {
    p.dist = ParamSpec::Dist::one_minus_sqrt;
  } else {
    throw ValidationError("parameter '" + name + "': unknown dist '" + dist + "'");
  }
  return p;
}

}  // namespace

std::vector<CultureSpec> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("manifest " + path + ": " + ex.what());
  }
  if (!doc.is_array()) throw ValidationError("manifest " + path + ": top level must be an array");
  std::vector<CultureSpec> out;
  try {
    for (const auto& j : doc) {
      CultureSpec s;
      s.kind = j.at("kind").get<std::string>();
      if (!known_kinds().count(s.kind))
        throw ValidationError("manifest entry has unknown kind '" + s.kind + "'");
      s.m = j.at("m").get<int>();
      s.n = j.at("n").get<int>();
      s.seed = j.at("seed").get<uint64_t>();
      s.count = j.value("count", 1);
      s.tag = j.value("tag", s.kind);
      s.source = j.value("source", std::string());
      // relative source paths are taken relative to the manifest itself, so a
      // manifest can be invoked from any working directory
      if (!s.source.empty() && fs::path(s.source).is_relative()) {
        std::error_code ec;
        fs::path base = fs::weakly_canonical(fs::path(path), ec);
        if (ec) base = fs::absolute(fs::path(path));
        s.source = (base.parent_path() / s.source).lexically_normal().string();
      }
      if (s.m < 1 || s.n < 0 || s.count < 1)
        throw ValidationError("manifest entry '" + s.tag + "': need m >= 1, n >= 0, count >= 1");
      if (j.contains("params")) {
        for (const auto& [name, pj] : j.at("params").items())
          s.params[name] = parse_param(pj, name);
      }
      out.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("manifest " + path + ": " + ex.what());
  }
  return out;
}

std::vector<ResolvedSpec> resolve_specs(const std::vector<CultureSpec>& entries) {
  std::vector<ResolvedSpec> out;
  for (size_t ei = 0; ei < entries.size(); ++ei) {
    const CultureSpec& entry = entries[ei];
    for (int idx = 0; idx < entry.count; ++idx) {
      Rng rng(Rng::mix(entry.seed, static_cast<uint64_t>(idx)));
      ResolvedSpec rs;
      rs.kind = entry.kind;
      rs.source = entry.source;
      rs.m = entry.m;
      rs.n = entry.n;
      rs.tag = entry.tag;
      for (const auto& [name, ps] : entry.params) rs.params[name] = ps.resolve(rng);
      rs.seed = rng.next_u64();
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%02zu_%s_%03d", ei, entry.tag.c_str(), idx);
      rs.id = buf;
      out.push_back(std::move(rs));
    }
  }
  return out;
}

double param_or(const ResolvedSpec& spec, const std::string& name, double fallback) {
  auto it = spec.params.find(name);
  return it == spec.params.end() ? fallback : it->second;
}

namespace {

double need_param(const ResolvedSpec& spec, const std::string& name) {
  auto it = spec.params.find(name);
  if (it == spec.params.end())
    throw ValidationError(spec.kind + " requires parameter '" + name + "'");
  return it->second;
}

}  // namespace

Election sample(const ResolvedSpec& spec) {
  const int m = spec.m, n = spec.n;
  const uint64_t seed = spec.seed;
  const std::string& k = spec.kind;
  if (k == "ic") return sample_ic(m, n, seed);
  if (k == "mallows") return sample_mallows(identity_ranking(m), need_param(spec, "norm_phi"), n, seed);
  if (k == "mallows_mixture")
    return sample_mallows_mixture(identity_ranking(m), need_param(spec, "norm_phi"),
                                  need_param(spec, "omega"), n, seed);
  if (k == "urn") return sample_urn(need_param(spec, "alpha"), m, n, seed);
  if (k == "sp_walsh") return sample_sp_walsh(m, n, seed);
  if (k == "sp_conitzer") return sample_sp_conitzer(m, n, seed);
  if (k == "spoc") return sample_spoc(m, n, seed);
  if (k == "single_crossing") return sample_single_crossing(m, n, seed);
  if (k == "group_separable_balanced") return sample_group_separable(GsTree::balanced, m, n, seed);
  if (k == "group_separable_caterpillar")
    return sample_group_separable(GsTree::caterpillar, m, n, seed);
  if (k == "euclidean_cube")
    return sample_euclidean(PointSpace::cube, integral_param(need_param(spec, "dim"), "dim"), m, n,
                            seed);
  if (k == "euclidean_circle") return sample_euclidean(PointSpace::circle, 2, m, n, seed);
  if (k == "euclidean_sphere") return sample_euclidean(PointSpace::sphere, 3, m, n, seed);
  if (k == "identity") return identity_election(m, n);
  if (k == "antagonism") return antagonism_election(m, n);
  if (k == "un_star") return un_star_election(m, n, seed);
  if (k == "st_star") return st_star_election(param_or(spec, "alpha", 0.5), m, n, seed);
  if (k == "id_an_mixture") return id_an_election(need_param(spec, "share"), m, n);
  if (k == "an_un_mixture") return an_un_election(need_param(spec, "share"), m, n, seed);
  if (k == "id_st_mixture")
    return id_st_election(integral_param(need_param(spec, "blocks"), "blocks"), m, n, seed);
  if (k == "empirical") {
    if (spec.source.empty()) throw ValidationError("empirical requires a source file");
    return sample_empirical(read_election_file(spec.source), m, n, seed);
  }
  throw ValidationError("unknown culture kind '" + k + "'");
}

}  // namespace ordmetrics
