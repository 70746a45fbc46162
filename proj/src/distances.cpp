#include "ordmetrics/distances.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "ordmetrics/kemeny.hpp"
#include "ordmetrics/rng.hpp"

namespace ordmetrics {

namespace {

long long count_inversions(std::vector<int>& a, std::vector<int>& tmp, size_t lo, size_t hi) {
  if (hi - lo <= 1) return 0;
  size_t mid = lo + (hi - lo) / 2;
  long long inv = count_inversions(a, tmp, lo, mid) + count_inversions(a, tmp, mid, hi);
  size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      tmp[k++] = a[i++];
    } else {
      inv += static_cast<long long>(mid - i);
      tmp[k++] = a[j++];
    }
  }
  while (i < mid) tmp[k++] = a[i++];
  while (j < hi) tmp[k++] = a[j++];
  std::copy(tmp.begin() + static_cast<long>(lo), tmp.begin() + static_cast<long>(hi),
            a.begin() + static_cast<long>(lo));
  return inv;
}

}  // namespace

long long swap_distance(const Ranking& a, const Ranking& b) {
  size_t m = a.order.size();
  if (b.order.size() != m) throw ValidationError("swap_distance: rankings differ in size");
  auto pos_b = b.positions();
  std::vector<int> seq(m), tmp(m);
  for (size_t k = 0; k < m; ++k) seq[k] = pos_b[static_cast<size_t>(a.order[k])];
  return count_inversions(seq, tmp, 0, m);
}

long long swap_distance_quadratic(const Ranking& a, const Ranking& b) {
  size_t m = a.order.size();
  if (b.order.size() != m) throw ValidationError("swap_distance: rankings differ in size");
  auto pa = a.positions();
  auto pb = b.positions();
  long long d = 0;
  for (size_t x = 0; x < m; ++x)
    for (size_t y = x + 1; y < m; ++y) {
      bool above_a = pa[x] < pa[y];
      bool above_b = pb[x] < pb[y];
      if (above_a != above_b) ++d;
    }
  return d;
}

uint64_t pair_orientation_mask(const Ranking& r) {
  int m = r.size();
  if (m > 11) throw ValidationError("pair_orientation_mask: needs m <= 11");
  auto pos = r.positions();
  uint64_t mask = 0;
  int p = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b, ++p)
      if (pos[static_cast<size_t>(a)] < pos[static_cast<size_t>(b)]) mask |= (1ULL << p);
  return mask;
}

std::vector<std::vector<long long>> vote_distance_matrix(const Election& e) {
  size_t n = e.votes.size();
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n, 0));
  if (e.num_candidates <= 11) {
    std::vector<uint64_t> masks(n);
    for (size_t i = 0; i < n; ++i) masks[i] = pair_orientation_mask(e.votes[i]);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        d[i][j] = d[j][i] = std::popcount(masks[i] ^ masks[j]);
  } else {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = swap_distance(e.votes[i], e.votes[j]);
  }
  return d;
}

long long min_cost_assignment(const std::vector<std::vector<long long>>& cost,
                              std::vector<int>* match) {
  size_t n = cost.size();
  for (const auto& row : cost)
    if (row.size() != n) throw ValidationError("assignment: cost matrix must be square");
  if (n == 0) {
    if (match) match->clear();
    return 0;
  }
  const long long INF = std::numeric_limits<long long>::max() / 4;
  // potentials u,v; p[j] = row matched to column j (1-based internally)
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<size_t> p(n + 1, 0), way(n + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    p[0] = i;
    size_t j0 = 0;
    std::vector<long long> minv(n + 1, INF);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      size_t i0 = p[j0], j1 = 0;
      long long delta = INF;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  long long total = 0;
  if (match) match->assign(n, -1);
  for (size_t j = 1; j <= n; ++j) {
    if (p[j] == 0) continue;
    total += cost[p[j] - 1][j - 1];
    if (match) (*match)[p[j] - 1] = static_cast<int>(j - 1);
  }
  return total;
}

namespace {

// Applies a candidate relabeling to a vote: out.order[k] = map[v.order[k]].
Ranking apply_candidate_map(const Ranking& v, const std::vector<int>& map) {
  Ranking out;
  out.order.resize(v.order.size());
  for (size_t k = 0; k < v.order.size(); ++k)
    out.order[k] = map[static_cast<size_t>(v.order[k])];
  return out;
}

struct IsoContext {
  const Election* a;
  const Election* b;
  int m;
  int n;
  std::vector<uint64_t> masks_b;              // m <= 11 fast path
  std::vector<std::vector<int>> pos_a;        // per vote of a: candidate -> position
  bool use_masks;
};

// total swap cost of matching sigma under candidate map pi, plus sigma itself
long long solve_voter_matching(const IsoContext& cx, const std::vector<int>& pi,
                               std::vector<int>* sigma) {
  std::vector<std::vector<long long>> cost(static_cast<size_t>(cx.n),
                                           std::vector<long long>(static_cast<size_t>(cx.n)));
  if (cx.use_masks) {
    std::vector<uint64_t> mapped(static_cast<size_t>(cx.n));
    for (int i = 0; i < cx.n; ++i)
      mapped[static_cast<size_t>(i)] = pair_orientation_mask(apply_candidate_map(cx.a->votes[static_cast<size_t>(i)], pi));
    for (int i = 0; i < cx.n; ++i)
      for (int j = 0; j < cx.n; ++j)
        cost[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            std::popcount(mapped[static_cast<size_t>(i)] ^ cx.masks_b[static_cast<size_t>(j)]);
  } else {
    for (int i = 0; i < cx.n; ++i) {
      Ranking mapped = apply_candidate_map(cx.a->votes[static_cast<size_t>(i)], pi);
      for (int j = 0; j < cx.n; ++j)
        cost[static_cast<size_t>(i)][static_cast<size_t>(j)] = swap_distance(mapped, cx.b->votes[static_cast<size_t>(j)]);
    }
  }
  return min_cost_assignment(cost, sigma);
}

// Joint orientation counts under a fixed voter matching:
// joint[a*m+b][c*m+d] = #votes i with a above b in votes_a[i] and
// c above d in votes_b[sigma[i]]. Lets any candidate map be costed in
// C(m,2) lookups: pairs mapped (a,b)->(c,d) mismatch on
// winsA[a][b] + winsB[c][d] - 2*joint[ab][cd] voters.
struct JointCounts {
  int m;
  std::vector<int> joint;        // (m*m) x (m*m)
  std::vector<long long> winsA;  // m x m
  std::vector<long long> winsB;

  int& at(int a, int b, int c, int d) {
    return joint[(static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)) * static_cast<size_t>(m) * static_cast<size_t>(m) +
                 static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(d)];
  }
  int get(int a, int b, int c, int d) const {
    return joint[(static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)) * static_cast<size_t>(m) * static_cast<size_t>(m) +
                 static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(d)];
  }
  long long wA(int a, int b) const { return winsA[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)]; }
  long long wB(int c, int d) const { return winsB[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(d)]; }
};

JointCounts build_joint_counts(const IsoContext& cx, const std::vector<int>& sigma) {
  JointCounts jc;
  int m = cx.m;
  jc.m = m;
  jc.joint.assign(static_cast<size_t>(m) * static_cast<size_t>(m) * static_cast<size_t>(m) * static_cast<size_t>(m), 0);
  jc.winsA.assign(static_cast<size_t>(m) * static_cast<size_t>(m), 0);
  jc.winsB.assign(static_cast<size_t>(m) * static_cast<size_t>(m), 0);
  for (int i = 0; i < cx.n; ++i) {
    const auto& va = cx.a->votes[static_cast<size_t>(i)].order;
    const auto& vb = cx.b->votes[static_cast<size_t>(sigma[static_cast<size_t>(i)])].order;
    for (int x = 0; x < m; ++x)
      for (int y = x + 1; y < m; ++y) {
        int a = va[static_cast<size_t>(x)], b = va[static_cast<size_t>(y)];
        jc.winsA[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)]++;
        for (int u = 0; u < m; ++u)
          for (int w = u + 1; w < m; ++w) {
            int c = vb[static_cast<size_t>(u)], d = vb[static_cast<size_t>(w)];
            jc.at(a, b, c, d)++;
          }
      }
    for (int u = 0; u < m; ++u)
      for (int w = u + 1; w < m; ++w) {
        int c = vb[static_cast<size_t>(u)], d = vb[static_cast<size_t>(w)];
        jc.winsB[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(d)]++;
      }
  }
  return jc;
}

long long cost_under_matching(const JointCounts& jc, const std::vector<int>& pi) {
  long long total = 0;
  int m = jc.m;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      int c = pi[static_cast<size_t>(a)], d = pi[static_cast<size_t>(b)];
      total += jc.wA(a, b) + jc.wB(c, d) - 2LL * jc.get(a, b, c, d);
    }
  return total;
}

// best-improvement transposition sweeps on pi with sigma fixed
void improve_candidate_map(const JointCounts& jc, std::vector<int>& pi, long long& cur) {
  int m = jc.m;
  for (;;) {
    long long best = cur;
    int bx = -1, by = -1;
    for (int x = 0; x < m; ++x)
      for (int y = x + 1; y < m; ++y) {
        std::swap(pi[static_cast<size_t>(x)], pi[static_cast<size_t>(y)]);
        long long c = cost_under_matching(jc, pi);
        std::swap(pi[static_cast<size_t>(x)], pi[static_cast<size_t>(y)]);
        if (c < best) {
          best = c;
          bx = x;
          by = y;
        }
      }
    if (bx < 0) return;
    std::swap(pi[static_cast<size_t>(bx)], pi[static_cast<size_t>(by)]);
    cur = best;
  }
}

// If one side has a single distinct vote, the optimum is the 1-Kemeny cost of
// the other side (relabeling both elections by the candidate map turns the
// problem into "best single ranking"). Exact for m <= 16 via the subset DP.
bool single_vote_shortcut(const Election& a, const Election& b, IsoDistanceResult& out) {
  if (a.num_candidates > 16) return false;
  auto da = collapse_votes(a);
  auto db = collapse_votes(b);
  const Election* single = nullptr;
  const Election* other = nullptr;
  bool single_is_a = false;
  if (da.rankings.size() == 1) {
    single = &a;
    other = &b;
    single_is_a = true;
  } else if (db.rankings.size() == 1) {
    single = &b;
    other = &a;
  } else {
    return false;
  }
  KemenyResult kr = kemeny_exact(*other);
  const Ranking& s = single->votes.front();
  // choose the candidate map sending the single vote onto the optimal ranking
  // (or vice versa), so the realized cost equals the Kemeny cost
  int m = a.num_candidates;
  std::vector<int> map(static_cast<size_t>(m));
  if (single_is_a) {
    // map a's lone vote s so that pre-image of each b-candidate matches kr:
    // apply_candidate_map(s, map) must equal... we need sum_j swap(map(s), u_j)
    // = kemeny cost, i.e. map(s) = kr.ranking as a sequence.
    for (int k = 0; k < m; ++k)
      map[static_cast<size_t>(s.order[static_cast<size_t>(k)])] = kr.ranking.order[static_cast<size_t>(k)];
  } else {
    // map each a-candidate so that kr.ranking lands on b's lone vote
    for (int k = 0; k < m; ++k)
      map[static_cast<size_t>(kr.ranking.order[static_cast<size_t>(k)])] = s.order[static_cast<size_t>(k)];
  }
  out.distance = kr.cost;
  out.candidate_map = map;
  out.voter_map.resize(a.votes.size());
  std::iota(out.voter_map.begin(), out.voter_map.end(), 0);
  out.exact = true;
  return true;
}

}  // namespace

IsoDistanceResult isomorphic_swap_distance(const Election& a, const Election& b, IsoMode mode,
                                           uint64_t seed, int restarts) {
  if (a.num_candidates != b.num_candidates)
    throw ValidationError("isomorphic distance: candidate counts differ");
  if (a.num_voters() != b.num_voters())
    throw ValidationError("isomorphic distance: voter counts differ");
  int m = a.num_candidates;
  int n = a.num_voters();

  IsoDistanceResult best;
  if (n == 0) {
    best.candidate_map.resize(static_cast<size_t>(m));
    std::iota(best.candidate_map.begin(), best.candidate_map.end(), 0);
    best.exact = true;
    return best;
  }
  if (single_vote_shortcut(a, b, best)) return best;

  IsoContext cx;
  cx.a = &a;
  cx.b = &b;
  cx.m = m;
  cx.n = n;
  cx.use_masks = m <= 11;
  if (cx.use_masks) {
    cx.masks_b.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) cx.masks_b[static_cast<size_t>(j)] = pair_orientation_mask(b.votes[static_cast<size_t>(j)]);
  }

  best.distance = std::numeric_limits<long long>::max();

  if (mode == IsoMode::exact) {
    if (m > 10) throw BudgetExceeded("exact isomorphic distance guarded at m <= 10");
    // lower bound per candidate pair: matching the pair (x,y) -> (c,d) costs
    // at least |#a-votes with x above y - #b-votes with c above d|
    auto pa = pairwise_preference(a);
    auto pb = pairwise_preference(b);
    std::vector<int> pi(static_cast<size_t>(m), -1);
    std::vector<char> used(static_cast<size_t>(m), 0);

    // min over unordered image pairs of the per-pair bound, precomputed over
    // all (x,y); refined during search for already-fixed images
    auto pair_bound = [&](int x, int y, int c, int d) {
      long long o1 = std::llabs(pa.wins[static_cast<size_t>(x)][static_cast<size_t>(y)] - pb.wins[static_cast<size_t>(c)][static_cast<size_t>(d)]);
      long long o2 = std::llabs(pa.wins[static_cast<size_t>(x)][static_cast<size_t>(y)] - pb.wins[static_cast<size_t>(d)][static_cast<size_t>(c)]);
      return std::min(o1, o2);
    };

    std::vector<long long> free_bound(static_cast<size_t>(m) * static_cast<size_t>(m), 0);
    for (int x = 0; x < m; ++x)
      for (int y = x + 1; y < m; ++y) {
        long long mn = std::numeric_limits<long long>::max();
        for (int c = 0; c < m; ++c)
          for (int d = c + 1; d < m; ++d) mn = std::min(mn, pair_bound(x, y, c, d));
        free_bound[static_cast<size_t>(x) * static_cast<size_t>(m) + static_cast<size_t>(y)] = mn;
      }

    std::vector<int> best_pi, best_sigma;

    auto lower_bound_from = [&](int depth) {
      long long lb = 0;
      for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y) {
          if (x < depth && y < depth) {
            lb += pair_bound(x, y, std::min(pi[static_cast<size_t>(x)], pi[static_cast<size_t>(y)]),
                             std::max(pi[static_cast<size_t>(x)], pi[static_cast<size_t>(y)]));
          } else {
            lb += free_bound[static_cast<size_t>(x) * static_cast<size_t>(m) + static_cast<size_t>(y)];
          }
        }
      return lb;
    };

    // depth-first over candidate images of 0,1,2,...
    std::vector<int> sigma;
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == m) {
        long long c = solve_voter_matching(cx, pi, &sigma);
        if (c < best.distance) {
          best.distance = c;
          best_pi = pi;
          best_sigma = sigma;
        }
        return;
      }
      for (int img = 0; img < m; ++img) {
        if (used[static_cast<size_t>(img)]) continue;
        pi[static_cast<size_t>(depth)] = img;
        used[static_cast<size_t>(img)] = 1;
        if (lower_bound_from(depth + 1) < best.distance) self(self, depth + 1);
        used[static_cast<size_t>(img)] = 0;
        pi[static_cast<size_t>(depth)] = -1;
      }
    };
    rec(rec, 0);
    best.candidate_map = best_pi;
    best.voter_map = best_sigma;
    best.exact = true;
    return best;
  }

  // heuristic: alternating optimization with seeded restarts
  Rng rng(seed);
  if (restarts < 1) restarts = 1;
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> pi(static_cast<size_t>(m));
    if (r == 0) {
      // match candidates whose position histograms look alike
      auto xa = position_matrix(a);
      auto xb = position_matrix(b);
      std::vector<std::vector<long long>> hc(static_cast<size_t>(m), std::vector<long long>(static_cast<size_t>(m), 0));
      for (int ca = 0; ca < m; ++ca)
        for (int cb = 0; cb < m; ++cb) {
          long long s = 0;
          for (int p = 0; p < m; ++p)
            s += std::llabs(xa.counts[static_cast<size_t>(p)][static_cast<size_t>(ca)] - xb.counts[static_cast<size_t>(p)][static_cast<size_t>(cb)]);
          hc[static_cast<size_t>(ca)][static_cast<size_t>(cb)] = s;
        }
      min_cost_assignment(hc, &pi);
    } else {
      std::iota(pi.begin(), pi.end(), 0);
      rng.shuffle(pi);
    }

    std::vector<int> sigma;
    long long cur = solve_voter_matching(cx, pi, &sigma);
    for (;;) {
      JointCounts jc = build_joint_counts(cx, sigma);
      long long matched_cost = cur;
      improve_candidate_map(jc, pi, matched_cost);
      long long next = solve_voter_matching(cx, pi, &sigma);
      if (next >= cur) {
        cur = std::min(cur, next);
        break;
      }
      cur = next;
    }
    if (cur < best.distance) {
      best.distance = cur;
      best.candidate_map = pi;
      best.voter_map = sigma;
    }
  }
  best.exact = false;
  return best;
}

}  // namespace ordmetrics
