#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here is written directly from the definitions, sharing no code with the
// library paths it checks, so agreement between the two is meaningful.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "ordmetrics/core.hpp"

namespace oracles {

using ordmetrics::Election;
using ordmetrics::Ranking;

// pair-by-pair scan
inline long long brute_swap(const Ranking& a, const Ranking& b) {
  int m = a.size();
  std::vector<int> pa(m), pb(m);
  for (int i = 0; i < m; ++i) pa[a.order[i]] = i;
  for (int i = 0; i < m; ++i) pb[b.order[i]] = i;
  long long d = 0;
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y)
      d += (pa[x] < pa[y]) != (pb[x] < pb[y]);
  return d;
}

inline long long brute_cost(const Election& e, const Ranking& r) {
  long long c = 0;
  for (const auto& v : e.votes) c += brute_swap(v, r);
  return c;
}

// minimum total distance over all m! rankings
inline std::pair<Ranking, long long> brute_kemeny(const Election& e) {
  Ranking r = ordmetrics::identity_ranking(e.num_candidates);
  Ranking best = r;
  long long best_cost = brute_cost(e, r);
  while (std::next_permutation(r.order.begin(), r.order.end())) {
    long long c = brute_cost(e, r);
    if (c < best_cost) {
      best_cost = c;
      best = r;
    }
  }
  return {best, best_cost};
}

// assignment optimum by enumerating all row->column bijections (n <= 8)
inline long long brute_assignment(const std::vector<std::vector<long long>>& cost) {
  int n = static_cast<int>(cost.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  long long best = -1;
  do {
    long long c = 0;
    for (int i = 0; i < n; ++i) c += cost[i][p[i]];
    if (best < 0 || c < best) best = c;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// full enumeration of candidate bijections x voter bijections
inline long long brute_iso_distance(const Election& a, const Election& b) {
  int m = a.num_candidates;
  int n = a.num_voters();
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  long long best = -1;
  do {
    std::vector<std::vector<long long>> cost(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i) {
      Ranking mapped;
      mapped.order.resize(m);
      for (int p = 0; p < m; ++p) mapped.order[p] = sigma[a.votes[i].order[p]];
      for (int j = 0; j < n; ++j) cost[i][j] = brute_swap(mapped, b.votes[j]);
    }
    long long c = brute_assignment(cost);
    if (best < 0 || c < best) best = c;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

// exact k-Kemeny: every partition of the voters into at most k blocks, each
// block solved by brute_kemeny
inline long long brute_k_kemeny_partition(const Election& e, int k) {
  int n = e.num_voters();
  std::vector<int> block(n, 0);
  long long best = -1;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      long long total = 0;
      for (int b = 0; b < used; ++b) {
        Election sub;
        sub.num_candidates = e.num_candidates;
        for (int v = 0; v < n; ++v)
          if (block[v] == b) sub.votes.push_back(e.votes[v]);
        total += brute_kemeny(sub).second;
      }
      if (best < 0 || total < best) best = total;
      return;
    }
    for (int b = 0; b <= used && b < k; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return best;
}

inline long long brute_cost_to_set(const Election& e, const std::vector<Ranking>& set) {
  long long total = 0;
  for (const auto& v : e.votes) {
    long long mn = -1;
    for (const auto& r : set) {
      long long d = brute_swap(v, r);
      if (mn < 0 || d < mn) mn = d;
    }
    total += mn;
  }
  return total;
}

// exact k-Kemeny restricted to rankings occurring in the election: enumerate
// all k-subsets of the distinct votes
inline long long brute_k_kemeny_among_votes(const Election& e, int k) {
  std::set<std::vector<int>> distinct_set;
  for (const auto& v : e.votes) distinct_set.insert(v.order);
  std::vector<Ranking> distinct;
  for (const auto& o : distinct_set) distinct.emplace_back(o);
  int d = static_cast<int>(distinct.size());
  if (k > d) k = d;
  std::vector<Ranking> chosen;
  long long best = -1;
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      long long c = brute_cost_to_set(e, chosen);
      if (best < 0 || c < best) best = c;
      return;
    }
    for (int i = from; i < d; ++i) {
      chosen.push_back(distinct[i]);
      rec(pos + 1, i + 1);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

// exact k-Kemeny over ALL rankings: enumerate k-subsets of the full symmetric
// group (m and k tiny)
inline long long brute_k_kemeny_all_rankings(const Election& e, int k) {
  std::vector<Ranking> all;
  Ranking r = ordmetrics::identity_ranking(e.num_candidates);
  all.push_back(r);
  while (std::next_permutation(r.order.begin(), r.order.end())) all.push_back(r);
  int d = static_cast<int>(all.size());
  if (k > d) k = d;
  std::vector<Ranking> chosen;
  long long best = -1;
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      long long c = brute_cost_to_set(e, chosen);
      if (best < 0 || c < best) best = c;
      return;
    }
    for (int i = from; i < d; ++i) {
      chosen.push_back(all[i]);
      rec(pos + 1, i + 1);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

// counts[d] = number of permutations of m elements with exactly d inversions
inline std::vector<long long> inversion_counts(int m) {
  std::vector<long long> c = {1};
  for (int k = 1; k < m; ++k) {
    std::vector<long long> nx(c.size() + k, 0);
    for (size_t d = 0; d < c.size(); ++d)
      for (int j = 0; j <= k; ++j) nx[d + j] += c[d];
    c = std::move(nx);
  }
  return c;
}

// xorshift64; deliberately unrelated to the library generator
struct TestRng {
  uint64_t s;
  explicit TestRng(uint64_t seed) : s(seed ^ 0x9E3779B97F4A7C15ull) {
    if (s == 0) s = 1;
  }
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline Ranking random_ranking(int m, TestRng& rng) {
  Ranking r = ordmetrics::identity_ranking(m);
  for (int i = m - 1; i > 0; --i) std::swap(r.order[i], r.order[rng.below(i + 1)]);
  return r;
}

inline Election random_election(int m, int n, TestRng& rng) {
  Election e;
  e.num_candidates = m;
  for (int i = 0; i < n; ++i) e.votes.push_back(random_ranking(m, rng));
  return e;
}

// applies a fresh random candidate relabeling and voter shuffle
inline Election random_isomorphic_copy(const Election& e, TestRng& rng) {
  int m = e.num_candidates;
  Ranking sigma = random_ranking(m, rng);
  Election out;
  out.num_candidates = m;
  for (const auto& v : e.votes) {
    Ranking w;
    w.order.resize(m);
    for (int p = 0; p < m; ++p) w.order[p] = sigma.order[v.order[p]];
    out.votes.push_back(w);
  }
  for (int i = out.num_voters() - 1; i > 0; --i)
    std::swap(out.votes[i], out.votes[rng.below(i + 1)]);
  return out;
}

// chi-squared statistic against a uniform expectation
inline double chi_squared_uniform(const std::vector<long long>& observed, double total) {
  double expected = total / static_cast<double>(observed.size());
  double stat = 0;
  for (long long o : observed) {
    double diff = static_cast<double>(o) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

// 0.999 quantiles of the chi-squared distribution (test thresholds for
// "p > 0.001" acceptance)
constexpr double kChi2Crit5Dof = 20.515;   // 6 cells
constexpr double kChi2Crit3Dof = 16.266;   // 4 cells

}  // namespace oracles
