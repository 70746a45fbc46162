#include "ordmetrics/kemeny.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "ordmetrics/distances.hpp"
#include "ordmetrics/rng.hpp"

namespace ordmetrics {

MajorityRelation majority_relation(const Election& e) {
  auto p = pairwise_preference(e);
  MajorityRelation mr;
  mr.num_candidates = e.num_candidates;
  mr.geq.assign(static_cast<size_t>(e.num_candidates),
                std::vector<char>(static_cast<size_t>(e.num_candidates), 0));
  for (int a = 0; a < e.num_candidates; ++a)
    for (int b = 0; b < e.num_candidates; ++b)
      if (a != b)
        mr.geq[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            p.wins[static_cast<size_t>(a)][static_cast<size_t>(b)] >= p.wins[static_cast<size_t>(b)][static_cast<size_t>(a)];
  return mr;
}

bool has_condorcet_cycle(const Election& e) {
  auto mr = majority_relation(e);
  int m = e.num_candidates;
  // a cycle needs a strict edge (s -> t) closable by a weak path t ~> s
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      if (s == t || !mr.strict(s, t)) continue;
      std::vector<char> seen(static_cast<size_t>(m), 0);
      std::vector<int> stack{t};
      seen[static_cast<size_t>(t)] = 1;
      bool reached = false;
      while (!stack.empty() && !reached) {
        int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < m; ++y) {
          if (y == x || seen[static_cast<size_t>(y)] || !mr.geq[static_cast<size_t>(x)][static_cast<size_t>(y)]) continue;
          if (y == s) {
            reached = true;
            break;
          }
          seen[static_cast<size_t>(y)] = 1;
          stack.push_back(y);
        }
      }
      if (reached) return true;
    }
  return false;
}

long long kemeny_cost(const Election& e, const Ranking& r) {
  validate_ranking(r, e.num_candidates);
  auto p = pairwise_preference(e);
  long long cost = 0;
  for (int i = 0; i < e.num_candidates; ++i)
    for (int j = i + 1; j < e.num_candidates; ++j)
      cost += p.wins[static_cast<size_t>(r.order[static_cast<size_t>(j)])][static_cast<size_t>(r.order[static_cast<size_t>(i)])];
  return cost;
}

namespace {

KemenyResult kemeny_exact_wins(const std::vector<std::vector<long long>>& wins) {
  int m = static_cast<int>(wins.size());
  size_t full = (1ULL << m);
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> dp(full, INF);
  std::vector<int8_t> first(full, -1);  // candidate ranked above the rest of the subset
  dp[0] = 0;
  for (size_t s = 1; s < full; ++s) {
    for (int c = 0; c < m; ++c) {
      if (!(s >> c & 1)) continue;
      size_t rest = s & ~(1ULL << c);
      if (dp[rest] == INF) continue;
      long long above = 0;  // votes preferring some d in rest over c
      for (int d = 0; d < m; ++d)
        if (rest >> d & 1) above += wins[static_cast<size_t>(d)][static_cast<size_t>(c)];
      long long cand = dp[rest] + above;
      if (cand < dp[s]) {
        dp[s] = cand;
        first[s] = static_cast<int8_t>(c);
      }
    }
  }
  KemenyResult out;
  out.cost = dp[full - 1];
  size_t s = full - 1;
  while (s) {
    int c = first[s];
    out.ranking.order.push_back(c);
    s &= ~(1ULL << c);
  }
  return out;
}

}  // namespace

KemenyResult kemeny_exact(const Election& e) {
  if (e.num_candidates > 16)
    throw BudgetExceeded("exact Kemeny is guarded at m <= 16 (subset DP)");
  auto p = pairwise_preference(e);
  return kemeny_exact_wins(p.wins);
}

// ---------------------------------------------------------------------------
// shared machinery for the k-Kemeny solvers: everything runs on the distinct
// votes with multiplicities; pair distances come from a dense table when the
// distinct count is small, otherwise from 64-bit pair-orientation masks.

namespace {

struct Ctx {
  int m = 0;
  int n = 0;
  int D = 0;
  std::vector<Ranking> rk;
  std::vector<long long> w;
  std::vector<int> v2d;
  std::vector<std::vector<int>> table;
  std::vector<uint64_t> masks;
  bool has_table = false;
  bool has_masks = false;

  long long dist(int i, int j) const {
    if (has_table) return table[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (has_masks) return std::popcount(masks[static_cast<size_t>(i)] ^ masks[static_cast<size_t>(j)]);
    return swap_distance(rk[static_cast<size_t>(i)], rk[static_cast<size_t>(j)]);
  }

  long long dist_to(int i, const Ranking& r, uint64_t r_mask) const {
    if (has_masks) return std::popcount(masks[static_cast<size_t>(i)] ^ r_mask);
    return swap_distance(rk[static_cast<size_t>(i)], r);
  }
};

Ctx make_ctx(const Election& e) {
  Ctx cx;
  cx.m = e.num_candidates;
  cx.n = e.num_voters();
  auto d = collapse_votes(e);
  cx.rk = std::move(d.rankings);
  cx.w = std::move(d.weights);
  cx.v2d = std::move(d.voter_to_distinct);
  cx.D = static_cast<int>(cx.rk.size());
  if (cx.m <= 11) {
    cx.masks.resize(static_cast<size_t>(cx.D));
    for (int i = 0; i < cx.D; ++i) cx.masks[static_cast<size_t>(i)] = pair_orientation_mask(cx.rk[static_cast<size_t>(i)]);
    cx.has_masks = true;
  }
  if (cx.D <= 1500) {
    cx.table.assign(static_cast<size_t>(cx.D), std::vector<int>(static_cast<size_t>(cx.D), 0));
    for (int i = 0; i < cx.D; ++i)
      for (int j = i + 1; j < cx.D; ++j) {
        int dij = static_cast<int>(cx.has_masks
                                       ? std::popcount(cx.masks[static_cast<size_t>(i)] ^ cx.masks[static_cast<size_t>(j)])
                                       : swap_distance(cx.rk[static_cast<size_t>(i)], cx.rk[static_cast<size_t>(j)]));
        cx.table[static_cast<size_t>(i)][static_cast<size_t>(j)] = dij;
        cx.table[static_cast<size_t>(j)][static_cast<size_t>(i)] = dij;
      }
    cx.has_table = true;
  }
  return cx;
}

// a chosen subset of distinct votes with nearest / second-nearest distances
struct SetState {
  std::vector<int> chosen;  // sorted distinct indices
  std::vector<long long> d1, d2;
  std::vector<int> a1;  // nearest chosen index (the distinct id, not position)
  long long total = 0;
};

SetState build_state(const Ctx& cx, std::vector<int> chosen) {
  std::sort(chosen.begin(), chosen.end());
  SetState st;
  st.chosen = std::move(chosen);
  st.d1.assign(static_cast<size_t>(cx.D), std::numeric_limits<long long>::max() / 4);
  st.d2.assign(static_cast<size_t>(cx.D), std::numeric_limits<long long>::max() / 4);
  st.a1.assign(static_cast<size_t>(cx.D), -1);
  for (int v = 0; v < cx.D; ++v) {
    for (int c : st.chosen) {
      long long d = cx.dist(v, c);
      if (d < st.d1[static_cast<size_t>(v)]) {
        st.d2[static_cast<size_t>(v)] = st.d1[static_cast<size_t>(v)];
        st.d1[static_cast<size_t>(v)] = d;
        st.a1[static_cast<size_t>(v)] = c;
      } else if (d < st.d2[static_cast<size_t>(v)]) {
        st.d2[static_cast<size_t>(v)] = d;
      }
    }
  }
  st.total = 0;
  for (int v = 0; v < cx.D; ++v) st.total += cx.w[static_cast<size_t>(v)] * st.d1[static_cast<size_t>(v)];
  return st;
}

// best-improvement swaps until local optimum; ties by lexicographic (out, in)
void local_search_steps(const Ctx& cx, SetState& st) {
  if (static_cast<int>(st.chosen.size()) >= cx.D) return;
  std::vector<char> in_set(static_cast<size_t>(cx.D), 0);
  for (int c : st.chosen) in_set[static_cast<size_t>(c)] = 1;
  for (;;) {
    long long best = st.total;
    int best_out = -1, best_in = -1;
    for (int out : st.chosen) {
      for (int in = 0; in < cx.D; ++in) {
        if (in_set[static_cast<size_t>(in)]) continue;
        long long t = 0;
        for (int v = 0; v < cx.D; ++v) {
          long long base = (st.a1[static_cast<size_t>(v)] == out) ? st.d2[static_cast<size_t>(v)] : st.d1[static_cast<size_t>(v)];
          long long dv = cx.dist(v, in);
          t += cx.w[static_cast<size_t>(v)] * std::min(base, dv);
        }
        if (t < best) {
          best = t;
          best_out = out;
          best_in = in;
        }
      }
    }
    if (best_out < 0) return;
    in_set[static_cast<size_t>(best_out)] = 0;
    in_set[static_cast<size_t>(best_in)] = 1;
    std::vector<int> next;
    next.reserve(st.chosen.size());
    for (int c = 0; c < cx.D; ++c)
      if (in_set[static_cast<size_t>(c)]) next.push_back(c);
    st = build_state(cx, std::move(next));
  }
}

// one greedy addition: the unchosen distinct vote lowering the total most
// (ties by lowest index). cur = per-distinct current nearest distances.
// Returns (index, new total); index = -1 when everything is chosen.
std::pair<int, long long> greedy_step(const Ctx& cx, const std::vector<char>& in_set,
                                      const std::vector<long long>& cur) {
  int best_c = -1;
  long long best_total = std::numeric_limits<long long>::max();
  for (int c = 0; c < cx.D; ++c) {
    if (in_set[static_cast<size_t>(c)]) continue;
    long long t = 0;
    for (int v = 0; v < cx.D; ++v)
      t += cx.w[static_cast<size_t>(v)] * std::min(cur[static_cast<size_t>(v)], cx.dist(v, c));
    if (t < best_total) {
      best_total = t;
      best_c = c;
    }
  }
  return {best_c, best_total};
}

struct GreedyTrace {
  std::vector<std::vector<int>> sets;   // chosen indices per k (prefix grows)
  std::vector<long long> totals;
};

GreedyTrace greedy_trace(const Ctx& cx, int k_max) {
  GreedyTrace tr;
  std::vector<char> in_set(static_cast<size_t>(cx.D), 0);
  std::vector<long long> cur(static_cast<size_t>(cx.D), std::numeric_limits<long long>::max() / 4);
  std::vector<int> chosen;
  for (int k = 1; k <= k_max; ++k) {
    if (static_cast<int>(chosen.size()) < cx.D) {
      auto [c, total] = greedy_step(cx, in_set, cur);
      chosen.push_back(c);
      in_set[static_cast<size_t>(c)] = 1;
      for (int v = 0; v < cx.D; ++v)
        cur[static_cast<size_t>(v)] = std::min(cur[static_cast<size_t>(v)], cx.dist(v, c));
      tr.totals.push_back(total);
    } else {
      tr.totals.push_back(0);
    }
    tr.sets.push_back(chosen);
  }
  return tr;
}

KKemenyResult result_from_rankings(const Ctx& cx, int k, std::vector<Ranking> rankings,
                                   const std::string& method) {
  KKemenyResult res;
  res.k = k;
  res.method = method;
  while (static_cast<int>(rankings.size()) < k) rankings.push_back(rankings.front());
  res.rankings = std::move(rankings);
  // nearest chosen ranking per distinct vote, then fan out to voters
  std::vector<long long> best_d(static_cast<size_t>(cx.D), std::numeric_limits<long long>::max() / 4);
  std::vector<int> best_i(static_cast<size_t>(cx.D), 0);
  for (size_t ri = 0; ri < res.rankings.size(); ++ri) {
    uint64_t rmask = cx.has_masks ? pair_orientation_mask(res.rankings[ri]) : 0;
    for (int v = 0; v < cx.D; ++v) {
      long long d = cx.dist_to(v, res.rankings[ri], rmask);
      if (d < best_d[static_cast<size_t>(v)]) {
        best_d[static_cast<size_t>(v)] = d;
        best_i[static_cast<size_t>(v)] = static_cast<int>(ri);
      }
    }
  }
  res.distance = 0;
  for (int v = 0; v < cx.D; ++v) res.distance += cx.w[static_cast<size_t>(v)] * best_d[static_cast<size_t>(v)];
  res.assignment.resize(static_cast<size_t>(cx.n));
  for (int i = 0; i < cx.n; ++i) res.assignment[static_cast<size_t>(i)] = best_i[static_cast<size_t>(cx.v2d[static_cast<size_t>(i)])];
  return res;
}

KKemenyResult result_from_set(const Ctx& cx, int k, const std::vector<int>& set,
                              const std::string& method) {
  std::vector<Ranking> rankings;
  rankings.reserve(set.size());
  for (int c : set) rankings.push_back(cx.rk[static_cast<size_t>(c)]);
  return result_from_rankings(cx, k, std::move(rankings), method);
}

std::vector<int> all_distinct(const Ctx& cx) {
  std::vector<int> all(static_cast<size_t>(cx.D));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

std::vector<int> random_subset(const Ctx& cx, int k, Rng& rng) {
  std::vector<int> idx = all_distinct(cx);
  for (int i = 0; i < k; ++i) {
    size_t j = static_cast<size_t>(i) + static_cast<size_t>(rng.below(static_cast<uint64_t>(cx.D - i)));
    std::swap(idx[static_cast<size_t>(i)], idx[j]);
  }
  idx.resize(static_cast<size_t>(k));
  return idx;
}

void check_k(const Election& e, int k) {
  if (k < 1 || k > e.num_voters())
    throw ValidationError("k must be between 1 and the number of voters");
}

}  // namespace

std::vector<KKemenyResult> k_kemeny_greedy(const Election& e, int k_max) {
  check_k(e, k_max);
  Ctx cx = make_ctx(e);
  GreedyTrace tr = greedy_trace(cx, k_max);
  std::vector<KKemenyResult> out;
  out.reserve(static_cast<size_t>(k_max));
  for (int k = 1; k <= k_max; ++k)
    out.push_back(result_from_set(cx, k, tr.sets[static_cast<size_t>(k - 1)], "greedy"));
  return out;
}

KKemenyResult k_kemeny_local_search(const Election& e, int k, uint64_t seed) {
  check_k(e, k);
  Ctx cx = make_ctx(e);
  if (k >= cx.D) return result_from_set(cx, k, all_distinct(cx), "local_search");
  Rng rng(seed);
  SetState st = build_state(cx, random_subset(cx, k, rng));
  local_search_steps(cx, st);
  return result_from_set(cx, k, st.chosen, "local_search");
}

KKemenyResult k_kemeny_combined(const Election& e, int k, uint64_t seed) {
  check_k(e, k);
  (void)seed;  // combined is deterministic: greedy start, then local search
  Ctx cx = make_ctx(e);
  if (k >= cx.D) return result_from_set(cx, k, all_distinct(cx), "combined");
  GreedyTrace tr = greedy_trace(cx, k);
  SetState st = build_state(cx, tr.sets.back());
  local_search_steps(cx, st);
  return result_from_set(cx, k, st.chosen, "combined");
}

namespace {

// profile with augmentation repair; also hands back the chosen set per k
struct ProfileSets {
  std::vector<long long> totals;
  std::vector<std::vector<int>> sets;
};

ProfileSets profile_impl(const Ctx& cx, KKMethod method, uint64_t seed) {
  ProfileSets out;
  int n = cx.n;
  out.totals.resize(static_cast<size_t>(n));
  out.sets.resize(static_cast<size_t>(n));

  if (method == KKMethod::greedy) {
    GreedyTrace tr = greedy_trace(cx, n);
    out.totals = tr.totals;
    out.sets = tr.sets;
    return out;
  }

  GreedyTrace tr;  // shared by all combined runs
  if (method == KKMethod::combined) tr = greedy_trace(cx, std::min(n, cx.D));

  std::vector<int> prev_set;
  std::vector<long long> prev_d1;

  for (int k = 1; k <= n; ++k) {
    if (k >= cx.D) {
      out.totals[static_cast<size_t>(k - 1)] = 0;
      out.sets[static_cast<size_t>(k - 1)] = all_distinct(cx);
      prev_set = out.sets[static_cast<size_t>(k - 1)];
      continue;
    }

    SetState st;
    if (method == KKMethod::local_search) {
      Rng rng(Rng::mix(seed, static_cast<uint64_t>(k)));
      st = build_state(cx, random_subset(cx, k, rng));
    } else {
      st = build_state(cx, tr.sets[static_cast<size_t>(k - 1)]);
    }
    local_search_steps(cx, st);

    long long run_total = st.total;
    // augmentation repair: previous set plus the best extra distinct vote
    bool use_aug = false;
    int aug_c = -1;
    if (k > 1 && !prev_set.empty() && static_cast<int>(prev_set.size()) == k - 1) {
      std::vector<char> in_set(static_cast<size_t>(cx.D), 0);
      for (int c : prev_set) in_set[static_cast<size_t>(c)] = 1;
      auto [c, aug_total] = greedy_step(cx, in_set, prev_d1);
      if (c >= 0 && aug_total < run_total) {
        use_aug = true;
        aug_c = c;
        run_total = aug_total;
      }
    }

    if (use_aug) {
      std::vector<int> s = prev_set;
      s.push_back(aug_c);
      std::sort(s.begin(), s.end());
      st = build_state(cx, std::move(s));
    }
    out.totals[static_cast<size_t>(k - 1)] = st.total;
    out.sets[static_cast<size_t>(k - 1)] = st.chosen;
    prev_set = st.chosen;
    prev_d1 = st.d1;
  }
  return out;
}

}  // namespace

std::vector<long long> k_kemeny_profile(const Election& e, KKMethod method, uint64_t seed) {
  validate_election(e);
  if (e.num_voters() == 0) return {};
  Ctx cx = make_ctx(e);
  if (method == KKMethod::best_of) {
    auto ls = profile_impl(cx, KKMethod::local_search, Rng::mix(seed, 0x4C53));
    auto cb = profile_impl(cx, KKMethod::combined, Rng::mix(seed, 0x434F));
    std::vector<long long> out(ls.totals.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = std::min(ls.totals[i], cb.totals[i]);
    return out;
  }
  uint64_t s = method == KKMethod::local_search ? Rng::mix(seed, 0x4C53)
               : method == KKMethod::combined   ? Rng::mix(seed, 0x434F)
                                                : seed;
  return profile_impl(cx, method, s).totals;
}

std::vector<long long> kappa_profile_for_indices(const Election& e, KKMethod solver, uint64_t seed) {
  validate_election(e);
  int n = e.num_voters();
  if (n == 0) return {};
  Ctx cx = make_ctx(e);

  ProfileSets base;
  if (solver == KKMethod::best_of) {
    auto ls = profile_impl(cx, KKMethod::local_search, Rng::mix(seed, 0x4C53));
    auto cb = profile_impl(cx, KKMethod::combined, Rng::mix(seed, 0x434F));
    base.totals.resize(ls.totals.size());
    base.sets.resize(ls.sets.size());
    for (size_t i = 0; i < ls.totals.size(); ++i) {
      if (cb.totals[i] <= ls.totals[i]) {
        base.totals[i] = cb.totals[i];
        base.sets[i] = cb.sets[i];
      } else {
        base.totals[i] = ls.totals[i];
        base.sets[i] = ls.sets[i];
      }
    }
  } else {
    uint64_t s = solver == KKMethod::local_search ? Rng::mix(seed, 0x4C53)
                 : solver == KKMethod::combined   ? Rng::mix(seed, 0x434F)
                                                  : seed;
    base = profile_impl(cx, solver, s);
  }

  if (cx.m > 16) return base.totals;

  // splice in the exact 1-Kemeny head and re-run the repair chain against it
  KemenyResult kr = kemeny_exact(e);
  std::vector<long long> out(static_cast<size_t>(n));
  out[0] = std::min(base.totals[0], kr.cost);

  uint64_t kr_mask = cx.has_masks ? pair_orientation_mask(kr.ranking) : 0;
  std::vector<long long> chain_d1(static_cast<size_t>(cx.D));
  for (int v = 0; v < cx.D; ++v) chain_d1[static_cast<size_t>(v)] = cx.dist_to(v, kr.ranking, kr_mask);

  std::vector<char> chain_chosen(static_cast<size_t>(cx.D), 0);  // distinct votes added on top of kr
  for (int k = 2; k <= n; ++k) {
    auto [c, aug_total] = greedy_step(cx, chain_chosen, chain_d1);
    long long aug = (c >= 0) ? aug_total : 0;
    if (c < 0) aug = 0;
    if (base.totals[static_cast<size_t>(k - 1)] <= aug) {
      // method's own solution wins; restart the chain from it
      out[static_cast<size_t>(k - 1)] = base.totals[static_cast<size_t>(k - 1)];
      std::fill(chain_chosen.begin(), chain_chosen.end(), 0);
      SetState st = build_state(cx, base.sets[static_cast<size_t>(k - 1)]);
      chain_d1 = st.d1;
      for (int cc : base.sets[static_cast<size_t>(k - 1)]) chain_chosen[static_cast<size_t>(cc)] = 1;
    } else {
      out[static_cast<size_t>(k - 1)] = aug;
      if (c >= 0) {
        chain_chosen[static_cast<size_t>(c)] = 1;
        for (int v = 0; v < cx.D; ++v)
          chain_d1[static_cast<size_t>(v)] = std::min(chain_d1[static_cast<size_t>(v)], cx.dist(v, c));
      }
    }
    // the chain extension never exceeds the previous value, so the spliced
    // trace stays non-increasing
    if (out[static_cast<size_t>(k - 1)] > out[static_cast<size_t>(k - 2)])
      out[static_cast<size_t>(k - 1)] = out[static_cast<size_t>(k - 2)];
  }
  return out;
}

std::pair<long long, long long> kappa_head(const Election& e, KKMethod solver, uint64_t seed) {
  validate_election(e);
  if (e.num_voters() == 0) return {0, 0};
  Ctx cx = make_ctx(e);

  long long k1;
  Ranking k1_ranking;
  if (cx.m <= 16) {
    KemenyResult kr = kemeny_exact(e);
    k1 = kr.cost;
    k1_ranking = kr.ranking;
  } else {
    std::vector<char> none(static_cast<size_t>(cx.D), 0);
    std::vector<long long> inf(static_cast<size_t>(cx.D), std::numeric_limits<long long>::max() / 4);
    auto [c, total] = greedy_step(cx, none, inf);
    (void)c;
    k1 = total;
  }

  if (e.num_voters() < 2) return {k1, k1};
  long long k2 = std::numeric_limits<long long>::max();
  if (cx.D <= 2) {
    k2 = 0;
  } else {
    auto run_ls = [&](const std::vector<int>& start) {
      SetState st = build_state(cx, start);
      local_search_steps(cx, st);
      return st.total;
    };
    if (solver == KKMethod::local_search || solver == KKMethod::best_of) {
      Rng rng(Rng::mix(Rng::mix(seed, 0x4C53), 2));
      k2 = std::min(k2, run_ls(random_subset(cx, 2, rng)));
    }
    if (solver == KKMethod::combined || solver == KKMethod::best_of || solver == KKMethod::greedy) {
      GreedyTrace tr = greedy_trace(cx, 2);
      k2 = (solver == KKMethod::greedy) ? std::min(k2, tr.totals[1])
                                        : std::min(k2, run_ls(tr.sets[1]));
    }
  }
  // guarantee kappa_2 <= kappa_1: extend the exact head by its best companion
  if (k2 > k1 && cx.m <= 16 && cx.D > 1) {
    uint64_t mask = cx.has_masks ? pair_orientation_mask(k1_ranking) : 0;
    std::vector<long long> d1(static_cast<size_t>(cx.D));
    for (int v = 0; v < cx.D; ++v) d1[static_cast<size_t>(v)] = cx.dist_to(v, k1_ranking, mask);
    std::vector<char> none(static_cast<size_t>(cx.D), 0);
    auto [c, total] = greedy_step(cx, none, d1);
    (void)c;
    k2 = std::min(k2, total);
  }
  k2 = std::min(k2, k1);
  return {k1, k2};
}

// ---------------------------------------------------------------------------
// exact oracles

namespace {

long long count_partitions_capped(int n, int k, long long cap) {
  // S(n, <=k) via the Stirling triangle, saturating at cap+1
  std::vector<std::vector<long long>> s(static_cast<size_t>(n + 1),
                                        std::vector<long long>(static_cast<size_t>(k + 1), 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j) {
      long long v = s[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] +
                    static_cast<long long>(j) * s[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
      s[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::min(v, cap + 1);
    }
  long long total = 0;
  for (int j = 1; j <= k; ++j) total = std::min(total + s[static_cast<size_t>(n)][static_cast<size_t>(j)], cap + 1);
  return total;
}

long long count_subsets_capped(long long d, long long k, long long cap) {
  __int128 c = 1;
  for (long long i = 1; i <= k; ++i) {
    c = c * (d - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<long long>(c);
}

}  // namespace

KKemenyResult k_kemeny_exact_partition(const Election& e, int k, long long budget) {
  check_k(e, k);
  int n = e.num_voters();
  if (n > 62) throw BudgetExceeded("partition oracle needs n <= 62");
  if (count_partitions_capped(n, k, budget) > budget)
    throw BudgetExceeded("partition count exceeds the configured budget");

  int m = e.num_candidates;
  if (m > 16) throw BudgetExceeded("partition oracle relies on exact Kemeny (m <= 16)");

  // 1-Kemeny per voter subset, memoized on the subset mask
  std::unordered_map<uint64_t, KemenyResult> memo;
  auto block_kemeny = [&](uint64_t mask) -> const KemenyResult& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<long long>> wins(static_cast<size_t>(m),
                                             std::vector<long long>(static_cast<size_t>(m), 0));
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      const auto& o = e.votes[static_cast<size_t>(i)].order;
      for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
          wins[static_cast<size_t>(o[static_cast<size_t>(x)])][static_cast<size_t>(o[static_cast<size_t>(y)])]++;
    }
    return memo.emplace(mask, kemeny_exact_wins(wins)).first->second;
  };

  std::vector<uint64_t> blocks;
  std::vector<uint64_t> best_blocks;
  long long best_cost = std::numeric_limits<long long>::max();

  // restricted-growth enumeration: vote i joins an existing block or opens a
  // new one while fewer than k exist
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      long long cost = 0;
      for (uint64_t b : blocks) cost += block_kemeny(b).cost;
      if (cost < best_cost) {
        best_cost = cost;
        best_blocks = blocks;
      }
      return;
    }
    for (size_t j = 0; j < blocks.size(); ++j) {
      blocks[j] |= (1ULL << i);
      self(self, i + 1);
      blocks[j] &= ~(1ULL << i);
    }
    if (static_cast<int>(blocks.size()) < k) {
      blocks.push_back(1ULL << i);
      self(self, i + 1);
      blocks.pop_back();
    }
  };
  rec(rec, 0);

  Ctx cx = make_ctx(e);
  std::vector<Ranking> rankings;
  for (uint64_t b : best_blocks) rankings.push_back(block_kemeny(b).ranking);
  // at the optimum the min-sum recomputed here equals the best partition cost
  KKemenyResult res = result_from_rankings(cx, k, std::move(rankings), "exact_partition");
  return res;
}

KKemenyResult k_kemeny_among_votes(const Election& e, int k, long long budget) {
  check_k(e, k);
  Ctx cx = make_ctx(e);
  if (k >= cx.D) return result_from_set(cx, k, all_distinct(cx), "among_votes");
  if (count_subsets_capped(cx.D, k, budget) > budget)
    throw BudgetExceeded("subset count exceeds the configured budget");

  std::vector<int> comb(static_cast<size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<int> best_comb;
  long long best_total = std::numeric_limits<long long>::max();
  for (;;) {
    long long total = 0;
    for (int v = 0; v < cx.D; ++v) {
      long long d = std::numeric_limits<long long>::max();
      for (int c : comb) d = std::min(d, cx.dist(v, c));
      total += cx.w[static_cast<size_t>(v)] * d;
    }
    if (total < best_total) {
      best_total = total;
      best_comb = comb;
    }
    // next combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && comb[static_cast<size_t>(i)] == cx.D - k + i) --i;
    if (i < 0) break;
    comb[static_cast<size_t>(i)]++;
    for (int j = i + 1; j < k; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  }
  return result_from_set(cx, k, best_comb, "among_votes");
}

}  // namespace ordmetrics
