#include "ordmetrics/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "ordmetrics/parallel.hpp"
#include "ordmetrics/rng.hpp"

namespace ordmetrics {

namespace {

void check_distance_matrix(const std::vector<std::vector<double>>& d) {
  const size_t n = d.size();
  for (size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) throw ValidationError("distance matrix is not square");
    if (d[i][i] != 0.0) throw ValidationError("distance matrix has a nonzero diagonal");
    for (size_t j = 0; j < n; ++j) {
      if (d[i][j] < 0.0) throw ValidationError("distance matrix has a negative entry");
      if (d[i][j] != d[j][i]) throw ValidationError("distance matrix is not symmetric");
    }
  }
}

double raw_stress(const std::vector<std::vector<double>>& d,
                  const std::vector<std::array<double, 2>>& x) {
  const size_t n = d.size();
  double s = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      double dx = x[i][0] - x[j][0], dy = x[i][1] - x[j][1];
      double diff = d[i][j] - std::sqrt(dx * dx + dy * dy);
      s += diff * diff;
    }
  return s;
}

std::vector<std::array<double, 2>> seeded_init(const std::vector<std::vector<double>>& d,
                                               uint64_t run_seed) {
  const size_t n = d.size();
  double scale = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) scale = std::max(scale, d[i][j]);
  if (scale == 0.0) scale = 1.0;
  std::vector<std::array<double, 2>> points(n);
  for (size_t i = 0; i < n; ++i) {
    // per-item stream, independent of every other item
    Rng item_rng(Rng::mix(run_seed, static_cast<uint64_t>(i)));
    points[i] = {item_rng.real(-scale, scale), item_rng.real(-scale, scale)};
  }
  return points;
}

Embedding2D smacof_run(const std::vector<std::vector<double>>& d,
                       std::vector<std::array<double, 2>> initial, int max_iter, double tol) {
  const size_t n = d.size();
  Embedding2D emb;
  emb.points = std::move(initial);

  double stress = raw_stress(d, emb.points);
  emb.stress_trace.push_back(stress);
  std::vector<std::array<double, 2>> next(n);
  for (int it = 0; it < max_iter; ++it) {
    // Guttman transform with unit weights: x_i' = (1/n) * sum_j b_ij x_j
    for (size_t i = 0; i < n; ++i) next[i] = {0.0, 0.0};
    for (size_t i = 0; i < n; ++i) {
      double bii = 0.0;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double dx = emb.points[i][0] - emb.points[j][0];
        double dy = emb.points[i][1] - emb.points[j][1];
        double dist = std::sqrt(dx * dx + dy * dy);
        double bij = dist > 1e-12 ? -d[i][j] / dist : 0.0;
        next[i][0] += bij * emb.points[j][0];
        next[i][1] += bij * emb.points[j][1];
        bii -= bij;
      }
      next[i][0] += bii * emb.points[i][0];
      next[i][1] += bii * emb.points[i][1];
      next[i][0] /= static_cast<double>(n);
      next[i][1] /= static_cast<double>(n);
    }
    emb.points.swap(next);
    double cur = raw_stress(d, emb.points);
    emb.stress_trace.push_back(cur);
    ++emb.iterations;
    if (stress - cur < tol * std::max(stress, 1e-12)) {
      stress = cur;
      break;
    }
    stress = cur;
  }
  emb.stress = stress;
  return emb;
}

}  // namespace

Embedding2D mds_embed(const std::vector<std::vector<double>>& d, uint64_t seed, int max_iter,
                      double tol, int restarts) {
  check_distance_matrix(d);
  if (d.empty()) return Embedding2D{};
  if (restarts < 1) restarts = 1;
  Embedding2D best;
  for (int r = 0; r < restarts; ++r) {
    uint64_t run_seed = Rng::mix(seed, static_cast<uint64_t>(r));
    Embedding2D cand = smacof_run(d, seeded_init(d, run_seed), max_iter, tol);
    if (r == 0 || cand.stress < best.stress) best = std::move(cand);
  }
  return best;
}

Embedding2D mds_embed_from(const std::vector<std::vector<double>>& d,
                           const std::vector<std::array<double, 2>>& initial, int max_iter,
                           double tol) {
  check_distance_matrix(d);
  if (initial.size() != d.size())
    throw ValidationError("mds_embed_from: initial configuration size mismatch");
  if (d.empty()) return Embedding2D{};
  return smacof_run(d, initial, max_iter, tol);
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ValidationError("pearson: length mismatch");
  const size_t n = xs.size();
  if (n < 2) throw ValidationError("pearson: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ValidationError("pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::vector<double>> election_distance_matrix(const std::vector<Election>& dataset,
                                                          IsoMode mode, uint64_t seed,
                                                          int threads) {
  const int n = static_cast<int>(dataset.size());
  for (int i = 1; i < n; ++i) {
    if (dataset[i].num_candidates != dataset[0].num_candidates ||
        dataset[i].num_voters() != dataset[0].num_voters())
      throw ValidationError("election_distance_matrix: elections must share (m, n)");
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  parallel_for(0, static_cast<int>(pairs.size()), threads, [&](int p) {
    auto [i, j] = pairs[p];
    uint64_t pair_seed = Rng::mix(seed, static_cast<uint64_t>(i) * n + j);
    auto res = isomorphic_swap_distance(dataset[i], dataset[j], mode, pair_seed);
    d[i][j] = d[j][i] = static_cast<double>(res.distance);
  });
  return d;
}

MapOfElections map_of_elections(const std::vector<Election>& dataset, IsoMode mode, uint64_t seed,
                                int threads) {
  MapOfElections out;
  out.distances = election_distance_matrix(dataset, mode, seed, threads);
  out.embedding = mds_embed(out.distances, Rng::mix(seed, 0x4D4453));
  return out;
}

MapOfPreferences map_of_preferences(const Election& e, uint64_t seed) {
  validate_election(e);
  DistinctVotes dv = collapse_votes(e);
  Election distinct_e;
  distinct_e.num_candidates = e.num_candidates;
  distinct_e.votes = dv.rankings;
  auto swap_d = vote_distance_matrix(distinct_e);
  std::vector<std::vector<double>> d(swap_d.size(), std::vector<double>(swap_d.size()));
  for (size_t i = 0; i < swap_d.size(); ++i)
    for (size_t j = 0; j < swap_d.size(); ++j) d[i][j] = static_cast<double>(swap_d[i][j]);
  MapOfPreferences out;
  out.distinct = dv.rankings;
  out.embedding = mds_embed(d, seed);
  out.points.resize(dv.rankings.size());
  for (size_t i = 0; i < dv.rankings.size(); ++i) {
    out.points[i].x = out.embedding.points[i][0];
    out.points[i].y = out.embedding.points[i][1];
    out.points[i].multiplicity = dv.weights[i];
  }
  return out;
}

std::vector<std::array<double, 2>> triangle_transform(
    const std::vector<std::array<double, 2>>& points, int id_index, int an_index, int un_index,
    bool final_rotation) {
  const int n = static_cast<int>(points.size());
  if (id_index < 0 || id_index >= n || an_index < 0 || an_index >= n || un_index < 0 ||
      un_index >= n)
    throw ValidationError("triangle_transform: anchor index out of range");

  auto pts = points;
  const auto id = pts[id_index];
  // 1. translate ID to the origin, rotate AN onto the positive x-axis
  double ax = pts[an_index][0] - id[0], ay = pts[an_index][1] - id[1];
  double side = std::sqrt(ax * ax + ay * ay);
  if (side < 1e-12) throw ValidationError("triangle_transform: ID and AN anchors coincide");
  double c = ax / side, s = ay / side;
  for (auto& p : pts) {
    double x = p[0] - id[0], y = p[1] - id[1];
    p = {c * x + s * y, -s * x + c * y};
  }
  // 2. reflect so the third anchor sits above the ID-AN line
  if (pts[un_index][1] < 0)
    for (auto& p : pts) p[1] = -p[1];
  double uy = pts[un_index][1];
  if (uy < 1e-12 * side)
    throw ValidationError("triangle_transform: anchors are collinear");
  // 3. scale heights so the third anchor lands at 0.87 of the ID-AN distance
  double yscale = 0.87 * side / uy;
  for (auto& p : pts) p[1] *= yscale;
  // 4. shear so the third anchor is horizontally midway between ID and AN
  double shear = (0.5 * side - pts[un_index][0]) / pts[un_index][1];
  for (auto& p : pts) p[0] += shear * p[1];
  if (final_rotation) {
    const double rc = std::cos(2.0 * M_PI / 3.0), rs = std::sin(2.0 * M_PI / 3.0);
    for (auto& p : pts) p = {rc * p[0] - rs * p[1], rs * p[0] + rc * p[1]};
  }
  return pts;
}

}  // namespace ordmetrics
