#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "ordmetrics/cultures.hpp"
#include "ordmetrics/embedding.hpp"

using namespace ordmetrics;

namespace {

double dist2d(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double recompute_stress(const std::vector<std::vector<double>>& d,
                        const std::vector<std::array<double, 2>>& pts) {
  double s = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double diff = d[i][j] - dist2d(pts[i], pts[j]);
      s += diff * diff;
    }
  return s;
}

// random symmetric matrix from points in a higher-dimensional space, so it
// is a genuine metric but generally not planar
std::vector<std::vector<double>> random_metric(int n, int dim, oracles::TestRng& rng) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = rng.real01() * 10;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < dim; ++k) {
        double diff = pts[i][k] - pts[j][k];
        s += diff * diff;
      }
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  return d;
}

// pearson correlation of a projection with the index order, computed on ranks
double rank_correlation_with_order(const std::vector<double>& proj) {
  int n = static_cast<int>(proj.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return proj[a] < proj[b]; });
  std::vector<double> rank(n), order(n);
  for (int r = 0; r < n; ++r) rank[idx[r]] = static_cast<double>(r);
  for (int i = 0; i < n; ++i) order[i] = static_cast<double>(i);
  return pearson(rank, order);
}

}  // namespace

TEST_CASE("exactly embeddable configurations reach zero stress") {
  std::vector<std::vector<double>> two = {{0, 5}, {5, 0}};
  Embedding2D e = mds_embed(two, 1);
  REQUIRE(e.points.size() == 2);
  CHECK(dist2d(e.points[0], e.points[1]) == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(e.stress < 1e-9);

  // a 3-4-5 triangle embeds exactly in the plane
  std::vector<std::vector<double>> tri = {{0, 3, 4}, {3, 0, 5}, {4, 5, 0}};
  Embedding2D t = mds_embed(tri, 2, 2000, 1e-12);
  CHECK(t.stress < 1e-6);
  CHECK(dist2d(t.points[0], t.points[1]) == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(dist2d(t.points[0], t.points[2]) == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(dist2d(t.points[1], t.points[2]) == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("reported stress is recomputable and the trace never increases") {
  oracles::TestRng rng(101);
  for (int t = 0; t < 20; ++t) {
    auto d = random_metric(50, 5, rng);
    Embedding2D e = mds_embed(d, 1000 + t, 150);
    CHECK(e.stress == doctest::Approx(recompute_stress(d, e.points)).epsilon(1e-9));
    REQUIRE(e.stress_trace.size() >= 2);
    for (size_t i = 1; i < e.stress_trace.size(); ++i)
      CHECK(e.stress_trace[i] <= e.stress_trace[i - 1] + 1e-9);
    CHECK(e.stress == doctest::Approx(e.stress_trace.back()));
    CHECK(e.iterations + 1 == static_cast<int>(e.stress_trace.size()));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(mds_embed({{0, 1}, {2, 0}}, 1), ValidationError);        // asymmetric
  CHECK_THROWS_AS(mds_embed({{1, 1}, {1, 0}}, 1), ValidationError);        // nonzero diagonal
  CHECK_THROWS_AS(mds_embed({{0, -1}, {-1, 0}}, 1), ValidationError);      // negative
  CHECK_THROWS_AS(mds_embed({{0, 1, 2}, {1, 0}}, 1), ValidationError);     // ragged
}

TEST_CASE("majorization from matched starts is permutation equivariant") {
  oracles::TestRng rng(102);
  auto d = random_metric(12, 4, rng);
  std::vector<std::array<double, 2>> init(12);
  for (auto& p : init) p = {rng.real01() * 10 - 5, rng.real01() * 10 - 5};

  Embedding2D base = mds_embed_from(d, init, 200, 1e-9);

  // reverse-order permutation
  int n = 12;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
  std::vector<std::vector<double>> pd(n, std::vector<double>(n));
  std::vector<std::array<double, 2>> pinit(n);
  for (int i = 0; i < n; ++i) {
    pinit[perm[i]] = init[i];
    for (int j = 0; j < n; ++j) pd[perm[i]][perm[j]] = d[i][j];
  }
  Embedding2D moved = mds_embed_from(pd, pinit, 200, 1e-9);
  REQUIRE(moved.points.size() == base.points.size());
  CHECK(moved.stress == doctest::Approx(base.stress).epsilon(1e-12));
  for (int i = 0; i < n; ++i) {
    CHECK(moved.points[perm[i]][0] == doctest::Approx(base.points[i][0]).epsilon(1e-12));
    CHECK(moved.points[perm[i]][1] == doctest::Approx(base.points[i][1]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(mds_embed_from(d, {{0, 0}}, 10, 1e-6), ValidationError);
}

TEST_CASE("pearson correlation") {
  CHECK(pearson({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0).epsilon(1e-12));

  // five fixed points against the textbook formula
  std::vector<double> xs = {1, 2, 4, 5, 8};
  std::vector<double> ys = {3, 1, 5, 2, 6};
  double mx = 4, my = 3.4;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  CHECK(pearson(xs, ys) == doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(1e-12));

  CHECK_THROWS_AS(pearson({1, 2}, {1}), ValidationError);
  CHECK_THROWS_AS(pearson({1}, {1}), ValidationError);
  CHECK_THROWS_AS(pearson({2, 2, 2}, {1, 2, 3}), ValidationError);  // zero variance
}

TEST_CASE("pairwise distances between elections") {
  std::vector<Election> iso;
  oracles::TestRng rng(103);
  Election base = oracles::random_election(4, 5, rng);
  for (int i = 0; i < 4; ++i) iso.push_back(oracles::random_isomorphic_copy(base, rng));
  auto d = election_distance_matrix(iso, IsoMode::exact, 1);
  for (const auto& row : d)
    for (double v : row) CHECK(v == 0.0);

  // mixed shapes are rejected
  std::vector<Election> mixed = {identity_election(4, 5), identity_election(5, 5)};
  CHECK_THROWS_AS(election_distance_matrix(mixed, IsoMode::exact, 1), ValidationError);

  // the two poles sit farther apart than either pole from near-uniform
  std::vector<Election> triple = {identity_election(4, 8), antagonism_election(4, 8),
                                  un_star_election(4, 8, 3)};
  auto dd = election_distance_matrix(triple, IsoMode::exact, 1);
  CHECK(dd[0][1] >= dd[0][2]);
  CHECK(dd[0][1] >= dd[1][2]);
  for (int i = 0; i < 3; ++i) {
    CHECK(dd[i][i] == 0.0);
    for (int j = 0; j < 3; ++j) CHECK(dd[i][j] == dd[j][i]);
  }

  // thread count must not change the result
  auto serial = election_distance_matrix(triple, IsoMode::heuristic, 9, 1);
  auto parallel = election_distance_matrix(triple, IsoMode::heuristic, 9, 4);
  CHECK(serial == parallel);

  MapOfElections map = map_of_elections(triple, IsoMode::exact, 5);
  CHECK(map.distances == dd);
  CHECK(map.embedding.points.size() == 3);
}

TEST_CASE("vote maps collapse duplicates") {
  MapOfPreferences id_map = map_of_preferences(identity_election(6, 40), 1);
  REQUIRE(id_map.points.size() == 1);
  CHECK(id_map.points[0].multiplicity == 40);

  MapOfPreferences an_map = map_of_preferences(antagonism_election(8, 96), 2);
  REQUIRE(an_map.points.size() == 2);
  CHECK(an_map.points[0].multiplicity == 48);
  CHECK(an_map.points[1].multiplicity == 48);
  double gap = std::hypot(an_map.points[0].x - an_map.points[1].x,
                          an_map.points[0].y - an_map.points[1].y);
  CHECK(gap == doctest::Approx(28.0).epsilon(1e-6));
  CHECK(an_map.embedding.stress < 1e-9);

  // multiplicities always add up to the voter count
  oracles::TestRng rng(104);
  for (int t = 0; t < 5; ++t) {
    Election e = oracles::random_election(4, 30, rng);
    MapOfPreferences m = map_of_preferences(e, 10 + t);
    long long total = 0;
    for (const auto& p : m.points) total += p.multiplicity;
    CHECK(total == 30);
    CHECK(m.distinct.size() == m.points.size());
  }
}

TEST_CASE("vote map of a crossing sequence is a curve") {
  // 16 distinct votes walking from the identity to its reverse
  Election e = sample_single_crossing(6, 16, 7);
  MapOfPreferences m = map_of_preferences(e, 3);
  REQUIRE(m.points.size() == 16);

  // principal direction of the embedded points
  double mx = 0, my = 0;
  for (const auto& p : m.points) {
    mx += p.x;
    my += p.y;
  }
  mx /= 16;
  my /= 16;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : m.points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  double tr = sxx + syy, det = sxx * syy - sxy * sxy;
  double lam = tr / 2 + std::sqrt(std::max(0.0, tr * tr / 4 - det));
  double vx, vy;
  if (std::abs(sxy) > 1e-12) {
    vx = lam - syy;
    vy = sxy;
  } else {
    vx = sxx >= syy ? 1 : 0;
    vy = sxx >= syy ? 0 : 1;
  }
  std::vector<double> proj;
  for (const auto& p : m.points) proj.push_back(p.x * vx + p.y * vy);

  // walking order and projection order agree
  CHECK(std::abs(rank_correlation_with_order(proj)) > 0.9);
}

TEST_CASE("anchor normalization of a map") {
  std::vector<std::array<double, 2>> pts = {
      {3.0, 1.0},   // item 0: first anchor
      {-1.0, 5.0},  // item 1: second anchor
      {4.0, 6.0},   // item 2: third anchor
      {0.0, 0.0},
      {2.0, 2.0}};
  auto out = triangle_transform(pts, 0, 1, 2);
  REQUIRE(out.size() == 5);

  // the two pole anchors land on a horizontal line, first on the left
  CHECK(out[0][1] == doctest::Approx(out[1][1]).epsilon(1e-9));
  CHECK(out[0][0] < out[1][0]);

  double side = dist2d(out[0], out[1]);
  // third anchor: horizontally midway, 0.87 of the side above
  CHECK(out[2][0] - out[0][0] == doctest::Approx(side / 2).epsilon(1e-9));
  CHECK(out[2][1] - out[0][1] == doctest::Approx(0.87 * side).epsilon(1e-9));
  // hence equidistant from both poles
  CHECK(dist2d(out[2], out[0]) == doctest::Approx(dist2d(out[2], out[1])).epsilon(1e-9));

  // a second application is the identity: anchors are already in place
  auto again = triangle_transform(out, 0, 1, 2);
  for (size_t i = 0; i < out.size(); ++i) {
    CHECK(again[i][0] == doctest::Approx(out[i][0]).epsilon(1e-9));
    CHECK(again[i][1] == doctest::Approx(out[i][1]).epsilon(1e-9));
  }

  // the optional trailing rotation is rigid: pairwise distances survive
  auto rot = triangle_transform(pts, 0, 1, 2, true);
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      CHECK(dist2d(rot[i], rot[j]) == doctest::Approx(dist2d(out[i], out[j])).epsilon(1e-9));
  // ...and actually moves the picture
  CHECK(std::abs(rot[1][1] - out[1][1]) > 1e-6);

  // degenerate anchors
  std::vector<std::array<double, 2>> coincident = {{1, 1}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(triangle_transform(coincident, 0, 1, 2), ValidationError);
  std::vector<std::array<double, 2>> collinear = {{0, 0}, {2, 0}, {1, 0}};
  CHECK_THROWS_AS(triangle_transform(collinear, 0, 1, 2), ValidationError);
  CHECK_THROWS_AS(triangle_transform(pts, 0, 1, 9), ValidationError);
}
