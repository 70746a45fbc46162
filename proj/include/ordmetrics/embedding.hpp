#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ordmetrics/core.hpp"
#include "ordmetrics/distances.hpp"

namespace ordmetrics {

struct Embedding2D {
  std::vector<std::array<double, 2>> points;
  double stress = 0.0;  // raw stress sum_{i<j} (d_ij - |x_i - x_j|)^2
  int iterations = 0;
  // stress after the initial placement and after each majorization step of
  // the winning restart; non-increasing by construction
  std::vector<double> stress_trace;
};

// SMACOF majorization from seeded random starts, best of `restarts` by final
// stress. The initial position of item i depends only on (seed, restart, i),
// so permuting the input items permutes the output points.
Embedding2D mds_embed(const std::vector<std::vector<double>>& d, uint64_t seed,
                      int max_iter = 300, double tol = 1e-6, int restarts = 4);

// Single majorization run from an explicit initial configuration (no
// randomness): with matched initial points, permuting the input items
// permutes the output points exactly.
Embedding2D mds_embed_from(const std::vector<std::vector<double>>& d,
                           const std::vector<std::array<double, 2>>& initial, int max_iter = 300,
                           double tol = 1e-6);

// Sample Pearson correlation; throws ValidationError on length mismatch,
// fewer than 2 points, or zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Pairwise isomorphic swap distances; all elections must share (m, n).
// Distance of pair (i, j) uses seed mix(seed, i * N + j), so the matrix does
// not depend on scheduling.
std::vector<std::vector<double>> election_distance_matrix(const std::vector<Election>& dataset,
                                                          IsoMode mode, uint64_t seed,
                                                          int threads = 1);

struct MapOfElections {
  std::vector<std::vector<double>> distances;
  Embedding2D embedding;
};

MapOfElections map_of_elections(const std::vector<Election>& dataset, IsoMode mode, uint64_t seed,
                                int threads = 1);

struct PreferenceMapPoint {
  double x = 0.0, y = 0.0;
  long long multiplicity = 0;
};

struct MapOfPreferences {
  std::vector<Ranking> distinct;  // order of first appearance
  std::vector<PreferenceMapPoint> points;
  Embedding2D embedding;
};

// Collapses duplicate votes, embeds the distinct votes by their pairwise swap
// distances, and reports multiplicities (they sum to n).
MapOfPreferences map_of_preferences(const Election& e, uint64_t seed);

// Affine normalization of a 2D map against three anchor items: ID and AN end
// on a horizontal line (ID left), the third anchor above them at height 0.87
// of the ID-AN distance and horizontally midway. `final_rotation` applies the
// optional trailing 120-degree rotation; the default orientation is the
// horizontal one.
std::vector<std::array<double, 2>> triangle_transform(
    const std::vector<std::array<double, 2>>& points, int id_index, int an_index, int un_index,
    bool final_rotation = false);

}  // namespace ordmetrics
