#pragma once

#include "persistor/complex.hpp"

#include <cstddef>
#include <vector>

namespace persistor {

using PointCloud = std::vector<std::vector<double>>;

struct DistanceMatrix {
  std::size_t n = 0;
  // upper triangle, row major: entry (i, j) for i < j at tri_index(i, j)
  std::vector<double> upper;

  std::size_t tri_index(std::size_t i, std::size_t j) const {
    // requires i < j
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i < j ? upper[tri_index(i, j)] : upper[tri_index(j, i)];
  }
};

// Tunable constants of the conditioning step (defaults follow the contract).
struct ScaleConfig {
  double merge_eps = 2.2204e-16; // relative merge window factor
  double min_gap = 3e-4;         // required absolute gap after scaling
  double target_gap = 3.0001e-4; // gap actually produced when rescaling
};

// Euclidean distances; throws precondition_error on coincident points or
// input_error on dimension mismatch / empty cloud.
DistanceMatrix distance_matrix(const PointCloud& X);

// Distinct pairwise distances, ascending, after merging groups closer than
// 3 * diam * cfg.merge_eps (each group represented by its smallest member).
std::vector<double> merged_distances(const DistanceMatrix& D, const ScaleConfig& cfg = {});

// Uniformly rescales the cloud so consecutive merged distances differ by more
// than cfg.min_gap. Identity when already well separated. Throws
// precondition_error if all points coincide.
PointCloud scale_points(const PointCloud& X, const ScaleConfig& cfg = {});

struct EpsilonSchedule {
  // 0 = eps_0 < eps_1 < ... < eps_N
  std::vector<double> epsiorg;
  // midpoints: ((eps_0+eps_1)/2, ..., (eps_{N-1}+eps_N)/2, eps_N + 1/2)
  std::vector<double> epsiavg;
  int n_values() const { return static_cast<int>(epsiorg.size()) - 1; } // N
};

struct CappedSchedule {
  EpsilonSchedule schedule;
  int P = 0;        // min(S, N)
  double eps_p = 0; // epsiorg[P]
};

// Builds the schedule from a (conditioned) distance matrix and applies the
// step cap S >= 0.
CappedSchedule epsilon_schedule(const DistanceMatrix& D, int S);

struct FilteredComplex {
  SimplicialComplex complex;   // canonical (dim, lex) cell order
  std::vector<int> f_ind;      // per cell: first step 0..P containing it
  int max_dim = 0;             // m
  int P = 0;
  EpsilonSchedule schedule;
  Ordering order;              // filtration order (f_ind, dim, lex)
  // dimension[r][s] = n_r^s, r = 0..m, s = 0..P
  std::vector<std::vector<int>> dimension;

  // cells of dim r in filtration order, with their f_ind (ascending)
  std::vector<Simplex> cells_of_dim_ordered(int r) const;
  std::vector<int> f_ind_of_dim_ordered(int r) const;
};

// Vietoris-Rips filtration capped at dimension m and step P. Cliques are
// grown edge by edge in distance order.
FilteredComplex rips_filtration(const DistanceMatrix& D, int m, int P,
                                const EpsilonSchedule& schedule);

// Full pipeline: condition the cloud, build schedule and filtration.
FilteredComplex rips_from_points(const PointCloud& X, int m, int S,
                                 const ScaleConfig& cfg = {});

} // namespace persistor
