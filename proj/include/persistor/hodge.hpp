#pragma once

#include "persistor/rips.hpp"

#include <Eigen/Dense>

#include <vector>

namespace persistor {

// Numerical rank cutoff: eigenvalues of the Gram matrix above this count.
// Default 1e-8, overridable via the PERSISTOR_RANK_TOL environment variable.
double rank_tolerance();

// Modified Gram-Schmidt with one re-orthogonalization pass; columns whose
// residual norm is at most the drop tolerance are discarded.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& A);

// [A][A]^T for the orthonormal basis [A] of the column space.
Eigen::MatrixXd projection_onto_image(const Eigen::MatrixXd& A);

struct HodgeProjections {
  Eigen::MatrixXd plus;     // onto im(d_{r+1})
  Eigen::MatrixXd minus;    // onto im(d_r^T)
  Eigen::MatrixXd harmonic; // I - plus - minus
};

// d_r: C_r -> C_{r-1}, d_rp1: C_{r+1} -> C_r; all three projections act on C_r.
HodgeProjections hodge_projections(const Eigen::MatrixXd& d_r, const Eigen::MatrixXd& d_rp1);
Eigen::MatrixXd harmonic_projection(const Eigen::MatrixXd& d_rp1, const Eigen::MatrixXd& d_r);

// Rank via the spectrum of the Gram matrix on the smaller side.
int rank_psd(const Eigen::MatrixXd& A, double tol = -1.0);

// n_r - rank d_r - rank d_{r+1} over the reals.
long long betti_real(const SimplicialComplex& K, int r);

// Real chain complex of a filtration: per-dimension cells in (step, lex)
// order, so every step complex is an upper-left block.
struct RealFiltration {
  int m = 0; // max cell dimension
  int P = 0;
  // counts[r][s] = n_r^s for r = 0..m, s = 0..P
  std::vector<std::vector<int>> counts;
  // boundary[r] = d_r at the final step, r = 0..m+1 (0 and m+1 are empty-shaped)
  std::vector<Eigen::MatrixXd> boundary;

  int n(int r, int s) const {
    return (r < 0 || r > m) ? 0 : counts[r][s];
  }
  // upper-left block d_r^s
  Eigen::MatrixXd block(int r, int s) const;
};

RealFiltration real_filtration(const FilteredComplex& F);

// beta_r(s, t) = rank of H_r(K_s) -> H_r(K_t); beta(s, inf) is identified
// with beta(s, P).
struct BetaTable {
  int max_dim = 0;
  int P = 0;
  std::vector<std::vector<std::vector<long long>>> val; // [r][s][t], t >= s

  long long beta(int r, int s, int t) const { return val[r][s][t]; }
  long long beta_inf(int r, int s) const { return val[r][s][P]; }
};

BetaTable beta_table(const RealFiltration& RF);

// mu_r(s, t): bars born entering step s and last alive at step t; inf column
// for never-dying classes.
struct MuTable {
  int max_dim = 0;
  int P = 0;
  std::vector<std::vector<std::vector<long long>>> fin; // [r][s][t], s <= t <= P-1
  std::vector<std::vector<long long>> inf;              // [r][s]
};

MuTable mu_from_beta(const BetaTable& B);

} // namespace persistor
