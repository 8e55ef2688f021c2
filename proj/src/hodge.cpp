#include "persistor/hodge.hpp"

#include <cstdlib>
#include <string>

namespace persistor {

double rank_tolerance() {
  if (const char* env = std::getenv("PERSISTOR_RANK_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
    throw input_error("PERSISTOR_RANK_TOL must be a positive number");
  }
  return 1e-8;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& A) {
  const double drop = rank_tolerance();
  Eigen::MatrixXd Q(A.rows(), A.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    Eigen::VectorXd v = A.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < kept; ++i) v -= Q.col(i).dot(v) * Q.col(i);
    const double nrm = v.norm();
    if (nrm <= drop) continue;
    Q.col(kept++) = v / nrm;
  }
  return Q.leftCols(kept);
}

Eigen::MatrixXd projection_onto_image(const Eigen::MatrixXd& A) {
  if (A.rows() == 0 || A.cols() == 0)
    return Eigen::MatrixXd::Zero(A.rows(), A.rows());
  Eigen::MatrixXd Q = orthonormalize(A);
  return Q * Q.transpose();
}

HodgeProjections hodge_projections(const Eigen::MatrixXd& d_r, const Eigen::MatrixXd& d_rp1) {
  const Eigen::Index n = d_r.cols();
  if (d_rp1.rows() != n)
    throw input_error("boundary shapes do not share a chain space");
  HodgeProjections P;
  P.plus = d_rp1.cols() > 0 ? projection_onto_image(d_rp1)
                            : Eigen::MatrixXd::Zero(n, n);
  P.minus = d_r.rows() > 0 ? projection_onto_image(d_r.transpose())
                           : Eigen::MatrixXd::Zero(n, n);
  P.harmonic = Eigen::MatrixXd::Identity(n, n) - P.plus - P.minus;
  return P;
}

Eigen::MatrixXd harmonic_projection(const Eigen::MatrixXd& d_rp1, const Eigen::MatrixXd& d_r) {
  return hodge_projections(d_r, d_rp1).harmonic;
}

int rank_psd(const Eigen::MatrixXd& A, double tol) {
  if (tol < 0) tol = rank_tolerance();
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::MatrixXd G = (A.rows() <= A.cols()) ? Eigen::MatrixXd(A * A.transpose())
                                             : Eigen::MatrixXd(A.transpose() * A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw internal_error("eigensolver failed");
  int r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > tol) ++r;
  return r;
}

long long betti_real(const SimplicialComplex& K, int r) {
  if (r < 0 || r > K.dim()) return 0;
  const long long n_r = static_cast<long long>(K.cells_of_dim(r).size());
  const long long b =
      n_r - rank_psd(boundary_matrix_real(K, r)) - rank_psd(boundary_matrix_real(K, r + 1));
  if (b < 0) throw internal_error("negative real Betti number");
  return b;
}

Eigen::MatrixXd RealFiltration::block(int r, int s) const {
  if (r < 0 || r > m + 1) throw input_error("dimension out of range");
  return boundary[r].topLeftCorner(n(r - 1, s), n(r, s));
}

RealFiltration real_filtration(const FilteredComplex& F) {
  RealFiltration RF;
  RF.m = F.max_dim;
  RF.P = F.P;
  RF.counts = F.dimension;

  std::vector<std::vector<Simplex>> cells(RF.m + 1);
  for (int r = 0; r <= RF.m; ++r) cells[r] = F.cells_of_dim_ordered(r);

  RF.boundary.resize(RF.m + 2);
  RF.boundary[0] = Eigen::MatrixXd::Zero(0, static_cast<Eigen::Index>(cells[0].size()));
  for (int r = 1; r <= RF.m; ++r)
    RF.boundary[r] = boundary_matrix_real(cells[r - 1], cells[r]);
  RF.boundary[RF.m + 1] =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cells[RF.m].size()), 0);
  return RF;
}

BetaTable beta_table(const RealFiltration& RF) {
  const int m = RF.m, P = RF.P;
  BetaTable B;
  B.max_dim = m;
  B.P = P;
  B.val.assign(m + 1, std::vector<std::vector<long long>>(
                          P + 1, std::vector<long long>(P + 1, 0)));

  // vertices all present from step 0 lets beta_0(s, t) collapse to b_0(t)
  bool vertices_at_zero = true;
  for (int s = 0; s <= P; ++s)
    if (RF.n(0, s) != RF.n(0, P)) vertices_at_zero = false;

  std::vector<std::vector<Eigen::MatrixXd>> pH(m + 1);
  std::vector<std::vector<long long>> b(m + 1, std::vector<long long>(P + 1, 0));
  for (int r = 0; r <= m; ++r) {
    pH[r].resize(P + 1);
    for (int s = 0; s <= P; ++s) {
      pH[r][s] = harmonic_projection(RF.block(r + 1, s), RF.block(r, s));
      const long long diag = RF.n(r, s) - rank_psd(RF.block(r + 1, s)) -
                             rank_psd(RF.block(r, s));
      if (diag < 0) throw internal_error("negative Betti number");
      b[r][s] = diag;
      B.val[r][s][s] = diag;
    }
  }

  for (int r = 0; r <= m; ++r) {
    for (int s = 0; s <= P; ++s) {
      long long prev = B.val[r][s][s];
      for (int t = s + 1; t <= P; ++t) {
        if (prev == 0 || b[r][t] == 0) {
          // the rank can only shrink along t, and factors through H_r(K_t)
          prev = 0;
          continue;
        }
        long long v;
        if (r == 0 && vertices_at_zero) {
          v = b[0][t];
        } else {
          const int ns = RF.n(r, s), nt = RF.n(r, t);
          Eigen::MatrixXd incl = Eigen::MatrixXd::Zero(nt, ns);
          incl.topLeftCorner(ns, ns).setIdentity();
          v = rank_psd(pH[r][t] * incl * pH[r][s]);
        }
        if (v > prev) throw internal_error("beta increased along the filtration");
        B.val[r][s][t] = v;
        prev = v;
      }
    }
  }
  return B;
}

MuTable mu_from_beta(const BetaTable& B) {
  const int m = B.max_dim, P = B.P;
  MuTable M;
  M.max_dim = m;
  M.P = P;
  M.fin.assign(m + 1, std::vector<std::vector<long long>>(
                          P + 1, std::vector<long long>(P, 0)));
  M.inf.assign(m + 1, std::vector<long long>(P + 1, 0));
  for (int r = 0; r <= m; ++r) {
    for (int s = 0; s <= P; ++s) {
      for (int t = s; t <= P - 1; ++t) {
        long long v = B.beta(r, s, t) - B.beta(r, s, t + 1);
        if (s > 0) v -= B.beta(r, s - 1, t) - B.beta(r, s - 1, t + 1);
        if (v < 0) throw internal_error("negative multiplicity in mu table");
        M.fin[r][s][t] = v;
      }
      long long v = B.beta_inf(r, s);
      if (s > 0) v -= B.beta_inf(r, s - 1);
      if (v < 0) throw internal_error("negative multiplicity in mu table");
      M.inf[r][s] = v;
    }
  }
  return M;
}

} // namespace persistor
