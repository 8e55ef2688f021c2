#include "doctest.h"

#include <Eigen/Dense>

#include <cstdlib>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "persistor/hodge.hpp"

using namespace persistor;

namespace {

double residual(const Eigen::MatrixXd& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rank tolerance honors the environment") {
  CHECK(rank_tolerance() == 1e-8);
  setenv("PERSISTOR_RANK_TOL", "1e-5", 1);
  CHECK(rank_tolerance() == 1e-5);
  setenv("PERSISTOR_RANK_TOL", "frog", 1);
  CHECK_THROWS_AS(rank_tolerance(), input_error);
  setenv("PERSISTOR_RANK_TOL", "-2", 1);
  CHECK_THROWS_AS(rank_tolerance(), input_error);
  unsetenv("PERSISTOR_RANK_TOL");
  CHECK(rank_tolerance() == 1e-8);
}

TEST_CASE("orthonormalize") {
  SUBCASE("identity basis is already orthonormal") {
    const Eigen::MatrixXd Q = orthonormalize(Eigen::MatrixXd::Identity(3, 3));
    REQUIRE(Q.cols() == 3);
    CHECK(residual(Q.transpose() * Q - Eigen::MatrixXd::Identity(3, 3)) < 1e-12);
    CHECK(residual(Q.cwiseAbs() - Eigen::MatrixXd::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("duplicate columns collapse") {
    Eigen::MatrixXd A(3, 2);
    A << 1, 1, 2, 2, 2, 2;
    const Eigen::MatrixXd Q = orthonormalize(A);
    REQUIRE(Q.cols() == 1);
    CHECK(Q.col(0).norm() == doctest::Approx(1.0));
  }
  SUBCASE("boundary of the hollow triangle has rank two") {
    const SimplicialComplex K = build_complex({{1, 2}, {1, 3}, {2, 3}});
    const Eigen::MatrixXd Q = orthonormalize(boundary_matrix_real(K, 1));
    CHECK(Q.cols() == 2);
    CHECK(residual(Q.transpose() * Q - Eigen::MatrixXd::Identity(2, 2)) < 1e-12);
  }
}

TEST_CASE("projection_onto_image") {
  SUBCASE("single axis vector") {
    Eigen::MatrixXd A(2, 1);
    A << 1, 0;
    Eigen::MatrixXd want(2, 2);
    want << 1, 0, 0, 0;
    CHECK(residual(projection_onto_image(A) - want) < 1e-12);
  }
  SUBCASE("full row rank projects onto everything") {
    Eigen::MatrixXd A(2, 3);
    A << 1, 2, 0, 0, 1, 1;
    CHECK(residual(projection_onto_image(A) - Eigen::MatrixXd::Identity(2, 2)) < 1e-12);
  }
  SUBCASE("image of the full triangle's second boundary") {
    const SimplicialComplex K = build_complex({{1, 2, 3}});
    const Eigen::MatrixXd P = projection_onto_image(boundary_matrix_real(K, 2));
    CHECK(P.rows() == 3);
    CHECK(residual(P * P - P) < 1e-12);
    CHECK(residual(P - P.transpose()) < 1e-12);
    CHECK(P.trace() == doctest::Approx(1.0));
    Eigen::VectorXd d(3);
    d << 1, -1, 1;
    CHECK((P * d - d).norm() < 1e-12);
  }
  SUBCASE("empty shapes give zero projections") {
    const Eigen::MatrixXd P = projection_onto_image(Eigen::MatrixXd::Zero(3, 0));
    CHECK(P.rows() == 3);
    CHECK(residual(P) == 0.0);
  }
}

TEST_CASE("harmonic projection") {
  SUBCASE("hollow triangle carries one harmonic loop") {
    const SimplicialComplex K = build_complex({{1, 2}, {1, 3}, {2, 3}});
    const Eigen::MatrixXd H =
        harmonic_projection(boundary_matrix_real(K, 2), boundary_matrix_real(K, 1));
    CHECK(H.trace() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(residual(H * H - H) < 1e-9);
    // the harmonic loop is the alternating cycle (1, -1, 1) / sqrt(3)
    Eigen::VectorXd z(3);
    z << 1, -1, 1;
    CHECK((H * z - z).norm() < 1e-9);
  }
  SUBCASE("filling the triangle removes it") {
    const SimplicialComplex K = build_complex({{1, 2, 3}});
    const Eigen::MatrixXd H =
        harmonic_projection(boundary_matrix_real(K, 2), boundary_matrix_real(K, 1));
    CHECK(residual(H) < 1e-9);
  }
  SUBCASE("degree zero harmonics count components") {
    const SimplicialComplex K = build_complex({{1, 2}, {2, 3}});
    const Eigen::MatrixXd H =
        harmonic_projection(boundary_matrix_real(K, 1), boundary_matrix_real(K, 0));
    CHECK(H.trace() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("hodge projections decompose the identity") {
  const auto corpus = oracle::rips_corpus(6, 64);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    const SimplicialComplex& K = F.complex;
    for (int r = 0; r <= K.dim(); ++r) {
      const Eigen::MatrixXd d_r = boundary_matrix_real(K, r);
      const Eigen::MatrixXd d_rp1 = boundary_matrix_real(K, r + 1);
      const HodgeProjections H = hodge_projections(d_r, d_rp1);
      const Eigen::Index n = H.plus.rows();
      CHECK(residual(H.plus + H.minus + H.harmonic -
                     Eigen::MatrixXd::Identity(n, n)) < 1e-9);
      for (const Eigen::MatrixXd* p : {&H.plus, &H.minus, &H.harmonic}) {
        CHECK(residual(*p * *p - *p) < 1e-9);
        CHECK(residual(*p - p->transpose()) < 1e-9);
      }
      CHECK(residual(H.plus * H.minus) < 1e-9);
      CHECK(residual(H.plus * H.harmonic) < 1e-9);
      CHECK(residual(H.minus * H.harmonic) < 1e-9);
      CHECK(H.harmonic.trace() ==
            doctest::Approx(static_cast<double>(betti_real(K, r))).epsilon(1e-6));
    }
  }
}

TEST_CASE("rank_psd") {
  CHECK(rank_psd(Eigen::MatrixXd::Zero(4, 4)) == 0);
  CHECK(rank_psd(Eigen::MatrixXd::Identity(5, 5)) == 5);
  CHECK(rank_psd(Eigen::MatrixXd::Zero(0, 3)) == 0);
  // agrees with exact rational rank on boundary matrices
  const auto corpus = oracle::map_corpus(6, 500);
  for (const auto& c : corpus) {
    const SimplicialComplex K = build_complex(c.simplices);
    for (int r = 0; r <= K.dim() + 1; ++r) {
      const Eigen::MatrixXd d = boundary_matrix_real(K, r);
      FieldMatrix<Rat> M(static_cast<std::size_t>(d.rows()),
                         static_cast<std::size_t>(d.cols()));
      for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j)
          M.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
              Rat(static_cast<long long>(d(i, j)));
      CHECK(rank_psd(d) == static_cast<int>(oracle::rank_rat(M)));
    }
  }
}

TEST_CASE("betti_real on reference complexes") {
  const SimplicialComplex sphere =
      build_complex({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  CHECK(betti_real(sphere, 0) == 1);
  CHECK(betti_real(sphere, 1) == 0);
  CHECK(betti_real(sphere, 2) == 1);

  const SimplicialComplex hollow = build_complex({{1, 2}, {1, 3}, {2, 3}});
  CHECK(betti_real(hollow, 0) == 1);
  CHECK(betti_real(hollow, 1) == 1);

  // six vertices, nine edges, one triangle: chi = -2, connected, so the
  // remaining four graph cycles minus the filled one leave b_1 = 3
  const SimplicialComplex wedge = test::wedge_map().complex;
  CHECK(betti_real(wedge, 0) == 1);
  CHECK(betti_real(wedge, 1) == 3);
  CHECK(betti_real(wedge, 2) == 0);

  CHECK(betti_real(build_complex({{7}}), 0) == 1);
}

TEST_CASE("beta_table") {
  SUBCASE("constant filtration repeats the betti numbers") {
    const SimplicialComplex K = test::wedge_map().complex;
    const FilteredComplex F =
        test::make_filtered(K, std::vector<int>(K.size(), 0), 2);
    const BetaTable B = beta_table(real_filtration(F));
    for (int r = 0; r <= 2; ++r)
      for (int s = 0; s <= 2; ++s)
        for (int t = s; t <= 2; ++t)
          CHECK(B.beta(r, s, t) == betti_real(K, r));
  }
  SUBCASE("two points joined at step one") {
    const SimplicialComplex K = build_complex({{1, 2}});
    const FilteredComplex F = test::make_filtered(K, {0, 0, 1}, 1);
    const BetaTable B = beta_table(real_filtration(F));
    CHECK(B.beta(0, 0, 0) == 2);
    CHECK(B.beta(0, 0, 1) == 1);
    CHECK(B.beta(0, 1, 1) == 1);
    CHECK(B.beta_inf(0, 0) == 1);
  }
  SUBCASE("unit square rips filtration") {
    const PointCloud square = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    const BetaTable B = beta_table(real_filtration(rips_from_points(square, 2, 10)));
    CHECK(B.beta(0, 0, 0) == 4);
    CHECK(B.beta(0, 0, 1) == 1);
    CHECK(B.beta(1, 1, 1) == 1);
    CHECK(B.beta(1, 1, 2) == 0);
    CHECK(B.beta(1, 2, 2) == 0);
  }
}

TEST_CASE("beta_table matches the exact rational oracle") {
  const auto corpus = oracle::rips_corpus(25, 4096);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    const BetaTable B = beta_table(real_filtration(F));
    const BetaTable E = oracle::beta_oracle_rat(F);
    REQUIRE(B.max_dim == E.max_dim);
    REQUIRE(B.P == E.P);
    for (int r = 0; r <= B.max_dim; ++r)
      for (int s = 0; s <= B.P; ++s)
        for (int t = s; t <= B.P; ++t)
          CHECK(B.beta(r, s, t) == E.beta(r, s, t));
  }
}

TEST_CASE("beta is monotone under shrinking the interval") {
  const auto corpus = oracle::rips_corpus(8, 15);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    const BetaTable B = beta_table(real_filtration(F));
    for (int r = 0; r <= B.max_dim; ++r)
      for (int s = 0; s <= B.P; ++s)
        for (int t = s; t <= B.P; ++t) {
          if (s + 1 <= t) {
            CHECK(B.beta(r, s, t) <= B.beta(r, s + 1, t));
            CHECK(B.beta(r, s, t) <= B.beta(r, s, t - 1));
          }
        }
  }
}

TEST_CASE("mu_from_beta") {
  SUBCASE("two points joined at step one") {
    const SimplicialComplex K = build_complex({{1, 2}});
    const FilteredComplex F = test::make_filtered(K, {0, 0, 1}, 1);
    const MuTable M = mu_from_beta(beta_table(real_filtration(F)));
    CHECK(M.fin[0][0][0] == 1); // one component lives exactly at step 0
    CHECK(M.inf[0][0] == 1);
    CHECK(M.inf[0][1] == 0);
  }
  SUBCASE("constant filtration has only infinite bars at step zero") {
    const SimplicialComplex K = test::wedge_map().complex;
    const FilteredComplex F =
        test::make_filtered(K, std::vector<int>(K.size(), 0), 2);
    const MuTable M = mu_from_beta(beta_table(real_filtration(F)));
    for (int r = 0; r <= 2; ++r) {
      CHECK(M.inf[r][0] == betti_real(K, r));
      for (int s = 0; s <= 2; ++s)
        for (int t = s; t <= 1; ++t) CHECK(M.fin[r][s][t] == 0);
      for (int s = 1; s <= 2; ++s) CHECK(M.inf[r][s] == 0);
    }
  }
  SUBCASE("unit square") {
    const PointCloud square = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    const MuTable M = mu_from_beta(beta_table(real_filtration(rips_from_points(square, 2, 10))));
    CHECK(M.fin[1][1][1] == 1); // the square's hole lives exactly one step
    CHECK(M.fin[0][0][0] == 3);
    CHECK(M.inf[0][0] == 1);
    CHECK(M.inf[1][1] == 0);
  }
}
