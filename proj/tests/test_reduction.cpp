#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "persistor/reduction.hpp"
#include "persistor/rips.hpp"

using namespace persistor;

namespace {

BoundaryMatrix matrix_of(const SimplicialComplex& K, const Ordering& order) {
  return boundary_matrix_gf2(K, order);
}

BoundaryMatrix canonical_matrix(const SimplicialComplex& K) {
  Ordering order(K.size());
  std::iota(order.begin(), order.end(), 0);
  return matrix_of(K, order);
}

std::vector<int> dims_of(const SimplicialComplex& K) {
  std::vector<int> d(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) d[i] = simplex_dim(K.cells[i]);
  return d;
}

// D * V over GF(2), columnwise.
std::vector<std::vector<int>> apply_basis(const BoundaryMatrix& D,
                                          const std::vector<std::vector<int>>& V) {
  std::vector<std::vector<int>> out(V.size());
  for (std::size_t j = 0; j < V.size(); ++j)
    for (int k : V[j]) gf2_add_into(D.cols[static_cast<std::size_t>(k)], out[j]);
  return out;
}

}  // namespace

TEST_CASE("reduce leaves a zero matrix alone") {
  BoundaryMatrix D;
  D.rows = 4;
  D.cols.assign(4, {});
  const ReducedMatrix R = reduce(D);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(R.is_zero(j));
    CHECK(R.low[j] == -1);
  }
}

TEST_CASE("reduce on a single edge") {
  const ReducedMatrix R = reduce(canonical_matrix(build_complex({{1, 2}})));
  CHECK(R.is_zero(0));
  CHECK(R.is_zero(1));
  CHECK(R.cols[2] == std::vector<int>{0, 1});
  CHECK(R.low[2] == 1);
}

TEST_CASE("reduce on the hollow triangle") {
  const SimplicialComplex K = build_complex({{1, 2}, {1, 3}, {2, 3}});
  const ReducedMatrix R = reduce(canonical_matrix(K));
  // one edge column dies in the reduction, the other two keep distinct lows
  CHECK(R.is_zero(5));
  CHECK(R.low[3] == 1);
  CHECK(R.low[4] == 2);
  CHECK(is_reduced(R.cols));
}

TEST_CASE("reduce postcondition and idempotence on random matrices") {
  std::mt19937 rng(123);
  std::bernoulli_distribution flip(0.35);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 12);
    BoundaryMatrix D;
    D.rows = n;
    D.cols.assign(n, {});
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (flip(rng)) D.cols[j].push_back(static_cast<int>(i));
    const ReducedMatrix R = reduce(D);
    CHECK(is_reduced(R.cols));
    BoundaryMatrix again;
    again.rows = n;
    again.cols = R.cols;
    CHECK(reduce(again).cols == R.cols);
  }
}

TEST_CASE("tracked change of basis satisfies D * V = R") {
  std::mt19937 rng(321);
  const auto corpus = oracle::rips_corpus(10, 5);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    const BoundaryMatrix D = matrix_of(F.complex, F.order);
    const ReducedMatrix R = reduce(D, true);
    REQUIRE(R.v.size() == D.cols.size());
    // V is upper triangular with unit diagonal
    for (std::size_t j = 0; j < R.v.size(); ++j) {
      CHECK(std::count(R.v[j].begin(), R.v[j].end(), static_cast<int>(j)) == 1);
      for (int k : R.v[j]) CHECK(k <= static_cast<int>(j));
    }
    CHECK(apply_basis(D, R.v) == R.cols);
  }
}

TEST_CASE("betti numbers from the reduced matrix") {
  SUBCASE("hollow triangle") {
    const SimplicialComplex K = build_complex({{1, 2}, {1, 3}, {2, 3}});
    const auto b = betti_from_reduced(reduce(canonical_matrix(K)), dims_of(K));
    CHECK(b == std::vector<long long>{1, 1});
  }
  SUBCASE("full triangle") {
    const SimplicialComplex K = build_complex({{1, 2, 3}});
    const auto b = betti_from_reduced(reduce(canonical_matrix(K)), dims_of(K));
    CHECK(b == std::vector<long long>{1, 0, 0});
  }
  SUBCASE("boundary of the 3-simplex") {
    const SimplicialComplex K =
        build_complex({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    const auto b = betti_from_reduced(reduce(canonical_matrix(K)), dims_of(K));
    CHECK(b == std::vector<long long>{1, 0, 1});
  }
  SUBCASE("metadata size mismatch is rejected") {
    const SimplicialComplex K = build_complex({{1, 2}});
    CHECK_THROWS_AS(betti_from_reduced(reduce(canonical_matrix(K)), {0, 0}),
                    input_error);
  }
}

TEST_CASE("bars of tiny rips filtrations") {
  SUBCASE("equilateral triangle") {
    const PointCloud X = {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.8660254037844386}};
    const auto bars = test::bars_of(test::elz_pairs(rips_from_points(X, 2, 10)));
    const std::vector<std::tuple<int, int, int>> want = {
        {0, 0, 0}, {0, 0, 0}, {0, 0, k_plus_inf}};
    CHECK(bars == want);
  }
  SUBCASE("two points") {
    const auto bars = test::bars_of(test::elz_pairs(rips_from_points({{0.0}, {1.0}}, 1, 10)));
    const std::vector<std::tuple<int, int, int>> want = {{0, 0, 0}, {0, 0, k_plus_inf}};
    CHECK(bars == want);
  }
  SUBCASE("one point") {
    const auto bars = test::bars_of(test::elz_pairs(rips_from_points({{0.0}}, 1, 10)));
    CHECK(bars == std::vector<std::tuple<int, int, int>>{{0, 0, k_plus_inf}});
  }
}

TEST_CASE("pairing against an earlier step is rejected") {
  // single edge with the edge claimed earlier than its endpoints
  const SimplicialComplex K = build_complex({{1, 2}});
  const ReducedMatrix R = reduce(canonical_matrix(K));
  CHECK_THROWS_AS(barcodes_from_reduced(R, {1, 1, 0}, dims_of(K)), precondition_error);
}

TEST_CASE("bars are invariant under the within-step ordering") {
  std::mt19937 rng(911);
  const auto corpus = oracle::rips_corpus(30, 8);
  int used = 0;
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    if (F.complex.size() > 12) continue;
    ++used;
    const auto want = test::bars_of(test::elz_pairs(F));
    for (int trial = 0; trial < 5; ++trial) {
      // shuffle cells inside every (step, dim) bucket; the result is still a
      // filtration order
      std::map<std::pair<int, int>, std::vector<std::size_t>> buckets;
      for (std::size_t i = 0; i < F.complex.size(); ++i)
        buckets[{F.f_ind[i], simplex_dim(F.complex.cells[i])}].push_back(i);
      Ordering order;
      for (auto& [key, bucket] : buckets) {
        std::shuffle(bucket.begin(), bucket.end(), rng);
        order.insert(order.end(), bucket.begin(), bucket.end());
      }
      const ReducedMatrix R = reduce(matrix_of(F.complex, order));
      std::vector<int> f(order.size()), d(order.size());
      for (std::size_t p = 0; p < order.size(); ++p) {
        f[p] = F.f_ind[order[p]];
        d[p] = simplex_dim(F.complex.cells[order[p]]);
      }
      CHECK(test::bars_of(barcodes_from_reduced(R, f, d)) == want);
    }
  }
  CHECK(used >= 5);
}

TEST_CASE("bar counts match the rank oracle") {
  const auto corpus = oracle::rips_corpus(15, 400);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    const BetaTable B = oracle::beta_oracle_gf2(F);
    const auto pairs = test::elz_pairs(F);
    for (int r = 0; r <= F.max_dim; ++r)
      for (int s = 0; s <= F.P; ++s)
        for (int t = s; t <= F.P; ++t) {
          long long n = 0;
          for (const auto& p : pairs)
            if (p.dim == r && p.birth <= s && p.death >= t) ++n;
          CHECK(B.val[r][s][t] == n);
        }
  }
}

TEST_CASE("relative reduction") {
  reset_reduction_counters();
  SUBCASE("everything in group one behaves like plain reduce") {
    const SimplicialComplex K = test::wedge_map().complex;
    const BoundaryMatrix D = canonical_matrix(K);
    const RelativeReducedMatrix RR = relative_reduce(D, std::vector<int>(K.size(), 1));
    CHECK(RR.R.cols == reduce(D).cols);
    CHECK(reduction_counters().relative_reduce_calls == 1);
  }
  SUBCASE("group assignments are validated") {
    const SimplicialComplex K = build_complex({{1, 2}});
    CHECK_THROWS_AS(relative_reduce(canonical_matrix(K), {1, 1}), input_error);
    CHECK_THROWS_AS(relative_reduce(canonical_matrix(K), {1, 1, 4}), input_error);
  }
  SUBCASE("circle split into two arcs") {
    // X0 = {1, 2}; the lower arc runs through 3, the upper arc through 4
    const SimplicialComplex K = build_complex({{1, 3}, {2, 3}, {1, 4}, {2, 4}});
    Ordering order;
    for (const Simplex& s :
         {Simplex{1}, {2}, {3}, {4}, {1, 3}, {2, 3}, {1, 4}, {2, 4}})
      order.push_back(*K.index_of(s));
    const BoundaryMatrix D = matrix_of(K, order);
    const std::vector<int> group = {1, 1, 2, 3, 2, 2, 3, 3};
    const RelativeReducedMatrix RR = relative_reduce(D, group);
    const std::vector<int> cell_dim = {0, 0, 0, 0, 1, 1, 1, 1};
    const std::vector<int> step_minus = {0, 0, 1, 0, 1, 1, 0, 0};
    const std::vector<int> step_plus = {0, 0, 0, 1, 0, 0, 1, 1};
    const auto w = simultaneous_numbers(RR, cell_dim, step_minus, step_plus);
    REQUIRE(w.size() == 1);
    CHECK(w.at({0, 1, 1}) == 1);
  }
  SUBCASE("cone on one side only leaves nothing simultaneous") {
    const SimplicialComplex K =
        build_complex({{1, 2}, {1, 3}, {2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    Ordering order;
    std::vector<int> group, cell_dim, step_minus, step_plus;
    for (const Simplex& s : {Simplex{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}) {
      order.push_back(*K.index_of(s));
      group.push_back(1);
      cell_dim.push_back(simplex_dim(s));
      step_minus.push_back(0);
      step_plus.push_back(0);
    }
    for (const Simplex& s : {Simplex{4}, {1, 4}, {2, 4}, {3, 4},
                             {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
      order.push_back(*K.index_of(s));
      group.push_back(3);
      cell_dim.push_back(simplex_dim(s));
      step_minus.push_back(0);
      step_plus.push_back(1);
    }
    const RelativeReducedMatrix RR = relative_reduce(matrix_of(K, order), group);
    CHECK(simultaneous_numbers(RR, cell_dim, step_minus, step_plus).empty());
  }
  SUBCASE("sphere built from two cones over the hollow triangle") {
    const SimplicialComplex K =
        build_complex({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    Ordering order;
    std::vector<int> group, cell_dim, step_minus, step_plus;
    auto append = [&](const Simplex& s, int g, int sm, int sp) {
      order.push_back(*K.index_of(s));
      group.push_back(g);
      cell_dim.push_back(simplex_dim(s));
      step_minus.push_back(sm);
      step_plus.push_back(sp);
    };
    for (const Simplex& s : {Simplex{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}})
      append(s, 1, 0, 0);
    for (const Simplex& s : {Simplex{5}, {1, 5}, {2, 5}, {3, 5},
                             {1, 2, 5}, {1, 3, 5}, {2, 3, 5}})
      append(s, 2, 1, 0);
    for (const Simplex& s : {Simplex{4}, {1, 4}, {2, 4}, {3, 4},
                             {1, 2, 4}, {1, 3, 4}, {2, 3, 4}})
      append(s, 3, 0, 1);
    const RelativeReducedMatrix RR = relative_reduce(matrix_of(K, order), group);
    // X0 is already connected, so only the hollow triangle's cycle dies on
    // both sides at once
    const auto w = simultaneous_numbers(RR, cell_dim, step_minus, step_plus);
    REQUIRE(w.size() == 1);
    CHECK(w.at({1, 1, 1}) == 1);
  }
}

TEST_CASE("reduction counters accumulate per top level call") {
  reset_reduction_counters();
  const SimplicialComplex K = build_complex({{1, 2, 3}});
  const BoundaryMatrix D = canonical_matrix(K);
  reduce(D);
  reduce(D);
  relative_reduce(D, std::vector<int>(K.size(), 1));
  const ReductionCounters c = reduction_counters();
  CHECK(c.reduce_calls == 2);
  CHECK(c.relative_reduce_calls == 1);
  CHECK(c.total() == 3);
  reset_reduction_counters();
  CHECK(reduction_counters().total() == 0);
}
