#include "doctest.h"

#include <random>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "persistor/persistence_algebra.hpp"

using namespace persistor;

namespace {

bool mu_equal(const MuTable& a, const MuTable& b) {
  return a.max_dim == b.max_dim && a.P == b.P && a.fin == b.fin && a.inf == b.inf;
}

template <class F>
PersistenceModule<F> conjugate(const PersistenceModule<F>& M,
                               const std::vector<FieldMatrix<F>>& U,
                               const std::vector<FieldMatrix<F>>& U_inv) {
  PersistenceModule<F> out;
  out.dims = M.dims;
  for (std::size_t i = 0; i < M.maps.size(); ++i)
    out.maps.push_back(multiply(multiply(U[i + 1], M.maps[i]), U_inv[i]));
  return out;
}

std::vector<std::pair<int, int>> sorted_intervals(std::vector<ModuleInterval> iv) {
  std::vector<std::pair<int, int>> out;
  for (const ModuleInterval& i : iv) out.emplace_back(i.birth, i.death);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("beta_from_barcode counts containing bars") {
  std::vector<PersistencePair> bars;
  bars.push_back({0, 0, k_plus_inf});
  CHECK(beta_from_barcode(bars, 0, 0, 5) == 1);
  CHECK(beta_from_barcode(bars, 1, 0, 5) == 0);

  bars.clear();
  bars.push_back({0, 0, 2});
  bars.push_back({0, 1, 3});
  CHECK(beta_from_barcode(bars, 0, 1, 2) == 2);
  CHECK(beta_from_barcode(bars, 0, 0, 0) == 1);
  CHECK(beta_from_barcode(bars, 0, 3, 3) == 1);
  CHECK(beta_from_barcode(bars, 0, 0, 3) == 0);
  CHECK_THROWS_AS(beta_from_barcode(bars, 0, 3, 1), input_error);
}

TEST_CASE("beta_from_mu inverts the inclusion-exclusion") {
  SUBCASE("one infinite bar") {
    MuTable M;
    M.max_dim = 0;
    M.P = 3;
    M.fin.assign(1, std::vector<std::vector<long long>>(4, std::vector<long long>(4, 0)));
    M.inf.assign(1, std::vector<long long>(4, 0));
    M.inf[0][0] = 1;
    const BetaTable B = beta_from_mu(M);
    for (int s = 0; s <= 3; ++s)
      for (int t = s; t <= 3; ++t) CHECK(B.beta(0, s, t) == 1);
  }
  SUBCASE("one finite bar of multiplicity three") {
    MuTable M;
    M.max_dim = 0;
    M.P = 3;
    M.fin.assign(1, std::vector<std::vector<long long>>(4, std::vector<long long>(4, 0)));
    M.inf.assign(1, std::vector<long long>(4, 0));
    M.fin[0][1][2] = 3;
    const BetaTable B = beta_from_mu(M);
    CHECK(B.beta(0, 1, 2) == 3);
    CHECK(B.beta(0, 1, 1) == 3);
    CHECK(B.beta(0, 2, 2) == 3);
    CHECK(B.beta(0, 0, 2) == 0);
    CHECK(B.beta(0, 1, 3) == 0);
    CHECK(B.beta(0, 0, 0) == 0);
  }
}

TEST_CASE("mu and beta tables are inverse on random data") {
  std::mt19937 rng(999);
  for (int trial = 0; trial < 200; ++trial) {
    const MuTable M = oracle::random_mu(rng);
    const BetaTable B = beta_from_mu(M);
    CHECK(mu_equal(mu_from_beta(B), M));
  }
}

TEST_CASE("beta -> mu -> beta round trip on rips filtrations") {
  const auto corpus = oracle::rips_corpus(10, 81);
  for (const auto& c : corpus) {
    const BetaTable B = beta_table(real_filtration(rips_from_points(c.X, c.m, c.S)));
    const BetaTable B2 = beta_from_mu(mu_from_beta(B));
    CHECK(B.val == B2.val);
  }
}

TEST_CASE("kernel numbers") {
  SUBCASE("constant filtration kills nothing") {
    const SimplicialComplex K = test::wedge_map().complex;
    const FilteredComplex F =
        test::make_filtered(K, std::vector<int>(K.size(), 0), 2);
    const BetaTable B = beta_table(real_filtration(F));
    const KernelNumbers k = kernel_numbers(B);
    for (int r = 0; r <= 2; ++r)
      for (int i = 0; i <= 2; ++i) {
        CHECK(k.k(r, i) == betti_real(K, r));
        for (int j = i; j <= 2; ++j) CHECK(k.k(r, i, j) == 0);
      }
  }
  SUBCASE("two merging points") {
    const SimplicialComplex K = build_complex({{1, 2}});
    const FilteredComplex F = test::make_filtered(K, {0, 0, 1}, 1);
    const BetaTable B = beta_table(real_filtration(F));
    const KernelNumbers k = kernel_numbers(B);
    CHECK(k.k(0, 0) == 2);
    CHECK(k.k(0, 0, 1) == 1);
    CHECK(k.k(0, 1, 1) == 0);
  }
  SUBCASE("identity k(i, j) = k(i) - beta(i, j) on random filtrations") {
    const auto corpus = oracle::rips_corpus(8, 123);
    for (const auto& c : corpus) {
      const BetaTable B = beta_table(real_filtration(rips_from_points(c.X, c.m, c.S)));
      const KernelNumbers k = kernel_numbers(B);
      for (int r = 0; r <= B.max_dim; ++r)
        for (int i = 0; i <= B.P; ++i)
          for (int j = i; j <= B.P; ++j)
            CHECK(k.k(r, i, j) == k.k(r, i) - B.beta(r, i, j));
    }
  }
}

TEST_CASE("mu_from_pairs aggregates a pair list") {
  std::vector<PersistencePair> pairs;
  pairs.push_back({0, 0, k_plus_inf});
  pairs.push_back({0, 0, 0});
  pairs.push_back({0, 0, 0});
  pairs.push_back({1, 1, 2});
  const MuTable M = mu_from_pairs(pairs, 1, 3);
  CHECK(M.inf[0][0] == 1);
  CHECK(M.fin[0][0][0] == 2);
  CHECK(M.fin[1][1][2] == 1);
  CHECK(M.inf[1][1] == 0);

  std::vector<PersistencePair> bad;
  bad.push_back({0, 0, 3}); // finite death at the last step is impossible
  CHECK_THROWS_AS(mu_from_pairs(bad, 0, 3), internal_error);
}

TEST_CASE("interval normalization and multiset equality") {
  BarcodeInterval a{0, 1, 4, EndKind::closed, EndKind::open, 1};
  BarcodeInterval b = a;
  BarcodeInterval c{1, 0, 0, EndKind::closed, EndKind::infinite, 1};
  const auto merged = normalize_intervals({a, b, c});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].mult == 2);
  CHECK(merged[1].mult == 1);

  BarcodeInterval a2 = a;
  a2.mult = 2;
  CHECK(barcode_multiset_equal({a, b, c}, {a2, c}));
  CHECK(barcode_multiset_equal({}, {}));
  CHECK(!barcode_multiset_equal({a}, {a, c}));
  CHECK(!barcode_multiset_equal({a}, {c}));
  BarcodeInterval zero = c;
  zero.mult = 0;
  CHECK(barcode_multiset_equal({a, zero}, {b}));
}

TEST_CASE("exact field arithmetic") {
  SUBCASE("gf2") {
    CHECK(Gf2(1) + Gf2(1) == Gf2(0));
    CHECK(Gf2(1) * Gf2(1) == Gf2(1));
    CHECK(Gf2(1) / Gf2(1) == Gf2(1));
    CHECK_THROWS_AS(Gf2(1) / Gf2(0), internal_error);
  }
  SUBCASE("rationals normalize") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4).num == -1);
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3) * Rat(3, 5) == Rat(1, 5));
    CHECK(Rat(1, 3) / Rat(2, 3) == Rat(1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK_THROWS_AS(Rat(1, 0), internal_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), internal_error);
  }
  SUBCASE("overflow is detected, not wrapped") {
    const Rat big(3037000500LL); // sqrt(2^63) rounded up
    CHECK_THROWS_AS(big * big, internal_error);
  }
}

TEST_CASE("decompose_module on hand built modules") {
  SUBCASE("identity map is one infinite interval") {
    PersistenceModule<Gf2> M;
    M.dims = {1, 1};
    M.maps = {FieldMatrix<Gf2>::identity(1)};
    const auto iv = decompose_module(M);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0] == ModuleInterval{0, k_plus_inf});
  }
  SUBCASE("zero map splits into two intervals") {
    PersistenceModule<Gf2> M;
    M.dims = {1, 1};
    M.maps = {FieldMatrix<Gf2>(1, 1)};
    const auto iv = sorted_intervals(decompose_module(M));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0] == std::pair<int, int>{0, 0});
    CHECK(iv[1] == std::pair<int, int>{1, k_plus_inf});
  }
  SUBCASE("two points merging") {
    PersistenceModule<Gf2> M;
    M.dims = {2, 1};
    FieldMatrix<Gf2> f(1, 2);
    f.at(0, 0) = Gf2(1);
    f.at(0, 1) = Gf2(1);
    M.maps = {f};
    const auto iv = sorted_intervals(decompose_module(M));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0] == std::pair<int, int>{0, 0});
    CHECK(iv[1] == std::pair<int, int>{0, k_plus_inf});
  }
  SUBCASE("the same module over the rationals") {
    PersistenceModule<Rat> M;
    M.dims = {2, 1};
    FieldMatrix<Rat> f(1, 2);
    f.at(0, 0) = Rat(1);
    f.at(0, 1) = Rat(1);
    M.maps = {f};
    const auto iv = sorted_intervals(decompose_module(M));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0] == std::pair<int, int>{0, 0});
    CHECK(iv[1] == std::pair<int, int>{0, k_plus_inf});
  }
  SUBCASE("empty and zero dimensional modules") {
    PersistenceModule<Gf2> M;
    CHECK(decompose_module(M).empty());
    M.dims = {0, 0};
    M.maps = {FieldMatrix<Gf2>(0, 0)};
    CHECK(decompose_module(M).empty());
  }
  SUBCASE("shape validation") {
    PersistenceModule<Gf2> M;
    M.dims = {1, 1};
    CHECK_THROWS_AS(decompose_module(M), input_error);
    M.maps = {FieldMatrix<Gf2>(2, 1)};
    CHECK_THROWS_AS(decompose_module(M), input_error);
  }
}

TEST_CASE("decompose_module recovers the elz bars of homology modules") {
  const auto corpus = oracle::rips_corpus(12, 7000);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    const auto pairs = test::elz_pairs(F);
    for (int r = 0; r < c.m; ++r) {
      const PersistenceModule<Gf2> M = oracle::homology_module_gf2(F, r);
      std::vector<std::pair<int, int>> want;
      for (const auto& p : pairs)
        if (p.dim == r) want.emplace_back(p.birth, p.death);
      std::sort(want.begin(), want.end());
      CHECK(sorted_intervals(decompose_module(M)) == want);
    }
  }
}

TEST_CASE("decompose_module is invariant under change of basis") {
  std::mt19937 rng(424242);
  const auto corpus = oracle::rips_corpus(6, 31337);
  for (const auto& c : corpus) {
    const FilteredComplex F = rips_from_points(c.X, c.m, c.S);
    for (int r = 0; r < c.m; ++r) {
      const PersistenceModule<Gf2> M = oracle::homology_module_gf2(F, r);
      std::vector<FieldMatrix<Gf2>> U, U_inv;
      for (int d : M.dims) {
        U.push_back(oracle::random_invertible_gf2(rng, static_cast<std::size_t>(d)));
        U_inv.push_back(oracle::invert_gf2(U.back()));
      }
      const PersistenceModule<Gf2> M2 = conjugate(M, U, U_inv);
      CHECK(sorted_intervals(decompose_module(M2)) ==
            sorted_intervals(decompose_module(M)));
    }
  }
}
