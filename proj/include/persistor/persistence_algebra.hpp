#pragma once

#include "persistor/hodge.hpp"
#include "persistor/reduction.hpp"

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace persistor {

// ---- interval (bar) vocabulary shared with serialization ------------------

enum class EndKind { closed, open, infinite };

// Endpoints are integers: filtration steps, or critical-value indices for
// level persistence. k_plus_inf / k_minus_inf mark unbounded ends.
struct BarcodeInterval {
  int dim = 0;
  long long left = 0;
  long long right = 0;
  EndKind left_kind = EndKind::closed;
  EndKind right_kind = EndKind::closed;
  long long mult = 1;

  friend bool operator==(const BarcodeInterval&, const BarcodeInterval&) = default;
};

bool interval_less(const BarcodeInterval& a, const BarcodeInterval& b);
// sort + merge equal intervals into multiplicities, dropping mult == 0
std::vector<BarcodeInterval> normalize_intervals(std::vector<BarcodeInterval> bars);
bool barcode_multiset_equal(std::vector<BarcodeInterval> a, std::vector<BarcodeInterval> b);

// ---- numeric tables --------------------------------------------------------

// #bars (step-closed, dims r) containing [i, j]
long long beta_from_barcode(const std::vector<PersistencePair>& bars, int r, int i, int j);

BetaTable beta_from_mu(const MuTable& M);
// k_r(i, j) = beta(i, i) - beta(i, j); k_r(i) = beta(i, i)
struct KernelNumbers {
  int max_dim = 0;
  int P = 0;
  std::vector<std::vector<std::vector<long long>>> val; // [r][i][j], j >= i
  std::vector<std::vector<long long>> total;            // [r][i] = beta(i, i)
  long long k(int r, int i, int j) const { return val[r][i][j]; }
  long long k(int r, int i) const { return total[r][i]; }
};
KernelNumbers kernel_numbers(const BetaTable& B);

MuTable mu_from_pairs(const std::vector<PersistencePair>& pairs, int max_dim, int P);

// ---- exact coefficient fields ----------------------------------------------

struct Gf2 {
  std::uint8_t v = 0;
  Gf2() = default;
  Gf2(int x) : v(static_cast<std::uint8_t>(x & 1)) {}
  friend Gf2 operator+(Gf2 a, Gf2 b) { return Gf2(a.v ^ b.v); }
  friend Gf2 operator-(Gf2 a, Gf2 b) { return Gf2(a.v ^ b.v); }
  friend Gf2 operator*(Gf2 a, Gf2 b) { return Gf2(a.v & b.v); }
  friend Gf2 operator/(Gf2 a, Gf2 b);
  friend bool operator==(Gf2 a, Gf2 b) { return a.v == b.v; }
  bool is_zero() const { return v == 0; }
};

// Rational numbers on int64 with gcd normalization; intermediate products use
// 128-bit arithmetic and overflow raises internal_error.
struct Rat {
  long long num = 0;
  long long den = 1;
  Rat() = default;
  Rat(long long n) : num(n) {}
  Rat(long long n, long long d);
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  bool is_zero() const { return num == 0; }
};

template <class F>
struct FieldMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<F> a; // row major

  FieldMatrix() = default;
  FieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  F& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const F& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  static FieldMatrix identity(std::size_t n) {
    FieldMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) M.at(i, i) = F(1);
    return M;
  }
};

template <class F>
FieldMatrix<F> multiply(const FieldMatrix<F>& A, const FieldMatrix<F>& B);

// ---- persistence modules over a field --------------------------------------

// V_0 -> V_1 -> ... -> V_M, constant (identity) beyond stage M. maps[i] sends
// stage i to stage i + 1 and has shape dims[i+1] x dims[i].
template <class F>
struct PersistenceModule {
  std::vector<int> dims;
  std::vector<FieldMatrix<F>> maps;

  int stages() const { return static_cast<int>(dims.size()); }
};

struct ModuleInterval {
  int birth = 0;
  int death = k_plus_inf; // last stage the class survives, +inf if forever
  friend bool operator==(const ModuleInterval&, const ModuleInterval&) = default;
};

// Constructive interval decomposition: repeatedly pick a vector at the first
// live stage, follow it to its death, emit the interval, quotient it out.
template <class F>
std::vector<ModuleInterval> decompose_module(PersistenceModule<F> M);

extern template std::vector<ModuleInterval> decompose_module<Gf2>(PersistenceModule<Gf2>);
extern template std::vector<ModuleInterval> decompose_module<Rat>(PersistenceModule<Rat>);
extern template FieldMatrix<Gf2> multiply<Gf2>(const FieldMatrix<Gf2>&, const FieldMatrix<Gf2>&);
extern template FieldMatrix<Rat> multiply<Rat>(const FieldMatrix<Rat>&, const FieldMatrix<Rat>&);

} // namespace persistor
