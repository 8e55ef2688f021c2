#include "persistor/persistence_algebra.hpp"

#include <algorithm>
#include <limits>

namespace persistor {

bool interval_less(const BarcodeInterval& a, const BarcodeInterval& b) {
  auto key = [](const BarcodeInterval& x) {
    return std::tuple(x.dim, x.left, static_cast<int>(x.left_kind), x.right,
                      static_cast<int>(x.right_kind), x.mult);
  };
  return key(a) < key(b);
}

std::vector<BarcodeInterval> normalize_intervals(std::vector<BarcodeInterval> bars) {
  std::sort(bars.begin(), bars.end(), interval_less);
  std::vector<BarcodeInterval> out;
  for (auto& b : bars) {
    if (b.mult == 0) continue;
    if (!out.empty()) {
      auto& o = out.back();
      if (o.dim == b.dim && o.left == b.left && o.right == b.right &&
          o.left_kind == b.left_kind && o.right_kind == b.right_kind) {
        o.mult += b.mult;
        continue;
      }
    }
    out.push_back(b);
  }
  return out;
}

bool barcode_multiset_equal(std::vector<BarcodeInterval> a, std::vector<BarcodeInterval> b) {
  return normalize_intervals(std::move(a)) == normalize_intervals(std::move(b));
}

long long beta_from_barcode(const std::vector<PersistencePair>& bars, int r, int i, int j) {
  if (i > j) throw input_error("beta requires i <= j");
  long long n = 0;
  for (const auto& b : bars)
    if (b.dim == r && b.birth <= i && (b.death == k_plus_inf || b.death >= j)) ++n;
  return n;
}

BetaTable beta_from_mu(const MuTable& M) {
  const int m = M.max_dim, P = M.P;
  BetaTable B;
  B.max_dim = m;
  B.P = P;
  B.val.assign(m + 1, std::vector<std::vector<long long>>(
                          P + 1, std::vector<long long>(P + 1, 0)));
  for (int r = 0; r <= m; ++r)
    for (int s = 0; s <= P; ++s)
      for (int t = s; t <= P; ++t) {
        long long v = 0;
        for (int l = 0; l <= s; ++l) {
          for (int mm = t; mm <= P - 1; ++mm)
            if (mm >= l) v += M.fin[r][l][mm];
          v += M.inf[r][l];
        }
        B.val[r][s][t] = v;
      }
  return B;
}

KernelNumbers kernel_numbers(const BetaTable& B) {
  const int m = B.max_dim, P = B.P;
  KernelNumbers K;
  K.max_dim = m;
  K.P = P;
  K.val.assign(m + 1, std::vector<std::vector<long long>>(
                          P + 1, std::vector<long long>(P + 1, 0)));
  K.total.assign(m + 1, std::vector<long long>(P + 1, 0));
  for (int r = 0; r <= m; ++r)
    for (int i = 0; i <= P; ++i) {
      K.total[r][i] = B.beta(r, i, i);
      for (int j = i; j <= P; ++j) {
        long long v = B.beta(r, i, i) - B.beta(r, i, j);
        if (v < 0) throw internal_error("negative kernel number");
        K.val[r][i][j] = v;
      }
    }
  return K;
}

MuTable mu_from_pairs(const std::vector<PersistencePair>& pairs, int max_dim, int P) {
  MuTable M;
  M.max_dim = max_dim;
  M.P = P;
  M.fin.assign(max_dim + 1, std::vector<std::vector<long long>>(
                                P + 1, std::vector<long long>(P, 0)));
  M.inf.assign(max_dim + 1, std::vector<long long>(P + 1, 0));
  for (const auto& b : pairs) {
    if (b.dim > max_dim) continue;
    if (b.death == k_plus_inf)
      M.inf[b.dim][b.birth] += 1;
    else if (b.death <= P - 1)
      M.fin[b.dim][b.birth][b.death] += 1;
    else
      throw internal_error("finite death beyond the last step");
  }
  return M;
}

// ---- exact fields ----------------------------------------------------------

Gf2 operator/(Gf2 a, Gf2 b) {
  if (b.is_zero()) throw internal_error("division by zero in GF(2)");
  return a;
}

namespace {

using int128 = __int128;

long long checked_narrow(int128 v) {
  if (v > static_cast<int128>(std::numeric_limits<long long>::max()) ||
      v < static_cast<int128>(std::numeric_limits<long long>::min()))
    throw internal_error("rational arithmetic overflow");
  return static_cast<long long>(v);
}

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat make_rat(int128 n, int128 d) {
  if (d == 0) throw internal_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.num = checked_narrow(n);
  r.den = checked_narrow(d);
  if (r.den == 0) throw internal_error("zero denominator");
  return r;
}

} // namespace

Rat::Rat(long long n, long long d) { *this = make_rat(n, d); }

Rat operator+(const Rat& a, const Rat& b) {
  return make_rat(static_cast<int128>(a.num) * b.den + static_cast<int128>(b.num) * a.den,
                  static_cast<int128>(a.den) * b.den);
}
Rat operator-(const Rat& a, const Rat& b) {
  return make_rat(static_cast<int128>(a.num) * b.den - static_cast<int128>(b.num) * a.den,
                  static_cast<int128>(a.den) * b.den);
}
Rat operator*(const Rat& a, const Rat& b) {
  return make_rat(static_cast<int128>(a.num) * b.num, static_cast<int128>(a.den) * b.den);
}
Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw internal_error("division by zero");
  return make_rat(static_cast<int128>(a.num) * b.den, static_cast<int128>(a.den) * b.num);
}

template <class F>
FieldMatrix<F> multiply(const FieldMatrix<F>& A, const FieldMatrix<F>& B) {
  if (A.cols != B.rows) throw input_error("matrix shape mismatch");
  FieldMatrix<F> C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      if (A.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        C.at(i, j) = C.at(i, j) + A.at(i, k) * B.at(k, j);
    }
  return C;
}

// ---- module decomposition ---------------------------------------------------

namespace {

template <class F>
std::vector<F> apply_map(const FieldMatrix<F>& A, const std::vector<F>& v) {
  if (A.cols != v.size()) throw internal_error("map/vector shape mismatch");
  std::vector<F> w(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (!A.at(i, j).is_zero() && !v[j].is_zero())
        w[i] = w[i] + A.at(i, j) * v[j];
  return w;
}

template <class F>
bool vec_is_zero(const std::vector<F>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// drop column p (composition with the section of the quotient at the source)
template <class F>
FieldMatrix<F> drop_column(const FieldMatrix<F>& A, std::size_t p) {
  FieldMatrix<F> B(A.rows, A.cols - 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    std::size_t jj = 0;
    for (std::size_t j = 0; j < A.cols; ++j) {
      if (j == p) continue;
      B.at(i, jj++) = A.at(i, j);
    }
  }
  return B;
}

// compose with the quotient by span(v) at the target (pivot row p)
template <class F>
FieldMatrix<F> quotient_rows(const FieldMatrix<F>& A, const std::vector<F>& v, std::size_t p) {
  FieldMatrix<F> W = A;
  for (std::size_t j = 0; j < W.cols; ++j) {
    F factor = W.at(p, j) / v[p];
    if (factor.is_zero()) continue;
    for (std::size_t i = 0; i < W.rows; ++i)
      W.at(i, j) = W.at(i, j) - factor * v[i];
  }
  FieldMatrix<F> B(A.rows - 1, A.cols);
  std::size_t ii = 0;
  for (std::size_t i = 0; i < A.rows; ++i) {
    if (i == p) continue;
    for (std::size_t j = 0; j < A.cols; ++j) B.at(ii, j) = W.at(i, j);
    ++ii;
  }
  return B;
}

} // namespace

template <class F>
std::vector<ModuleInterval> decompose_module(PersistenceModule<F> M) {
  const int S = M.stages();
  if (S == 0) return {};
  if (static_cast<int>(M.maps.size()) != S - 1)
    throw input_error("a module with n stages needs n - 1 maps");
  for (int n = 0; n + 1 < S; ++n)
    if (M.maps[n].rows != static_cast<std::size_t>(M.dims[n + 1]) ||
        M.maps[n].cols != static_cast<std::size_t>(M.dims[n]))
      throw input_error("structure map shape mismatch");

  std::vector<ModuleInterval> bars;
  while (true) {
    int k = -1;
    for (int n = 0; n < S; ++n)
      if (M.dims[n] > 0) {
        k = n;
        break;
      }
    if (k < 0) break;

    // follow e_0 of V_k forward until it dies or the module stabilizes
    std::vector<std::vector<F>> orbit;
    orbit.emplace_back(M.dims[k]);
    orbit.back()[0] = F(1);
    int last_alive = k;
    bool died = false;
    for (int n = k; n + 1 < S; ++n) {
      std::vector<F> w = apply_map(M.maps[n], orbit.back());
      if (vec_is_zero(w)) {
        died = true;
        break;
      }
      orbit.push_back(std::move(w));
      last_alive = n + 1;
    }

    ModuleInterval bar;
    bar.birth = k;
    bar.death = died ? last_alive : k_plus_inf;
    bars.push_back(bar);

    std::vector<std::size_t> pivot(last_alive - k + 1);
    for (int n = k; n <= last_alive; ++n) {
      const auto& v = orbit[n - k];
      std::size_t p = 0;
      while (p < v.size() && v[p].is_zero()) ++p;
      if (p == v.size()) throw internal_error("zero vector in orbit");
      pivot[n - k] = p;
    }

    for (int n = 0; n + 1 < S; ++n) {
      const bool src_q = (k <= n && n <= last_alive);
      const bool dst_q = (k <= n + 1 && n + 1 <= last_alive);
      if (src_q) M.maps[n] = drop_column(M.maps[n], pivot[n - k]);
      if (dst_q) M.maps[n] = quotient_rows(M.maps[n], orbit[n + 1 - k], pivot[n + 1 - k]);
    }
    for (int n = k; n <= last_alive; ++n) M.dims[n] -= 1;
  }

  std::sort(bars.begin(), bars.end(), [](const ModuleInterval& a, const ModuleInterval& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return bars;
}

template std::vector<ModuleInterval> decompose_module<Gf2>(PersistenceModule<Gf2>);
template std::vector<ModuleInterval> decompose_module<Rat>(PersistenceModule<Rat>);
template FieldMatrix<Gf2> multiply<Gf2>(const FieldMatrix<Gf2>&, const FieldMatrix<Gf2>&);
template FieldMatrix<Rat> multiply<Rat>(const FieldMatrix<Rat>&, const FieldMatrix<Rat>&);

} // namespace persistor
