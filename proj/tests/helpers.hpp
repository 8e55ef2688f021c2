#pragma once

// Small builders shared by the unit tests: canned complexes and maps, plus the
// standard reduce-then-read pipeline boiled down to one call.

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "persistor/complex.hpp"
#include "persistor/level.hpp"
#include "persistor/persistence_algebra.hpp"
#include "persistor/reduction.hpp"
#include "persistor/rips.hpp"

namespace persistor::test {

inline std::vector<std::tuple<int, int, int>> bars_of(
    const std::vector<PersistencePair>& pairs) {
  std::vector<std::tuple<int, int, int>> out;
  out.reserve(pairs.size());
  for (const PersistencePair& p : pairs) out.emplace_back(p.dim, p.birth, p.death);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<PersistencePair> elz_pairs(const FilteredComplex& F) {
  const BoundaryMatrix D = boundary_matrix_gf2(F.complex, F.order);
  const ReducedMatrix R = reduce(D);
  const std::size_t n = F.complex.size();
  std::vector<int> f_ord(n), dims(n);
  for (std::size_t p = 0; p < n; ++p) {
    f_ord[p] = F.f_ind[F.order[p]];
    dims[p] = simplex_dim(F.complex.cells[F.order[p]]);
  }
  return barcodes_from_reduced(R, f_ord, dims);
}

inline std::vector<double> identity_values(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return v;
}

inline PLMap map_of(const std::vector<Simplex>& generators,
                    const std::vector<double>& vertex_values) {
  const SimplicialComplex K = build_complex(generators);
  std::vector<std::pair<VertexId, double>> values;
  const std::vector<VertexId> ids = K.vertex_ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    values.emplace_back(ids[i], vertex_values.at(i));
  return check_generic(K, values);
}

// Boundary of the 3-simplex with f(i) = i; the running height-squared example.
inline PLMap f_squared() {
  return map_of({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}, identity_values(4));
}

// Filtration assembled from explicit per-cell steps (canonical cell order).
inline FilteredComplex make_filtered(const SimplicialComplex& K,
                                     const std::vector<int>& f_ind, int P) {
  FilteredComplex F;
  F.complex = K;
  F.f_ind = f_ind;
  F.max_dim = K.dim();
  F.P = P;
  F.schedule.epsiorg.resize(static_cast<std::size_t>(P) + 1);
  F.schedule.epsiavg.resize(static_cast<std::size_t>(P) + 1);
  for (int s = 0; s <= P; ++s) {
    F.schedule.epsiorg[static_cast<std::size_t>(s)] = s;
    F.schedule.epsiavg[static_cast<std::size_t>(s)] = s + 0.5;
  }
  F.order = compatible_ordering(K, f_ind);
  F.dimension.assign(static_cast<std::size_t>(F.max_dim) + 1,
                     std::vector<int>(static_cast<std::size_t>(P) + 1, 0));
  for (std::size_t i = 0; i < K.size(); ++i)
    for (int s = f_ind[i]; s <= P; ++s)
      ++F.dimension[static_cast<std::size_t>(simplex_dim(K.cells[i]))]
                   [static_cast<std::size_t>(s)];
  return F;
}

// Six vertices, nine edges and one triangle with f(i) = i.
inline PLMap wedge_map() {
  return map_of({{1, 2}, {1, 3}, {2, 3}, {2, 4}, {2, 5},
                 {3, 5}, {3, 6}, {4, 5}, {5, 6}, {2, 3, 5}},
                identity_values(6));
}

}  // namespace persistor::test
