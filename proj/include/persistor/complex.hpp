#pragma once

#include "persistor/common.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace persistor {

// Vertices are 1-based integer ids. A simplex is its strictly increasing
// vertex tuple; dimension = size - 1.
using VertexId = int;
using Simplex = std::vector<VertexId>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

// Canonical cell order: dimension first, then lexicographic on vertex tuples.
bool simplex_less(const Simplex& a, const Simplex& b);

// The dim+1 codimension-one faces (empty for vertices), in lex order.
std::vector<Simplex> codim1_faces(const Simplex& s);

struct SimplicialComplex {
  // Face-closed, sorted by (dim, lex), duplicate-free.
  std::vector<Simplex> cells;
  // Whether build_complex had to add missing faces to close the input.
  bool closure_added = false;

  int dim() const;
  std::size_t size() const { return cells.size(); }
  std::vector<VertexId> vertex_ids() const;
  // Index into cells, or nullopt.
  std::optional<std::size_t> index_of(const Simplex& s) const;
  std::vector<std::size_t> cells_of_dim(int r) const;
};

// Validates tuples (nonempty, distinct vertices; input tuples may be unsorted),
// closes under faces, sorts, dedups. Throws input_error on malformed tuples.
SimplicialComplex build_complex(const std::vector<Simplex>& simplex_list);

// Cells of dimension <= m.
SimplicialComplex skeleton(const SimplicialComplex& K, int m);

// GF(2) matrix in sparse column form: each column is the sorted list of
// 0-based row positions with a nonzero entry.
struct BoundaryMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<int>> cols;
};

// position -> cell index into a cell array.
using Ordering = std::vector<std::size_t>;

// Sorts cell indices by (f_ind, dim, lex); throws precondition_error if some
// face would come after a coface (f_ind not monotone under inclusion).
Ordering compatible_ordering(const SimplicialComplex& K, const std::vector<int>& f_ind);

// Full boundary matrix of K with rows/columns in the given ordering
// (square, strictly upper triangular).
BoundaryMatrix boundary_matrix_gf2(const SimplicialComplex& K, const Ordering& order);

// Real boundary operator del_r: C_r -> C_{r-1} over the canonical (dim, lex)
// order. Entry (i, j) is +1 / -1 according to the parity of the position
// (1-based) of the omitted vertex. Shape n_{r-1} x n_r; r outside [0, dim]
// yields the correctly shaped empty matrix.
Eigen::MatrixXd boundary_matrix_real(const SimplicialComplex& K, int r);
// Same, with explicit row/column cell lists (used for filtration-ordered blocks).
Eigen::MatrixXd boundary_matrix_real(const std::vector<Simplex>& rows,
                                     const std::vector<Simplex>& cols);

// ---- cut-cell vocabulary for level persistence ----------------------------

// Levels live on a doubled integer grid: 2k is the k-th critical value t_k
// (k = 1..N), odd values are open midpoints; 0 plays t_0 := t_1 - 1 and
// 2N + 2 would play t_{N+1} := t_N + 1. Grid range used: [-1, 2N+1].
using Level = int;

inline constexpr Level level_critical(int k) { return 2 * k; }
inline constexpr Level level_mid(int k) { return 2 * k + 1; } // midpoint (t_k, t_{k+1})
inline bool level_is_critical(Level g) { return g % 2 == 0; }
inline int level_critical_index(Level g) { return g / 2; } // valid on even g

enum class CellKind { original, level_cut, upper_slab, lower_slab, mid_slab };

// A cell of a cut complex. `base` is the underlying simplex; lo/hi are the
// cut levels involved: level_cut uses lo == hi, upper_slab uses lo (cut
// below), lower_slab uses hi (cut above), mid_slab uses both.
struct Cell {
  CellKind kind = CellKind::original;
  Simplex base;
  Level lo = 0;
  Level hi = 0;

  int dim() const {
    int d = simplex_dim(base);
    return kind == CellKind::level_cut ? d - 1 : d;
  }
  bool operator==(const Cell& o) const {
    return kind == o.kind && base == o.base && lo == o.lo && hi == o.hi;
  }
};

} // namespace persistor
