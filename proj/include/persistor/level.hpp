#pragma once

#include "persistor/persistence_algebra.hpp"
#include "persistor/reduction.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace persistor {

// A generic PL map: distinct values on the vertices, extended linearly.
// Vertices are relabeled by rank, so vertex of rank k has critical value
// critical[k] (t_k), k = 1..N. Levels use the doubled grid from complex.hpp.
struct PLMap {
  SimplicialComplex complex;
  int N = 0;
  std::vector<double> critical;    // [1..N], index 0 unused
  std::map<VertexId, int> rank_of; // vertex id -> rank
  std::vector<VertexId> vertex_at; // [1..N] rank -> vertex id
  std::vector<Level> tmin, tmax;   // doubled, per cell of complex.cells

  int dim() const { return complex.dim(); }
  bool crosses(std::size_t cell, Level g) const { return tmin[cell] < g && g < tmax[cell]; }
};

// Validates "one distinct value per vertex" and assembles the PLMap.
PLMap check_generic(const SimplicialComplex& K,
                    const std::vector<std::pair<VertexId, double>>& values);

// A cut complex: cells with a fixed column order and the GF(2) boundary.
struct CutComplex {
  std::vector<Cell> cells;
  std::vector<int> dim;     // geometric dimension per cell
  std::vector<Level> tmin;  // of the base simplex, doubled
  std::vector<Level> tmax;
  BoundaryMatrix boundary;
  // first/second column block sizes: level cells of X_s / X_t for slabs,
  // |P1|+|P2| (or |N1|+|N2|) for the positive/negative orders
  std::size_t block1 = 0;
  std::size_t block2 = 0;
  std::array<std::size_t, 5> class_sizes{}; // P1..P5 / N1..N5 when applicable
};

// X_t for t on the doubled grid; pre: 2 <= g <= 2N.
CutComplex level_complex(const PLMap& f, Level g);
// X_{s,t}; s == t degenerates to level_complex. t_first swaps the two level
// blocks (X_t cells first), used by Method 1's second reading.
CutComplex slab_complex(const PLMap& f, Level s, Level t, bool t_first = false);
// Y_{s,t}: cells of X_{s,inf} with t_max <= t; pre: s < t.
CutComplex y_complex(const PLMap& f, Level s, Level t);

// Column orders for X_{i,inf} / X_{-inf,i}. Cells must arrive with the
// P1/P2 (resp. N1/N2) prefix first; the prefix stays unmoved and the rest is
// permuted by t_max ascending (resp. t_min descending), ties broken by the
// initial order of the base simplex.
Ordering positive_order(const PLMap& f, Level g, const std::vector<Cell>& cells);
Ordering negative_order(const PLMap& f, Level g, const std::vector<Cell>& cells);

// X_{i,inf} in positive order with classes P1..P5, and X_{-inf,i} in negative
// order with N1..N5. block1 = |P1| + |P2| (resp. |N1| + |N2|).
CutComplex build_boundary_plus(const PLMap& f, Level g);
CutComplex build_boundary_minus(const PLMap& f, Level g);

// Left-to-right propagation variant of the column reduction; asserts the
// reduced postcondition and falls back to the standard sweep when violated.
ReducedMatrix reduce_level(const BoundaryMatrix& D);

// One end of a positive (resp. negative) bar at a level: the other end is the
// level itself. end is a doubled level or +-inf.
struct HalfBar {
  int dim = 0;
  std::size_t col = 0; // generator column in the P1/P2 prefix
  Level end = 0;
  friend bool operator==(const HalfBar&, const HalfBar&) = default;
};

std::vector<HalfBar> read_positive_barcode(const CutComplex& X, const ReducedMatrix& R);
std::vector<HalfBar> read_negative_barcode(const CutComplex& X, const ReducedMatrix& R);

// A class of the level that dies in one of the two reductions: the cycle is
// the reduced killer column, supported entirely on level cells, and it bounds
// once the slab reaches `end`. The vectors with end <= t (resp. >= t) span the
// kernel of H(X_g) -> H(slab to t) on that side.
struct KernelVec {
  int dim = 0;
  Level end = 0;
  std::vector<int> cells;
};

struct PosNegBarcodes {
  Level level = 0;
  // aligned by generator column: positive[k] and negative[k] are paired
  std::vector<HalfBar> positive, negative;
  std::vector<KernelVec> pos_kernel, neg_kernel;
  // the level cells themselves: dimensions and raw boundary columns, so that
  // kernel ranks can be taken modulo boundaries of the level
  std::vector<int> prefix_dim;
  std::vector<std::vector<int>> prefix_bnd;
};

// Runs both reductions at level g and pairs the bars by generator column.
PosNegBarcodes posneg_at_level(const PLMap& f, Level g);

// Relevant persistence numbers. Rows exist for whichever grid levels were
// supplied; l / l+ / l- / e are answered from the stored bar ends.
struct RelevantNumbers {
  struct Row {
    // per dimension: ends of positive / negative bars (doubled, +-inf)
    std::vector<std::vector<Level>> pos_ends, neg_ends;
    // kernel spans of the two slab directions and the boundary columns of
    // the level, per dimension; e is a rank of these, not a pair count: the
    // column-aligned pairing of the two readings is a basis artifact and can
    // attach the wrong ends to each other
    std::vector<std::vector<std::pair<Level, std::vector<int>>>> pos_vecs, neg_vecs;
    std::vector<std::vector<std::vector<int>>> bnd;
  };
  int N = 0;
  int max_dim = 0;
  std::map<Level, Row> rows;
  // i_r at critical pairs (k, j), filled by i_numbers_method2
  std::map<std::pair<int, int>, std::vector<long long>> i_crit;
  // betti numbers of the regular level between t_k and t_{k+1}, keyed by k;
  // needed to count bars confined to a single open critical interval
  std::map<int, std::vector<long long>> mid_l;

  bool has_row(Level g) const { return rows.count(g) > 0; }
  long long l(int r, Level g) const;
  long long lplus(int r, Level g, int j) const;  // #pos ends <= 2j
  long long lminus(int r, Level g, int k) const; // #neg ends >= 2k
  // dim of the intersection of the two kernels: classes dying upward by t_j
  // and downward by t_k
  long long e(int r, Level g, int j, int k) const;
};

RelevantNumbers relevant_from_posneg(const PLMap& f,
                                     const std::map<Level, PosNegBarcodes>& codes);

// i_r(s, t) over the full doubled grid [-1, 2N+1].
struct IGrid {
  int N = 0;
  int max_dim = 0;
  std::vector<std::vector<std::vector<long long>>> v; // [r][g_s + 1][g_t + 1]

  long long at(int r, Level gs, Level gt) const { return v[r][gs + 1][gt + 1]; }
  long long& at(int r, Level gs, Level gt) { return v[r][gs + 1][gt + 1]; }
  friend bool operator==(const IGrid&, const IGrid&) = default;
};

IGrid i_numbers_method1(const PLMap& f);
// Fills rel.i_crit with one joint reduction per critical pair, then completes
// the grid by containment counting over the derived level bars.
IGrid i_numbers_method2(const PLMap& f, RelevantNumbers& rel);

enum class LevelBarKind { open_open, open_closed, closed_open, closed_closed };

struct LevelBarcode {
  int N = 0;
  int max_dim = 0;
  // counts[kind][r][i][j], critical indices 1 <= i <= j <= N
  std::array<std::vector<std::vector<std::vector<long long>>>, 4> counts;

  long long count(LevelBarKind k, int r, int i, int j) const;
  void add(LevelBarKind k, int r, int i, int j, long long mult);
  std::vector<BarcodeInterval> to_intervals() const;
  friend bool operator==(const LevelBarcode&, const LevelBarcode&) = default;
};

LevelBarcode level_barcodes_from_i(const IGrid& G);
// rel must carry i_crit (set by i_numbers_method2) and rows at least at the
// critical levels; midpoint rows are used for the open-open counts when
// present, otherwise the equivalent critical-level evaluation is used.
LevelBarcode level_barcodes_from_relevant(const RelevantNumbers& rel);

// Sub-level bar multiplicities over critical values: fin[r][i][j] counts
// bars [t_i, t_j), inf[r][i] counts bars [t_i, inf).
struct SublevelMu {
  int N = 0;
  int max_dim = 0;
  std::vector<std::vector<std::vector<long long>>> fin; // [r][i][j], i < j
  std::vector<std::vector<long long>> inf;              // [r][i]
  friend bool operator==(const SublevelMu&, const SublevelMu&) = default;
};

SublevelMu sublevel_from_level(const LevelBarcode& L);
SublevelMu sublevel_barcodes_direct(const PLMap& f);

} // namespace persistor
