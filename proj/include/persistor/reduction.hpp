#pragma once

#include "persistor/complex.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace persistor {

struct ReducedMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<int>> cols; // sorted row indices
  std::vector<int> low;               // max row index, -1 for zero columns
  // change-of-basis columns of V (R = D * V), tracked on request
  std::vector<std::vector<int>> v;

  bool is_zero(std::size_t j) const { return cols[j].empty(); }
};

// Standard column reduction: sweep left to right, repeatedly add the earlier
// column sharing the current column's low. Postcondition: nonzero columns
// have pairwise distinct lows.
ReducedMatrix reduce(const BoundaryMatrix& D, bool track_v = false);

bool is_reduced(const std::vector<std::vector<int>>& cols);

// GF(2) column addition (symmetric difference of sorted index sets).
void gf2_add_into(const std::vector<int>& src, std::vector<int>& dst);

// Instrumentation. Every top-level reduction pass increments its counter;
// used to audit the per-method reduction budgets.
struct ReductionCounters {
  long long reduce_calls = 0;
  long long reduce_level_calls = 0;
  long long relative_reduce_calls = 0;
  long long total() const { return reduce_calls + reduce_level_calls + relative_reduce_calls; }
};
ReductionCounters reduction_counters();
void reset_reduction_counters();
void count_reduce_call();       // internal
void count_reduce_level_call(); // internal
void count_relative_call();     // internal

// b_k = #(zero columns of k-cells) - #(nonzero columns of (k+1)-cells).
// cell_dim[j] = dimension of the cell behind column j. Throws internal_error
// on a negative count.
std::vector<long long> betti_from_reduced(const ReducedMatrix& R,
                                          const std::vector<int>& cell_dim);

struct PersistencePair {
  int dim = 0;
  int birth = 0;          // step index
  int death = k_plus_inf; // step index of the last step the class exists, or +inf
};

// Reads step-indexed bars [f(j), f(k)-1] / [f(j), inf] off a reduced matrix.
// f_ind[j] = filtration step of the cell behind column j (nondecreasing not
// required, but a pairing with f(k) < f(j) is rejected as an ordering error).
std::vector<PersistencePair> barcodes_from_reduced(const ReducedMatrix& R,
                                                   const std::vector<int>& f_ind,
                                                   const std::vector<int>& cell_dim);

// Relative reduction for a I | II | III grouped matrix (X0, X- \ X0, X+ \ X0).
// Group II columns only ever receive additions from I and II, group III only
// from I and III; this is ELZ run on the two overlapping submatrices at once.
struct RelativeReducedMatrix {
  ReducedMatrix R;
  std::vector<int> group; // 1, 2 or 3 per column
};
RelativeReducedMatrix relative_reduce(const BoundaryMatrix& D, const std::vector<int>& group);

// w_r(i, j): the number of columns k of r-cells in group I that are zero in R
// and are the low of both a group-II column born at X- step i and a group-III
// column born at X+ step j. step_minus / step_plus give those step indices per
// column (ignored outside their group).
std::map<std::tuple<int, int, int>, long long>
simultaneous_numbers(const RelativeReducedMatrix& RR, const std::vector<int>& cell_dim,
                     const std::vector<int>& step_minus, const std::vector<int>& step_plus);

} // namespace persistor
