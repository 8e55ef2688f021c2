#include "persistor/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <set>

namespace persistor {

namespace {
std::atomic<long long> g_reduce_calls{0};
std::atomic<long long> g_reduce_level_calls{0};
std::atomic<long long> g_relative_calls{0};
} // namespace

ReductionCounters reduction_counters() {
  ReductionCounters c;
  c.reduce_calls = g_reduce_calls.load();
  c.reduce_level_calls = g_reduce_level_calls.load();
  c.relative_reduce_calls = g_relative_calls.load();
  return c;
}

void reset_reduction_counters() {
  g_reduce_calls = 0;
  g_reduce_level_calls = 0;
  g_relative_calls = 0;
}

void count_reduce_call() { ++g_reduce_calls; }
void count_reduce_level_call() { ++g_reduce_level_calls; }
void count_relative_call() { ++g_relative_calls; }

void gf2_add_into(const std::vector<int>& src, std::vector<int>& dst) {
  std::vector<int> out;
  out.reserve(src.size() + dst.size());
  std::set_symmetric_difference(src.begin(), src.end(), dst.begin(), dst.end(),
                                std::back_inserter(out));
  dst = std::move(out);
}

bool is_reduced(const std::vector<std::vector<int>>& cols) {
  std::set<int> lows;
  for (const auto& c : cols) {
    if (c.empty()) continue;
    if (!lows.insert(c.back()).second) return false;
  }
  return true;
}

ReducedMatrix reduce(const BoundaryMatrix& D, bool track_v) {
  count_reduce_call();
  const std::size_t n = D.cols.size();
  ReducedMatrix R;
  R.rows = D.rows;
  R.cols = D.cols;
  R.low.assign(n, -1);
  if (track_v) {
    R.v.resize(n);
    for (std::size_t j = 0; j < n; ++j) R.v[j] = {static_cast<int>(j)};
  }

  // low -> column index owning it
  std::vector<int> owner(D.rows, -1);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = R.cols[j];
    while (!col.empty() && owner[col.back()] >= 0) {
      const int j0 = owner[col.back()];
      gf2_add_into(R.cols[j0], col);
      if (track_v) gf2_add_into(R.v[j0], R.v[j]);
    }
    if (!col.empty()) {
      R.low[j] = col.back();
      owner[col.back()] = static_cast<int>(j);
    }
  }
  if (!is_reduced(R.cols)) throw internal_error("reduce postcondition failed");
  return R;
}

std::vector<long long> betti_from_reduced(const ReducedMatrix& R,
                                          const std::vector<int>& cell_dim) {
  if (cell_dim.size() != R.cols.size())
    throw input_error("cell_dim size does not match column count");
  int max_dim = -1;
  for (int d : cell_dim) max_dim = std::max(max_dim, d);
  std::vector<long long> betti(static_cast<std::size_t>(max_dim) + 1, 0);
  for (std::size_t j = 0; j < R.cols.size(); ++j) {
    if (R.is_zero(j))
      betti[cell_dim[j]] += 1;
    else if (cell_dim[j] >= 1)
      betti[cell_dim[j] - 1] -= 1;
  }
  for (std::size_t r = 0; r < betti.size(); ++r)
    if (betti[r] < 0)
      throw internal_error("negative Betti number in dimension " + std::to_string(r));
  return betti;
}

std::vector<PersistencePair> barcodes_from_reduced(const ReducedMatrix& R,
                                                   const std::vector<int>& f_ind,
                                                   const std::vector<int>& cell_dim) {
  const std::size_t n = R.cols.size();
  if (f_ind.size() != n || cell_dim.size() != n)
    throw input_error("metadata size does not match column count");

  std::vector<int> killer(n, -1); // j -> column whose low is j
  for (std::size_t k = 0; k < n; ++k)
    if (!R.is_zero(k)) killer[R.low[k]] = static_cast<int>(k);

  std::vector<PersistencePair> bars;
  for (std::size_t j = 0; j < n; ++j) {
    if (!R.is_zero(j)) continue;
    PersistencePair bar;
    bar.dim = cell_dim[j];
    bar.birth = f_ind[j];
    const int k = killer[j];
    if (k < 0) {
      bar.death = k_plus_inf;
    } else {
      if (f_ind[k] < f_ind[j])
        throw precondition_error("pairing against an earlier filtration step");
      if (f_ind[k] == f_ind[j]) continue; // born and killed within one step
      bar.death = f_ind[k] - 1;
    }
    bars.push_back(bar);
  }
  return bars;
}

RelativeReducedMatrix relative_reduce(const BoundaryMatrix& D, const std::vector<int>& group) {
  count_relative_call();
  const std::size_t n = D.cols.size();
  if (group.size() != n) throw input_error("group size does not match column count");
  for (int g : group)
    if (g < 1 || g > 3) throw input_error("column group must be 1, 2 or 3");
  RelativeReducedMatrix RR;
  RR.group = group;
  ReducedMatrix& R = RR.R;
  R.rows = D.rows;
  R.cols = D.cols;
  R.low.assign(n, -1);

  // Two pairing tables: group II columns reduce against I and II, group III
  // against I and III. A group-I column registers in both.
  std::vector<int> owner_minus(D.rows, -1), owner_plus(D.rows, -1);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = R.cols[j];
    std::vector<int>& owner = (group[j] == 3) ? owner_plus : owner_minus;
    while (!col.empty() && owner[col.back()] >= 0)
      gf2_add_into(R.cols[owner[col.back()]], col);
    if (!col.empty()) {
      R.low[j] = col.back();
      if (group[j] == 1) {
        owner_minus[col.back()] = static_cast<int>(j);
        owner_plus[col.back()] = static_cast<int>(j);
      } else {
        owner[col.back()] = static_cast<int>(j);
      }
    }
  }

  std::vector<std::vector<int>> sub_minus, sub_plus;
  for (std::size_t j = 0; j < n; ++j) {
    if (group[j] != 3) sub_minus.push_back(R.cols[j]);
    if (group[j] != 2) sub_plus.push_back(R.cols[j]);
  }
  if (!is_reduced(sub_minus) || !is_reduced(sub_plus))
    throw internal_error("relative_reduce postcondition failed");
  return RR;
}

std::map<std::tuple<int, int, int>, long long>
simultaneous_numbers(const RelativeReducedMatrix& RR, const std::vector<int>& cell_dim,
                     const std::vector<int>& step_minus, const std::vector<int>& step_plus) {
  const ReducedMatrix& R = RR.R;
  const std::size_t n = R.cols.size();
  std::vector<int> minus_killer(n, -1), plus_killer(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    if (R.is_zero(k)) continue;
    if (RR.group[k] == 2) minus_killer[R.low[k]] = static_cast<int>(k);
    if (RR.group[k] == 3) plus_killer[R.low[k]] = static_cast<int>(k);
  }

  std::map<std::tuple<int, int, int>, long long> omega;
  for (std::size_t j = 0; j < n; ++j) {
    if (RR.group[j] != 1 || !R.is_zero(j)) continue;
    const int km = minus_killer[j], kp = plus_killer[j];
    if (km < 0 || kp < 0) continue;
    omega[{cell_dim[j], step_minus[km], step_plus[kp]}] += 1;
  }
  return omega;
}

} // namespace persistor
