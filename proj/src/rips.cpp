#include "persistor/rips.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace persistor {

DistanceMatrix distance_matrix(const PointCloud& X) {
  if (X.empty()) throw input_error("empty point cloud");
  const std::size_t d = X[0].size();
  if (d == 0) throw input_error("points must have at least one coordinate");
  for (const auto& p : X)
    if (p.size() != d) throw input_error("points have inconsistent dimensions");

  DistanceMatrix D;
  D.n = X.size();
  D.upper.reserve(D.n * (D.n - 1) / 2);
  for (std::size_t i = 0; i < D.n; ++i) {
    for (std::size_t j = i + 1; j < D.n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < d; ++k) {
        double t = X[i][k] - X[j][k];
        s += t * t;
      }
      double dist = std::sqrt(s);
      if (dist == 0.0)
        throw precondition_error("coincident points at indices " + std::to_string(i) +
                                 " and " + std::to_string(j));
      D.upper.push_back(dist);
    }
  }
  return D;
}

std::vector<double> merged_distances(const DistanceMatrix& D, const ScaleConfig& cfg) {
  std::vector<double> ds = D.upper;
  std::sort(ds.begin(), ds.end());
  std::vector<double> merged;
  if (ds.empty()) return merged;
  const double window = 3.0 * ds.back() * cfg.merge_eps;
  for (double v : ds) {
    if (merged.empty() || v - merged.back() >= window)
      merged.push_back(v);
    // values inside the window collapse onto the group's smallest member
  }
  return merged;
}

PointCloud scale_points(const PointCloud& X, const ScaleConfig& cfg) {
  DistanceMatrix D = distance_matrix(X);
  std::vector<double> merged = merged_distances(D, cfg);
  if (merged.empty()) return X; // single point

  double gap = merged.front(); // gap from eps_0 = 0 to the smallest distance
  for (std::size_t i = 1; i < merged.size(); ++i)
    gap = std::min(gap, merged[i] - merged[i - 1]);
  if (gap > cfg.min_gap) return X;

  const double c = cfg.target_gap / gap;
  PointCloud Y = X;
  for (auto& p : Y)
    for (auto& x : p) x *= c;
  return Y;
}

CappedSchedule epsilon_schedule(const DistanceMatrix& D, int S) {
  if (S < 0) throw input_error("step cap must be nonnegative");
  std::vector<double> merged = merged_distances(D);

  CappedSchedule out;
  auto& eo = out.schedule.epsiorg;
  auto& ea = out.schedule.epsiavg;
  eo.push_back(0.0);
  eo.insert(eo.end(), merged.begin(), merged.end());
  const int N = static_cast<int>(merged.size());
  for (int i = 0; i < N; ++i) ea.push_back((eo[i] + eo[i + 1]) / 2.0);
  ea.push_back(eo[N] + 0.5);

  out.P = std::min(S, N);
  out.eps_p = eo[out.P];
  return out;
}

namespace {

// Cliques through the newly added edge, all other pairs already present.
void extend_clique(const std::vector<std::vector<char>>& present, Simplex& clique,
                   const std::vector<int>& candidates, std::size_t from, int max_dim,
                   int step, std::map<Simplex, int>& found) {
  for (std::size_t a = from; a < candidates.size(); ++a) {
    int k = candidates[a];
    clique.push_back(k + 1); // 1-based vertex ids
    Simplex sorted = clique;
    std::sort(sorted.begin(), sorted.end());
    found.emplace(std::move(sorted), step);
    if (simplex_dim(clique) < max_dim) {
      std::vector<int> next;
      for (std::size_t b = a + 1; b < candidates.size(); ++b)
        if (present[k][candidates[b]]) next.push_back(candidates[b]);
      if (!next.empty()) extend_clique(present, clique, next, 0, max_dim, step, found);
    }
    clique.pop_back();
  }
}

} // namespace

FilteredComplex rips_filtration(const DistanceMatrix& D, int m, int P,
                                const EpsilonSchedule& schedule) {
  if (m < 0) throw input_error("max dimension must be nonnegative");
  if (P < 0 || P > schedule.n_values()) throw input_error("invalid step cap");
  const int n = static_cast<int>(D.n);

  struct Edge {
    int step, i, j;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dist = D(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      auto it = std::lower_bound(schedule.epsiavg.begin(), schedule.epsiavg.end(), dist);
      int step = static_cast<int>(it - schedule.epsiavg.begin());
      if (step > schedule.n_values())
        throw internal_error("distance beyond the epsilon schedule");
      if (step <= P) edges.push_back({step, i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.step != b.step) return a.step < b.step;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::map<Simplex, int> found; // simplex -> f_ind
  for (int v = 0; v < n; ++v) found.emplace(Simplex{v + 1}, 0);

  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  for (const Edge& e : edges) {
    if (m >= 1) {
      found.emplace(Simplex{e.i + 1, e.j + 1}, e.step);
      if (m >= 2) {
        std::vector<int> common;
        for (int k = 0; k < n; ++k)
          if (present[e.i][k] && present[e.j][k]) common.push_back(k);
        Simplex clique{e.i + 1, e.j + 1};
        extend_clique(present, clique, common, 0, m, e.step, found);
      }
    }
    present[e.i][e.j] = present[e.j][e.i] = 1;
  }

  FilteredComplex F;
  F.max_dim = m;
  F.P = P;
  F.schedule = schedule;
  for (auto& [s, step] : found) F.complex.cells.push_back(s);
  std::sort(F.complex.cells.begin(), F.complex.cells.end(), simplex_less);
  F.f_ind.resize(F.complex.cells.size());
  for (std::size_t i = 0; i < F.complex.cells.size(); ++i)
    F.f_ind[i] = found.at(F.complex.cells[i]);

  F.order = compatible_ordering(F.complex, F.f_ind);
  F.dimension.assign(static_cast<std::size_t>(m) + 1, std::vector<int>(P + 1, 0));
  for (std::size_t i = 0; i < F.complex.cells.size(); ++i) {
    int r = simplex_dim(F.complex.cells[i]);
    for (int s = F.f_ind[i]; s <= P; ++s) F.dimension[r][s] += 1;
  }
  return F;
}

std::vector<Simplex> FilteredComplex::cells_of_dim_ordered(int r) const {
  std::vector<Simplex> out;
  for (std::size_t p : order)
    if (simplex_dim(complex.cells[p]) == r) out.push_back(complex.cells[p]);
  return out;
}

std::vector<int> FilteredComplex::f_ind_of_dim_ordered(int r) const {
  std::vector<int> out;
  for (std::size_t p : order)
    if (simplex_dim(complex.cells[p]) == r) out.push_back(f_ind[p]);
  return out;
}

FilteredComplex rips_from_points(const PointCloud& X, int m, int S, const ScaleConfig& cfg) {
  PointCloud Y = scale_points(X, cfg);
  DistanceMatrix D = distance_matrix(Y);
  CappedSchedule capped = epsilon_schedule(D, S);
  return rips_filtration(D, m, capped.P, capped.schedule);
}

} // namespace persistor
