#include "persistor/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace persistor {

bool simplex_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Simplex> codim1_faces(const Simplex& s) {
  std::vector<Simplex> faces;
  if (s.size() < 2) return faces;
  faces.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != k) f.push_back(s[i]);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

int SimplicialComplex::dim() const {
  return cells.empty() ? -1 : simplex_dim(cells.back());
}

std::vector<VertexId> SimplicialComplex::vertex_ids() const {
  std::vector<VertexId> ids;
  for (const auto& c : cells) {
    if (simplex_dim(c) > 0) break;
    ids.push_back(c[0]);
  }
  return ids;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), s, simplex_less);
  if (it != cells.end() && *it == s)
    return static_cast<std::size_t>(it - cells.begin());
  return std::nullopt;
}

std::vector<std::size_t> SimplicialComplex::cells_of_dim(int r) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (simplex_dim(cells[i]) == r) idx.push_back(i);
  return idx;
}

SimplicialComplex build_complex(const std::vector<Simplex>& simplex_list) {
  std::set<Simplex> closed;
  std::vector<Simplex> stack;
  for (const auto& raw : simplex_list) {
    if (raw.empty()) throw input_error("empty simplex in input");
    Simplex s = raw;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw input_error("simplex with repeated vertex in input");
    if (s.front() < 1) throw input_error("vertex ids must be positive");
    stack.push_back(std::move(s));
  }

  std::set<Simplex> given(stack.begin(), stack.end());
  bool added = false;
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    if (!closed.insert(s).second) continue;
    if (given.find(s) == given.end()) added = true;
    for (auto& f : codim1_faces(s)) stack.push_back(std::move(f));
  }

  SimplicialComplex K;
  K.cells.assign(closed.begin(), closed.end());
  std::sort(K.cells.begin(), K.cells.end(), simplex_less);
  K.closure_added = added;
  return K;
}

SimplicialComplex skeleton(const SimplicialComplex& K, int m) {
  SimplicialComplex out;
  for (const auto& c : K.cells)
    if (simplex_dim(c) <= m) out.cells.push_back(c);
  out.closure_added = K.closure_added;
  return out;
}

Ordering compatible_ordering(const SimplicialComplex& K, const std::vector<int>& f_ind) {
  if (f_ind.size() != K.cells.size())
    throw input_error("f_ind size does not match cell count");
  Ordering order(K.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (f_ind[a] != f_ind[b]) return f_ind[a] < f_ind[b];
    return simplex_less(K.cells[a], K.cells[b]);
  });
  for (std::size_t i = 0; i < K.cells.size(); ++i) {
    for (const auto& f : codim1_faces(K.cells[i])) {
      auto fi = K.index_of(f);
      if (!fi) throw precondition_error("complex is not face-closed");
      if (f_ind[*fi] > f_ind[i])
        throw precondition_error("filtration values not monotone under inclusion");
    }
  }
  return order;
}

BoundaryMatrix boundary_matrix_gf2(const SimplicialComplex& K, const Ordering& order) {
  const std::size_t n = K.cells.size();
  if (order.size() != n) throw input_error("ordering size mismatch");
  std::vector<int> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[order[p]] = static_cast<int>(p);

  BoundaryMatrix D;
  D.rows = n;
  D.cols.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Simplex& s = K.cells[order[p]];
    std::vector<int>& col = D.cols[p];
    for (const auto& f : codim1_faces(s)) {
      auto fi = K.index_of(f);
      if (!fi) throw precondition_error("complex is not face-closed");
      col.push_back(pos[*fi]);
    }
    std::sort(col.begin(), col.end());
    if (!col.empty() && col.back() >= static_cast<int>(p))
      throw internal_error("boundary matrix not strictly upper triangular");
  }
  return D;
}

Eigen::MatrixXd boundary_matrix_real(const std::vector<Simplex>& rows,
                                     const std::vector<Simplex>& cols) {
  std::map<Simplex, int> row_pos;
  for (std::size_t i = 0; i < rows.size(); ++i)
    row_pos[rows[i]] = static_cast<int>(i);

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                            static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Simplex& s = cols[j];
    if (s.size() == 1) continue; // vertices have zero boundary
    for (std::size_t k = 0; k < s.size(); ++k) {
      Simplex f;
      f.reserve(s.size() - 1);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != k) f.push_back(s[i]);
      auto it = row_pos.find(f);
      if (it == row_pos.end()) throw precondition_error("face missing from row list");
      // omitted vertex at 1-based position k+1: odd -> +1, even -> -1
      D(it->second, static_cast<Eigen::Index>(j)) = (k % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return D;
}

Eigen::MatrixXd boundary_matrix_real(const SimplicialComplex& K, int r) {
  std::vector<Simplex> rows, cols;
  for (const auto& c : K.cells) {
    if (simplex_dim(c) == r - 1) rows.push_back(c);
    if (simplex_dim(c) == r) cols.push_back(c);
  }
  return boundary_matrix_real(rows, cols);
}

} // namespace persistor
