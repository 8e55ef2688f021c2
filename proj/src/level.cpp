#include "persistor/level.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace persistor {

PLMap check_generic(const SimplicialComplex& K,
                    const std::vector<std::pair<VertexId, double>>& values) {
  if (K.cells.empty()) throw input_error("empty complex");
  std::vector<VertexId> verts = K.vertex_ids();

  std::map<VertexId, double> val;
  for (const auto& [id, v] : values)
    if (!val.emplace(id, v).second)
      throw input_error("vertex " + std::to_string(id) + " listed twice in values");
  for (VertexId id : verts)
    if (!val.count(id))
      throw input_error("missing value for vertex " + std::to_string(id));
  if (val.size() != verts.size())
    throw input_error("values given for vertices not in the complex");

  std::vector<std::pair<double, VertexId>> by_value;
  for (VertexId id : verts) by_value.emplace_back(val[id], id);
  std::sort(by_value.begin(), by_value.end());
  for (std::size_t i = 1; i < by_value.size(); ++i)
    if (by_value[i].first == by_value[i - 1].first)
      throw precondition_error("non-generic map: vertices " +
                               std::to_string(by_value[i - 1].second) + " and " +
                               std::to_string(by_value[i].second) + " share a value");

  PLMap f;
  f.complex = K;
  f.N = static_cast<int>(verts.size());
  f.critical.assign(f.N + 1, 0.0);
  f.vertex_at.assign(f.N + 1, 0);
  for (int k = 1; k <= f.N; ++k) {
    f.critical[k] = by_value[k - 1].first;
    f.vertex_at[k] = by_value[k - 1].second;
    f.rank_of[by_value[k - 1].second] = k;
  }
  f.tmin.resize(K.cells.size());
  f.tmax.resize(K.cells.size());
  for (std::size_t i = 0; i < K.cells.size(); ++i) {
    int lo = f.N + 1, hi = 0;
    for (VertexId v : K.cells[i]) {
      int rk = f.rank_of.at(v);
      lo = std::min(lo, rk);
      hi = std::max(hi, rk);
    }
    f.tmin[i] = level_critical(lo);
    f.tmax[i] = level_critical(hi);
  }
  return f;
}

namespace {

Level tmin_of(const PLMap& f, const Simplex& s) {
  int lo = f.N + 1;
  for (VertexId v : s) lo = std::min(lo, f.rank_of.at(v));
  return level_critical(lo);
}

Level tmax_of(const PLMap& f, const Simplex& s) {
  int hi = 0;
  for (VertexId v : s) hi = std::max(hi, f.rank_of.at(v));
  return level_critical(hi);
}

bool simplex_crosses(const PLMap& f, const Simplex& s, Level g) {
  return tmin_of(f, s) < g && g < tmax_of(f, s);
}

Cell make_cell(CellKind kind, Simplex base, Level lo, Level hi) {
  Cell c;
  c.kind = kind;
  c.base = std::move(base);
  c.lo = lo;
  c.hi = hi;
  return c;
}

int kind_rank(CellKind k) {
  switch (k) {
    case CellKind::original: return 0;
    case CellKind::level_cut: return 1;
    case CellKind::upper_slab: return 2;
    case CellKind::lower_slab: return 3;
    case CellKind::mid_slab: return 4;
  }
  return 5;
}

// (geometric dim, base (dim, lex), kind, levels): faces always precede cofaces
bool cell_less(const Cell& a, const Cell& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.base != b.base) return simplex_less(a.base, b.base);
  if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
  return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
}

// codim-1 pieces of a cut cell per the combinatorial incidence rules
std::vector<Cell> cell_boundary(const PLMap& f, const Cell& c) {
  std::vector<Cell> out;
  const auto faces = codim1_faces(c.base);
  switch (c.kind) {
    case CellKind::original:
      for (const auto& t : faces) out.push_back(make_cell(CellKind::original, t, 0, 0));
      break;
    case CellKind::level_cut: {
      const Level g = c.lo;
      for (const auto& t : faces)
        if (simplex_crosses(f, t, g)) out.push_back(make_cell(CellKind::level_cut, t, g, g));
      if (level_is_critical(g) && simplex_dim(c.base) == 2) {
        const VertexId x = f.vertex_at[level_critical_index(g)];
        if (std::find(c.base.begin(), c.base.end(), x) != c.base.end())
          out.push_back(make_cell(CellKind::original, Simplex{x}, 0, 0));
      }
      break;
    }
    case CellKind::upper_slab: {
      const Level s = c.lo;
      out.push_back(make_cell(CellKind::level_cut, c.base, s, s));
      for (const auto& t : faces) {
        if (simplex_crosses(f, t, s))
          out.push_back(make_cell(CellKind::upper_slab, t, s, 0));
        else if (tmin_of(f, t) >= s)
          out.push_back(make_cell(CellKind::original, t, 0, 0));
      }
      break;
    }
    case CellKind::lower_slab: {
      const Level t_ = c.hi;
      out.push_back(make_cell(CellKind::level_cut, c.base, t_, t_));
      for (const auto& t : faces) {
        if (simplex_crosses(f, t, t_))
          out.push_back(make_cell(CellKind::lower_slab, t, 0, t_));
        else if (tmax_of(f, t) <= t_)
          out.push_back(make_cell(CellKind::original, t, 0, 0));
      }
      break;
    }
    case CellKind::mid_slab: {
      const Level s = c.lo, t_ = c.hi;
      out.push_back(make_cell(CellKind::level_cut, c.base, s, s));
      out.push_back(make_cell(CellKind::level_cut, c.base, t_, t_));
      for (const auto& t : faces) {
        const bool cs = simplex_crosses(f, t, s), ct = simplex_crosses(f, t, t_);
        if (cs && ct)
          out.push_back(make_cell(CellKind::mid_slab, t, s, t_));
        else if (cs && tmax_of(f, t) <= t_)
          out.push_back(make_cell(CellKind::upper_slab, t, s, 0));
        else if (ct && tmin_of(f, t) >= s)
          out.push_back(make_cell(CellKind::lower_slab, t, 0, t_));
        else if (tmin_of(f, t) >= s && tmax_of(f, t) <= t_)
          out.push_back(make_cell(CellKind::original, t, 0, 0));
        // faces entirely beyond one level contribute nothing in codim 1
      }
      break;
    }
  }
  return out;
}

struct CellKeyLess {
  bool operator()(const Cell& a, const Cell& b) const {
    return std::tie(a.kind, a.base, a.lo, a.hi) < std::tie(b.kind, b.base, b.lo, b.hi);
  }
};

CutComplex finalize(const PLMap& f, std::vector<Cell> cells) {
  CutComplex X;
  X.cells = std::move(cells);
  const std::size_t n = X.cells.size();
  X.dim.resize(n);
  X.tmin.resize(n);
  X.tmax.resize(n);
  std::map<Cell, std::size_t, CellKeyLess> index;
  for (std::size_t i = 0; i < n; ++i) {
    X.dim[i] = X.cells[i].dim();
    X.tmin[i] = tmin_of(f, X.cells[i].base);
    X.tmax[i] = tmax_of(f, X.cells[i].base);
    if (!index.emplace(X.cells[i], i).second)
      throw internal_error("duplicate cell in cut complex");
  }
  X.boundary.rows = n;
  X.boundary.cols.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = X.boundary.cols[j];
    for (const Cell& b : cell_boundary(f, X.cells[j])) {
      auto it = index.find(b);
      if (it == index.end()) throw internal_error("boundary cell missing from cut complex");
      col.push_back(static_cast<int>(it->second));
    }
    std::sort(col.begin(), col.end());
    if (!col.empty() && col.back() >= static_cast<int>(j))
      throw internal_error("cut complex ordering is not filtration-compatible");
  }
  return X;
}

// level cells of X_g: cuts of crossing simplices, plus the vertex at g
std::vector<Cell> level_cells(const PLMap& f, Level g) {
  std::vector<Cell> cells;
  if (level_is_critical(g))
    cells.push_back(make_cell(CellKind::original, Simplex{f.vertex_at[level_critical_index(g)]}, 0, 0));
  for (std::size_t i = 0; i < f.complex.cells.size(); ++i)
    if (f.crosses(i, g))
      cells.push_back(make_cell(CellKind::level_cut, f.complex.cells[i], g, g));
  std::sort(cells.begin(), cells.end(), cell_less);
  return cells;
}

} // namespace

CutComplex level_complex(const PLMap& f, Level g) {
  if (g < level_critical(1) || g > level_critical(f.N))
    throw precondition_error("level outside [t_1, t_N]");
  std::vector<Cell> cells = level_cells(f, g);
  CutComplex X = finalize(f, std::move(cells));
  X.block1 = X.cells.size();
  return X;
}

CutComplex slab_complex(const PLMap& f, Level s, Level t, bool t_first) {
  if (s > t) throw input_error("slab needs s <= t");
  if (s == t) return level_complex(f, s);

  std::vector<Cell> A = level_cells(f, s);
  std::vector<Cell> B = level_cells(f, t);
  std::vector<Cell> M;
  for (std::size_t i = 0; i < f.complex.cells.size(); ++i) {
    const Simplex& sx = f.complex.cells[i];
    const bool cs = f.crosses(i, s), ct = f.crosses(i, t);
    if (cs && ct)
      M.push_back(make_cell(CellKind::mid_slab, sx, s, t));
    else if (cs)
      M.push_back(make_cell(CellKind::upper_slab, sx, s, 0));
    else if (ct)
      M.push_back(make_cell(CellKind::lower_slab, sx, 0, t));
    else if (f.tmin[i] >= s && f.tmax[i] <= t) {
      // the level vertices already sit in the A / B blocks
      if (f.tmin[i] == f.tmax[i] && (f.tmin[i] == s || f.tmin[i] == t)) continue;
      M.push_back(make_cell(CellKind::original, sx, 0, 0));
    }
  }
  std::sort(M.begin(), M.end(), cell_less);

  std::vector<Cell> cells;
  const std::vector<Cell>& first = t_first ? B : A;
  const std::vector<Cell>& second = t_first ? A : B;
  cells.insert(cells.end(), first.begin(), first.end());
  cells.insert(cells.end(), second.begin(), second.end());
  cells.insert(cells.end(), M.begin(), M.end());

  CutComplex X = finalize(f, std::move(cells));
  X.block1 = first.size();
  X.block2 = second.size();
  return X;
}

CutComplex y_complex(const PLMap& f, Level s, Level t) {
  if (s >= t) throw input_error("y_complex needs s < t");
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < f.complex.cells.size(); ++i) {
    const Simplex& sx = f.complex.cells[i];
    if (f.crosses(i, s)) {
      // the cut sits at value s regardless of how far the simplex reaches up
      cells.push_back(make_cell(CellKind::level_cut, sx, s, s));
      if (f.tmax[i] <= t) cells.push_back(make_cell(CellKind::upper_slab, sx, s, 0));
    } else if (f.tmin[i] >= s && f.tmax[i] <= t) {
      cells.push_back(make_cell(CellKind::original, sx, 0, 0));
    }
  }
  std::sort(cells.begin(), cells.end(), cell_less);
  CutComplex X = finalize(f, std::move(cells));
  X.block1 = X.cells.size();
  return X;
}

namespace {

// initial position of the base simplex in the original complex
std::size_t base_pos(const PLMap& f, const Cell& c) {
  auto idx = f.complex.index_of(c.base);
  if (!idx) throw internal_error("cut cell with unknown base");
  return *idx;
}

// P1/N1 vertex and P2/N2 cut membership; everything else is tail
bool in_prefix(const PLMap& f, const Cell& c, Level g, bool positive) {
  if (c.kind == CellKind::level_cut) return true;
  if (c.kind != CellKind::original || simplex_dim(c.base) != 0) return false;
  return (positive ? tmin_of(f, c.base) : tmax_of(f, c.base)) == g;
}

Ordering side_order(const PLMap& f, Level g, const std::vector<Cell>& cells, bool positive) {
  std::size_t prefix = 0;
  for (const Cell& c : cells)
    if (in_prefix(f, c, g, positive)) ++prefix;
  for (std::size_t i = 0; i < prefix; ++i)
    if (!in_prefix(f, cells[i], g, positive))
      throw input_error("cells are not in class order");

  Ordering ord(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) ord[i] = i;
  std::sort(ord.begin() + prefix, ord.end(), [&](std::size_t a, std::size_t b) {
    const Level ka = positive ? tmax_of(f, cells[a].base) : -tmin_of(f, cells[a].base);
    const Level kb = positive ? tmax_of(f, cells[b].base) : -tmin_of(f, cells[b].base);
    if (ka != kb) return ka < kb;
    return base_pos(f, cells[a]) < base_pos(f, cells[b]);
  });
  return ord;
}

CutComplex boundary_side(const PLMap& f, Level g, bool positive) {
  if (g < level_critical(1) || g > level_critical(f.N))
    throw precondition_error("level outside [t_1, t_N]");

  std::vector<Cell> c1, c2, tail;
  if (level_is_critical(g))
    c1.push_back(make_cell(CellKind::original, Simplex{f.vertex_at[level_critical_index(g)]}, 0, 0));
  for (std::size_t i = 0; i < f.complex.cells.size(); ++i) {
    const Simplex& sx = f.complex.cells[i];
    if (f.crosses(i, g)) {
      c2.push_back(make_cell(CellKind::level_cut, sx, g, g));
      tail.push_back(positive ? make_cell(CellKind::upper_slab, sx, g, 0)
                              : make_cell(CellKind::lower_slab, sx, 0, g));
    } else if (positive && f.tmin[i] >= g) {
      if (f.tmin[i] == g && simplex_dim(sx) == 0) continue; // the P1 vertex
      tail.push_back(make_cell(CellKind::original, sx, 0, 0));
    } else if (!positive && f.tmax[i] <= g) {
      if (f.tmax[i] == g && simplex_dim(sx) == 0) continue; // the N1 vertex
      tail.push_back(make_cell(CellKind::original, sx, 0, 0));
    }
  }
  // classes P2 / N2 keep the initial order of their bases
  auto by_initial = [&](const Cell& a, const Cell& b) { return base_pos(f, a) < base_pos(f, b); };
  std::sort(c2.begin(), c2.end(), by_initial);

  std::array<std::size_t, 5> sizes{};
  sizes[0] = c1.size();
  sizes[1] = c2.size();
  for (const Cell& c : tail) {
    if (c.kind != CellKind::original)
      sizes[2] += 1; // slabs (P3 / N3)
    else if ((positive ? tmin_of(f, c.base) : tmax_of(f, c.base)) == g)
      sizes[3] += 1; // P4 / N4: touching the level, dim > 0
    else
      sizes[4] += 1;
  }

  std::vector<Cell> cells;
  cells.insert(cells.end(), c1.begin(), c1.end());
  cells.insert(cells.end(), c2.begin(), c2.end());
  cells.insert(cells.end(), tail.begin(), tail.end());

  const Ordering ord = side_order(f, g, cells, positive);
  std::vector<Cell> ordered;
  ordered.reserve(cells.size());
  for (std::size_t p : ord) ordered.push_back(cells[p]);

  CutComplex X = finalize(f, std::move(ordered));
  X.block1 = c1.size() + c2.size();
  X.class_sizes = sizes;
  return X;
}

} // namespace

Ordering positive_order(const PLMap& f, Level g, const std::vector<Cell>& cells) {
  return side_order(f, g, cells, true);
}

Ordering negative_order(const PLMap& f, Level g, const std::vector<Cell>& cells) {
  return side_order(f, g, cells, false);
}

CutComplex build_boundary_plus(const PLMap& f, Level g) { return boundary_side(f, g, true); }
CutComplex build_boundary_minus(const PLMap& f, Level g) { return boundary_side(f, g, false); }

ReducedMatrix reduce_level(const BoundaryMatrix& D) {
  count_reduce_level_call();
  const std::size_t n = D.cols.size();
  ReducedMatrix R;
  R.rows = D.rows;
  R.cols = D.cols;

  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (R.cols[j].empty()) continue;
    const int lj = R.cols[j].back();
    for (std::size_t j0 = j + 1; j0 < n; ++j0)
      if (!R.cols[j0].empty() && R.cols[j0].back() == lj)
        gf2_add_into(R.cols[j], R.cols[j0]);
    // earlier nonzero columns with smaller lows, visited by descending low
    std::vector<std::pair<int, std::size_t>> earlier;
    for (std::size_t i = 0; i < j; ++i)
      if (!R.cols[i].empty() && R.cols[i].back() < lj)
        earlier.emplace_back(R.cols[i].back(), i);
    std::sort(earlier.rbegin(), earlier.rend());
    for (const auto& [li, i] : earlier)
      for (std::size_t j0 = j + 1; j0 < n; ++j0)
        if (!R.cols[j0].empty() && R.cols[j0].back() == li)
          gf2_add_into(R.cols[i], R.cols[j0]);
  }

  if (!is_reduced(R.cols)) {
    std::fprintf(stderr,
                 "persistor: reduce_level postcondition failed on a %zu-column matrix; "
                 "falling back to the standard reduction\n",
                 n);
    return reduce(D);
  }
  R.low.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j)
    if (!R.cols[j].empty()) R.low[j] = R.cols[j].back();
  return R;
}

namespace {

std::vector<HalfBar> read_side(const CutComplex& X, const ReducedMatrix& R, bool positive) {
  const std::size_t n = R.cols.size();
  if (X.cells.size() != n) throw input_error("complex/matrix size mismatch");
  std::vector<int> killer(n, -1);
  for (std::size_t k = 0; k < n; ++k)
    if (!R.is_zero(k)) killer[R.low[k]] = static_cast<int>(k);

  std::vector<HalfBar> out;
  for (std::size_t j = 0; j < X.block1; ++j) {
    if (!R.is_zero(j)) continue;
    const int k = killer[j];
    if (k >= 0 && static_cast<std::size_t>(k) < X.block1) continue; // same-level death
    HalfBar bar;
    bar.dim = X.dim[j];
    bar.col = j;
    if (k < 0)
      bar.end = positive ? k_plus_inf : k_minus_inf;
    else
      bar.end = positive ? X.tmax[k] : X.tmin[k];
    out.push_back(bar);
  }
  return out;
}

} // namespace

std::vector<HalfBar> read_positive_barcode(const CutComplex& X, const ReducedMatrix& R) {
  return read_side(X, R, true);
}

std::vector<HalfBar> read_negative_barcode(const CutComplex& X, const ReducedMatrix& R) {
  return read_side(X, R, false);
}

namespace {

// Reduced columns beyond the level block whose low falls inside it. Such a
// column is a combination of boundaries of cells no later than itself, so it
// certifies a level cycle that bounds once the slab reaches the column's
// tmax (resp. tmin).
std::vector<KernelVec> kernel_vectors(const CutComplex& X, const ReducedMatrix& R,
                                      bool positive) {
  std::vector<KernelVec> out;
  for (std::size_t k = X.block1; k < R.cols.size(); ++k) {
    if (R.is_zero(k)) continue;
    const int low = R.low[k];
    if (low < 0 || static_cast<std::size_t>(low) >= X.block1) continue;
    KernelVec v;
    v.dim = X.dim[low];
    v.end = positive ? X.tmax[k] : X.tmin[k];
    v.cells = R.cols[k];
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace

PosNegBarcodes posneg_at_level(const PLMap& f, Level g) {
  CutComplex plus = build_boundary_plus(f, g);
  CutComplex minus = build_boundary_minus(f, g);
  if (plus.block1 != minus.block1)
    throw internal_error("positive/negative prefixes differ in size");
  for (std::size_t j = 0; j < plus.block1; ++j)
    if (!(plus.cells[j] == minus.cells[j]))
      throw internal_error("positive/negative prefixes differ in cells");

  ReducedMatrix Rp = reduce_level(plus.boundary);
  ReducedMatrix Rm = reduce_level(minus.boundary);
  for (std::size_t j = 0; j < plus.block1; ++j)
    if (Rp.is_zero(j) != Rm.is_zero(j))
      throw internal_error("prefix zero-column sets differ between the two reductions");

  std::vector<HalfBar> pos = read_positive_barcode(plus, Rp);
  std::vector<HalfBar> neg = read_negative_barcode(minus, Rm);
  if (pos.size() != neg.size())
    throw internal_error("positive/negative bar counts differ");
  for (std::size_t k = 0; k < pos.size(); ++k)
    if (pos[k].col != neg[k].col || pos[k].dim != neg[k].dim)
      throw internal_error("positive/negative pairing misaligned");

  PosNegBarcodes out;
  out.level = g;
  out.positive = std::move(pos);
  out.negative = std::move(neg);
  out.pos_kernel = kernel_vectors(plus, Rp, true);
  out.neg_kernel = kernel_vectors(minus, Rm, false);
  out.prefix_dim.assign(plus.dim.begin(), plus.dim.begin() + plus.block1);
  out.prefix_bnd.assign(plus.boundary.cols.begin(),
                        plus.boundary.cols.begin() + plus.block1);
  return out;
}

namespace {

const RelevantNumbers::Row& row_at(const RelevantNumbers& rel, Level g) {
  auto it = rel.rows.find(g);
  if (it == rel.rows.end())
    throw input_error("no relevant-number row at level " + std::to_string(g));
  return it->second;
}

} // namespace

long long RelevantNumbers::l(int r, Level g) const {
  const Row& row = row_at(*this, g);
  if (r < 0 || r >= static_cast<int>(row.pos_ends.size())) return 0;
  return static_cast<long long>(row.pos_ends[r].size());
}

long long RelevantNumbers::lplus(int r, Level g, int j) const {
  const Row& row = row_at(*this, g);
  if (r < 0 || r >= static_cast<int>(row.pos_ends.size())) return 0;
  long long c = 0;
  for (Level b : row.pos_ends[r])
    if (b != k_plus_inf && b <= level_critical(j)) ++c;
  return c;
}

long long RelevantNumbers::lminus(int r, Level g, int k) const {
  const Row& row = row_at(*this, g);
  if (r < 0 || r >= static_cast<int>(row.neg_ends.size())) return 0;
  long long c = 0;
  for (Level a : row.neg_ends[r])
    if (a != k_minus_inf && a >= level_critical(k)) ++c;
  return c;
}

long long RelevantNumbers::e(int r, Level g, int j, int k) const {
  const Row& row = row_at(*this, g);
  const long long lp = lplus(r, g, j);
  const long long lm = lminus(r, g, k);
  if (lp == 0 || lm == 0) return 0;
  if (r < 0 || r >= static_cast<int>(row.pos_vecs.size())) return 0;
  // dim(U cap D) = dim U + dim D - dim(U + D), computed in H_r of the level:
  // absorb the boundary columns first, then count the fresh pivots the two
  // kernel spans contribute
  std::map<int, std::vector<int>> pivot;
  auto insert = [&](std::vector<int> c) -> bool {
    while (!c.empty()) {
      auto it = pivot.find(c.back());
      if (it == pivot.end()) {
        pivot.emplace(c.back(), std::move(c));
        return true;
      }
      gf2_add_into(it->second, c);
    }
    return false;
  };
  if (r < static_cast<int>(row.bnd.size()))
    for (const auto& b : row.bnd[r]) insert(b);
  long long joint = 0;
  for (const auto& [end, vec] : row.pos_vecs[r])
    if (end <= level_critical(j) && insert(vec)) ++joint;
  for (const auto& [end, vec] : row.neg_vecs[r])
    if (end >= level_critical(k) && insert(vec)) ++joint;
  return lp + lm - joint;
}

RelevantNumbers relevant_from_posneg(const PLMap& f,
                                     const std::map<Level, PosNegBarcodes>& codes) {
  RelevantNumbers rel;
  rel.N = f.N;
  rel.max_dim = std::max(f.dim(), 0);
  for (const auto& [g, pnb] : codes) {
    RelevantNumbers::Row row;
    row.pos_ends.resize(rel.max_dim + 1);
    row.neg_ends.resize(rel.max_dim + 1);
    row.pos_vecs.resize(rel.max_dim + 1);
    row.neg_vecs.resize(rel.max_dim + 1);
    row.bnd.resize(rel.max_dim + 1);
    for (std::size_t k = 0; k < pnb.positive.size(); ++k) {
      const int r = pnb.positive[k].dim;
      if (r > rel.max_dim) throw internal_error("bar dimension beyond the complex dimension");
      row.pos_ends[r].push_back(pnb.positive[k].end);
      row.neg_ends[r].push_back(pnb.negative[k].end);
    }
    for (const KernelVec& v : pnb.pos_kernel) {
      if (v.dim > rel.max_dim) throw internal_error("kernel dimension beyond the complex dimension");
      row.pos_vecs[v.dim].emplace_back(v.end, v.cells);
    }
    for (const KernelVec& v : pnb.neg_kernel) {
      if (v.dim > rel.max_dim) throw internal_error("kernel dimension beyond the complex dimension");
      row.neg_vecs[v.dim].emplace_back(v.end, v.cells);
    }
    for (std::size_t c = 0; c < pnb.prefix_dim.size(); ++c) {
      const int rc = pnb.prefix_dim[c] - 1;
      if (rc < 0 || rc > rel.max_dim || pnb.prefix_bnd[c].empty()) continue;
      row.bnd[rc].push_back(pnb.prefix_bnd[c]);
    }
    for (int r = 0; r <= rel.max_dim; ++r) {
      long long fin = 0;
      for (Level b : row.pos_ends[r])
        if (b != k_plus_inf) ++fin;
      if (fin != static_cast<long long>(row.pos_vecs[r].size()))
        throw internal_error("kernel vectors disagree with the finite positive ends");
      fin = 0;
      for (Level a : row.neg_ends[r])
        if (a != k_minus_inf) ++fin;
      if (fin != static_cast<long long>(row.neg_vecs[r].size()))
        throw internal_error("kernel vectors disagree with the finite negative ends");
    }
    rel.rows.emplace(g, std::move(row));
  }
  for (const auto& [g, row] : rel.rows) {
    if (level_is_critical(g)) continue;
    std::vector<long long> b(rel.max_dim + 1, 0);
    for (int r = 0; r <= rel.max_dim; ++r)
      b[r] = static_cast<long long>(row.pos_ends[r].size());
    rel.mid_l.emplace((g - 1) / 2, std::move(b));
  }
  return rel;
}

namespace {

// per dimension, zero columns in the prefix whose class survives the whole
// complex (no column anywhere has its index as low)
std::vector<long long> unkilled_in_prefix(const ReducedMatrix& R, const std::vector<int>& dims,
                                          std::size_t prefix, int max_dim) {
  std::vector<char> killed(R.cols.size(), 0);
  for (std::size_t k = 0; k < R.cols.size(); ++k)
    if (!R.is_zero(k)) killed[R.cols[k].back()] = 1;
  std::vector<long long> out(max_dim + 1, 0);
  for (std::size_t j = 0; j < prefix && j < R.cols.size(); ++j)
    if (R.cols[j].empty() && !killed[j] && dims[j] <= max_dim) out[dims[j]] += 1;
  return out;
}

IGrid empty_grid(int N, int max_dim) {
  IGrid G;
  G.N = N;
  G.max_dim = max_dim;
  G.v.assign(max_dim + 1,
             std::vector<std::vector<long long>>(2 * N + 3, std::vector<long long>(2 * N + 3, 0)));
  return G;
}

} // namespace

IGrid i_numbers_method1(const PLMap& f) {
  const int N = f.N;
  const int D = std::max(f.dim(), 0);
  IGrid G = empty_grid(N, D);

  const Level lo = level_critical(1), hi = level_critical(N);
  for (Level g = lo; g <= hi; ++g) {
    CutComplex X = level_complex(f, g);
    ReducedMatrix R = reduce(X.boundary);
    std::vector<long long> b = betti_from_reduced(R, X.dim);
    for (int r = 0; r <= D && r < static_cast<int>(b.size()); ++r) G.at(r, g, g) = b[r];
  }
  for (Level s = lo; s <= hi; ++s) {
    for (Level t = s + 1; t <= hi; ++t) {
      CutComplex A = slab_complex(f, s, t, false);
      ReducedMatrix RA = reduce(A.boundary);
      std::vector<long long> img_s = unkilled_in_prefix(RA, A.dim, A.block1, D);
      std::vector<long long> joint = unkilled_in_prefix(RA, A.dim, A.block1 + A.block2, D);

      CutComplex B = slab_complex(f, s, t, true);
      ReducedMatrix RB = reduce(B.boundary);
      std::vector<long long> img_t = unkilled_in_prefix(RB, B.dim, B.block1, D);
      std::vector<long long> joint2 = unkilled_in_prefix(RB, B.dim, B.block1 + B.block2, D);
      if (joint != joint2)
        throw internal_error("joint image dimension differs between slab orderings");

      for (int r = 0; r <= D; ++r) {
        const long long v = img_s[r] + img_t[r] - joint[r];
        if (v < 0) throw internal_error("negative intersection dimension");
        G.at(r, s, t) = v;
      }
    }
  }
  return G;
}

IGrid i_numbers_method2(const PLMap& f, RelevantNumbers& rel) {
  const int N = f.N;
  const int D = std::max(f.dim(), 0);
  for (int k = 1; k <= N; ++k)
    if (!rel.has_row(level_critical(k)))
      throw input_error("method 2 needs relevant rows at every critical level");

  rel.i_crit.clear();
  for (int k = 1; k <= N; ++k) {
    std::vector<long long> diag(D + 1, 0);
    for (int r = 0; r <= D; ++r) diag[r] = rel.l(r, level_critical(k));
    rel.i_crit.emplace(std::make_pair(k, k), std::move(diag));
  }
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      CutComplex A = slab_complex(f, level_critical(i), level_critical(j), false);
      ReducedMatrix RA = reduce(A.boundary);
      std::vector<long long> joint = unkilled_in_prefix(RA, A.dim, A.block1 + A.block2, D);
      std::vector<long long> vals(D + 1, 0);
      for (int r = 0; r <= D; ++r) {
        const long long ds = rel.l(r, level_critical(i)) - rel.lplus(r, level_critical(i), j);
        const long long dt = rel.l(r, level_critical(j)) - rel.lminus(r, level_critical(j), i);
        const long long v = ds + dt - joint[r];
        if (v < 0) throw internal_error("negative intersection dimension");
        vals[r] = v;
      }
      rel.i_crit.emplace(std::make_pair(i, j), std::move(vals));

      if (j == i + 1) {
        // betti of the regular level inside (t_i, t_{i+1}), at no extra
        // reduction: the slab modulo its two boundary levels is the
        // suspension of the midlevel with the poles identified, so
        // b_r(mid) = dim H_{r+1}(slab, ends), and the latter follows from
        // the long exact sequence of the pair
        const std::vector<long long> bsl = betti_from_reduced(RA, A.dim);
        std::vector<long long> mid(D + 1, 0);
        for (int r = 0; r <= D; ++r) {
          const long long b_up = r + 1 < static_cast<int>(bsl.size()) ? bsl[r + 1] : 0;
          const long long j_up = r + 1 <= D ? joint[r + 1] : 0;
          mid[r] = b_up - j_up + rel.l(r, level_critical(i)) +
                   rel.l(r, level_critical(j)) - joint[r];
          if (mid[r] < 0) throw internal_error("negative midlevel betti");
        }
        auto it = rel.mid_l.find(i);
        if (it != rel.mid_l.end() && it->second != mid)
          throw internal_error("midlevel betti disagrees with the supplied midpoint row");
        rel.mid_l[i] = std::move(mid);
      }
    }
  }

  LevelBarcode bars = level_barcodes_from_relevant(rel);

  IGrid G = empty_grid(N, D);
  for (int kind = 0; kind < 4; ++kind) {
    const auto bk = static_cast<LevelBarKind>(kind);
    const bool open_l = (bk == LevelBarKind::open_open || bk == LevelBarKind::open_closed);
    const bool open_r = (bk == LevelBarKind::open_open || bk == LevelBarKind::closed_open);
    for (int r = 0; r <= D; ++r)
      for (int i = 1; i <= N; ++i)
        for (int j = i; j <= N; ++j) {
          const long long mult = bars.count(bk, r, i, j);
          if (mult == 0) continue;
          const Level L = level_critical(i) + (open_l ? 1 : 0);
          const Level Rt = level_critical(j) - (open_r ? 1 : 0);
          for (Level a = L; a <= Rt; ++a)
            for (Level b = a; b <= Rt; ++b) G.at(r, a, b) += mult;
        }
  }
  for (const auto& [key, vals] : rel.i_crit)
    for (int r = 0; r <= D; ++r)
      if (G.at(r, level_critical(key.first), level_critical(key.second)) != vals[r])
        throw internal_error("containment recount disagrees with the reduced i numbers");
  return G;
}

long long LevelBarcode::count(LevelBarKind k, int r, int i, int j) const {
  if (r < 0 || r > max_dim || i < 1 || j < i || j > N) return 0;
  return counts[static_cast<int>(k)][r][i][j];
}

void LevelBarcode::add(LevelBarKind k, int r, int i, int j, long long mult) {
  counts[static_cast<int>(k)][r][i][j] += mult;
}

std::vector<BarcodeInterval> LevelBarcode::to_intervals() const {
  std::vector<BarcodeInterval> out;
  for (int kind = 0; kind < 4; ++kind) {
    const auto bk = static_cast<LevelBarKind>(kind);
    const bool open_l = (bk == LevelBarKind::open_open || bk == LevelBarKind::open_closed);
    const bool open_r = (bk == LevelBarKind::open_open || bk == LevelBarKind::closed_open);
    for (int r = 0; r <= max_dim; ++r)
      for (int i = 1; i <= N; ++i)
        for (int j = i; j <= N; ++j) {
          const long long m = count(bk, r, i, j);
          if (m == 0) continue;
          BarcodeInterval bar;
          bar.dim = r;
          bar.left = i;
          bar.right = j;
          bar.left_kind = open_l ? EndKind::open : EndKind::closed;
          bar.right_kind = open_r ? EndKind::open : EndKind::closed;
          bar.mult = m;
          out.push_back(bar);
        }
  }
  return normalize_intervals(std::move(out));
}

namespace {

LevelBarcode empty_barcode(int N, int max_dim) {
  LevelBarcode L;
  L.N = N;
  L.max_dim = max_dim;
  for (auto& t : L.counts)
    t.assign(max_dim + 1, std::vector<std::vector<long long>>(
                              N + 1, std::vector<long long>(N + 1, 0)));
  return L;
}

void check_count(long long v, const char* what, int r, int k, int j) {
  if (v < 0)
    throw internal_error(std::string("negative ") + what + " count at r=" + std::to_string(r) +
                         ", i=" + std::to_string(k) + ", j=" + std::to_string(j));
}

} // namespace

LevelBarcode level_barcodes_from_i(const IGrid& G) {
  const int N = G.N, D = G.max_dim;
  LevelBarcode L = empty_barcode(N, D);
  auto I = [&](int r, Level a, Level b) { return G.at(r, a, b); };
  for (int r = 0; r <= D; ++r) {
    for (int k = 1; k <= N; ++k) {
      for (int j = k; j <= N; ++j) {
        const Level a = level_critical(k), b = level_critical(j);
        const long long cc = I(r, a, b) - I(r, a - 1, b) - I(r, a, b + 1) + I(r, a - 1, b + 1);
        check_count(cc, "closed-closed", r, k, j);
        L.add(LevelBarKind::closed_closed, r, k, j, cc);
        if (j == k) continue;
        const long long oc = I(r, a + 1, b) - I(r, a, b) - I(r, a + 1, b + 1) + I(r, a, b + 1);
        const long long co = I(r, a, b - 1) - I(r, a - 1, b - 1) - I(r, a, b) + I(r, a - 1, b);
        const long long oo = I(r, a + 1, b - 1) - I(r, a, b - 1) - I(r, a + 1, b) + I(r, a, b);
        check_count(oc, "open-closed", r, k, j);
        check_count(co, "closed-open", r, k, j);
        check_count(oo, "open-open", r, k, j);
        L.add(LevelBarKind::open_closed, r, k, j, oc);
        L.add(LevelBarKind::closed_open, r, k, j, co);
        L.add(LevelBarKind::open_open, r, k, j, oo);
      }
    }
  }
  return L;
}

LevelBarcode level_barcodes_from_relevant(const RelevantNumbers& rel) {
  const int N = rel.N, D = rel.max_dim;
  if (rel.i_crit.empty()) throw input_error("relevant tables missing the i numbers");
  LevelBarcode L = empty_barcode(N, D);

  auto icrit = [&](int r, int i, int j) -> long long {
    if (i < 1 || j > N || i > j) return 0;
    return rel.i_crit.at({i, j}).at(r);
  };
  // n{t_i, t_j): contains t_i, right end open exactly at t_j
  auto n_bo = [&](int r, int i, int j) -> long long {
    if (i < 1 || j > N || i >= j) return 0;
    return rel.lplus(r, level_critical(i), j) - rel.lplus(r, level_critical(i), j - 1);
  };
  // n(t_i, t_j}: left end open exactly at t_i, contains t_j
  auto n_ob = [&](int r, int i, int j) -> long long {
    if (i < 1 || j > N || i >= j) return 0;
    return rel.lminus(r, level_critical(j), i) - rel.lminus(r, level_critical(j), i + 1);
  };
  // n[t_i, t_j}: left end closed exactly at t_i, contains t_j
  auto n_cb = [&](int r, int i, int j) -> long long {
    if (i < 1 || j > N || i > j) return 0;
    return icrit(r, i, j) - icrit(r, i - 1, j) - n_ob(r, i - 1, j);
  };

  for (int r = 0; r <= D; ++r) {
    // open-open counts spanning two or more critical intervals, from the e
    // second difference; evaluated at the midpoint row when available, else
    // at an interior critical level (the count is the same at either)
    for (int k = 1; k < N; ++k) {
      const Level row = rel.has_row(level_mid(k)) ? level_mid(k) : level_critical(k + 1);
      if (!rel.has_row(row)) throw input_error("relevant tables missing a required level row");
      for (int j = k + 2; j <= N; ++j) {
        const long long oo = rel.e(r, row, j, k) - rel.e(r, row, j, k + 1) -
                             rel.e(r, row, j - 1, k) + rel.e(r, row, j - 1, k + 1);
        check_count(oo, "open-open", r, k, j);
        L.add(LevelBarKind::open_open, r, k, j, oo);
      }
    }
    for (int i = 1; i <= N; ++i) {
      for (int j = i + 1; j <= N; ++j) {
        const long long co =
            n_bo(r, i, j) - n_bo(r, i - 1, j) - L.count(LevelBarKind::open_open, r, i - 1, j);
        check_count(co, "closed-open", r, i, j);
        L.add(LevelBarKind::closed_open, r, i, j, co);
        const long long oc =
            n_ob(r, i, j) - n_ob(r, i, j + 1) - L.count(LevelBarKind::open_open, r, i, j + 1);
        check_count(oc, "open-closed", r, i, j);
        L.add(LevelBarKind::open_closed, r, i, j, oc);
      }
    }
    for (int i = 1; i <= N; ++i) {
      for (int j = i; j <= N; ++j) {
        const long long cc =
            n_cb(r, i, j) - n_cb(r, i, j + 1) - L.count(LevelBarKind::closed_open, r, i, j + 1);
        check_count(cc, "closed-closed", r, i, j);
        L.add(LevelBarKind::closed_closed, r, i, j, cc);
      }
    }
    // bars confined to a single open interval (t_k, t_{k+1}) exist but are
    // invisible at every critical level; they are the surplus of the
    // midlevel betti over the bars already accounted for
    for (int k = 1; k < N; ++k) {
      auto mid = rel.mid_l.find(k);
      if (mid == rel.mid_l.end())
        throw input_error("missing midlevel betti for the interval after t_" +
                          std::to_string(k));
      const long long expected =
          r < static_cast<int>(mid->second.size()) ? mid->second[r] : 0;
      long long have = 0;
      for (int kind = 0; kind < 4; ++kind)
        for (int i = 1; i <= k; ++i)
          for (int j = k + 1; j <= N; ++j)
            have += L.count(static_cast<LevelBarKind>(kind), r, i, j);
      const long long oo = expected - have;
      check_count(oo, "open-open", r, k, k + 1);
      L.add(LevelBarKind::open_open, r, k, k + 1, oo);
    }
  }
  return L;
}

SublevelMu sublevel_from_level(const LevelBarcode& L) {
  SublevelMu S;
  S.N = L.N;
  S.max_dim = L.max_dim;
  S.fin.assign(S.max_dim + 1, std::vector<std::vector<long long>>(
                                  S.N + 1, std::vector<long long>(S.N + 1, 0)));
  S.inf.assign(S.max_dim + 1, std::vector<long long>(S.N + 1, 0));
  for (int r = 0; r <= S.max_dim; ++r) {
    for (int i = 1; i <= S.N; ++i) {
      for (int j = i + 1; j <= S.N; ++j)
        S.fin[r][i][j] = L.count(LevelBarKind::closed_open, r, i, j);
      long long v = 0;
      for (int l = i; l <= S.N; ++l) v += L.count(LevelBarKind::closed_closed, r, i, l);
      if (r >= 1)
        for (int l = 1; l < i; ++l) v += L.count(LevelBarKind::open_open, r - 1, l, i);
      S.inf[r][i] = v;
    }
  }
  return S;
}

SublevelMu sublevel_barcodes_direct(const PLMap& f) {
  const int D = std::max(f.dim(), 0);
  const std::size_t n = f.complex.cells.size();
  // X_{-inf, t_i} deformation retracts onto the full subcomplex of cells with
  // t_max <= t_i, so the sub-level filtration is the lower-star filtration
  std::vector<int> f_ind(n);
  for (std::size_t i = 0; i < n; ++i) f_ind[i] = level_critical_index(f.tmax[i]);
  Ordering order = compatible_ordering(f.complex, f_ind);
  BoundaryMatrix Dm = boundary_matrix_gf2(f.complex, order);
  ReducedMatrix R = reduce(Dm);

  std::vector<int> f_ord(n), dim_ord(n);
  for (std::size_t p = 0; p < n; ++p) {
    f_ord[p] = f_ind[order[p]];
    dim_ord[p] = simplex_dim(f.complex.cells[order[p]]);
  }
  std::vector<PersistencePair> pairs = barcodes_from_reduced(R, f_ord, dim_ord);

  SublevelMu S;
  S.N = f.N;
  S.max_dim = D;
  S.fin.assign(D + 1, std::vector<std::vector<long long>>(
                          S.N + 1, std::vector<long long>(S.N + 1, 0)));
  S.inf.assign(D + 1, std::vector<long long>(S.N + 1, 0));
  for (const auto& b : pairs) {
    if (b.death == k_plus_inf)
      S.inf[b.dim][b.birth] += 1;
    else
      S.fin[b.dim][b.birth][b.death + 1] += 1; // [t_birth, t_{death+1})
  }
  return S;
}

} // namespace persistor
