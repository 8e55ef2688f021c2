#include "persistor/cli.hpp"

#include "persistor/common.hpp"
#include "persistor/level.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <map>
#include <tuple>

namespace persistor {

namespace {

JsonValue real_array(const std::vector<double>& xs) {
  JsonValue a = JsonValue::array();
  for (double x : xs) a.arr.push_back(JsonValue::real(x));
  return a;
}

void finish(BarcodeDocument& doc, const std::string& out, const std::string& plot) {
  const std::string text = to_canonical_json(document_json(doc));
  if (out.empty())
    std::cout << text;
  else
    write_text_atomic(out, text);
  if (!plot.empty()) emit_plot(doc, plot);
}

BarEnd finite_end(int index, double value, EndKind kind, bool midpoint = false) {
  BarEnd e;
  e.index = index;
  e.value = value;
  e.kind = kind;
  e.midpoint = midpoint;
  return e;
}

BarEnd infinite_end() {
  BarEnd e;
  e.infinite = true;
  e.kind = EndKind::infinite;
  return e;
}

PLMap load_map(const MapOptions& opt) {
  return make_pl_map(read_simplex_list(opt.complex_file),
                     read_vertex_values(opt.values_file), opt.perturb);
}

std::vector<double> critical_list(const PLMap& f) {
  return std::vector<double>(f.critical.begin() + 1, f.critical.end());
}

void add_map_meta(BarcodeDocument& doc, const PLMap& f, const MapOptions& opt,
                  const std::string& pipeline) {
  doc.meta.obj["pipeline"] = JsonValue::str(pipeline);
  if (!opt.complex_file.empty()) {
    doc.meta.obj["complex_file"] = JsonValue::str(opt.complex_file);
    doc.meta.obj["complex_hash"] = JsonValue::str(fnv1a_hash_file(opt.complex_file));
  }
  if (!opt.values_file.empty()) {
    doc.meta.obj["values_file"] = JsonValue::str(opt.values_file);
    doc.meta.obj["values_hash"] = JsonValue::str(fnv1a_hash_file(opt.values_file));
  }
  doc.meta.obj["n"] = JsonValue::integer(f.N);
  doc.meta.obj["critical_values"] = real_array(critical_list(f));
  if (opt.perturb > 0.0) doc.meta.obj["perturb"] = JsonValue::real(opt.perturb);
  doc.axis = critical_list(f);
}

// level bars carry critical indices; endpoints become (index, value) pairs
void push_level_bars(BarcodeDocument& doc, const PLMap& f,
                     const std::vector<BarcodeInterval>& bars) {
  for (const BarcodeInterval& b : bars) {
    DocumentBar d;
    d.dim = b.dim;
    d.mult = b.mult;
    const int i = static_cast<int>(b.left), j = static_cast<int>(b.right);
    if (i < 1 || j > f.N || i > j) throw internal_error("bar index outside the critical range");
    d.left = finite_end(i, f.critical[i], b.left_kind);
    d.right = finite_end(j, f.critical[j], b.right_kind);
    doc.bars.push_back(d);
  }
}

// "k" or "k+1/2"
Level parse_level_spec(const std::string& s) {
  std::string head = s;
  bool mid = false;
  const auto plus = s.find('+');
  if (plus != std::string::npos) {
    if (s.substr(plus) != "+1/2") throw input_error("bad level spec: " + s);
    head = s.substr(0, plus);
    mid = true;
  }
  int k = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), k);
  if (ec != std::errc() || ptr != head.data() + head.size() || k < 1)
    throw input_error("bad level spec: " + s);
  return mid ? level_mid(k) : level_critical(k);
}

} // namespace

PLMap make_pl_map(const std::vector<Simplex>& simplices,
                  std::vector<std::pair<VertexId, double>> values, double perturb) {
  SimplicialComplex K = build_complex(simplices);
  if (perturb > 0.0) {
    double scale = 0.0;
    for (const auto& [id, v] : values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (auto& [id, v] : values) v += static_cast<double>(id) * perturb * scale;
  }
  return check_generic(K, values);
}

BarcodeDocument rips_document(const PointCloud& X, const RipsOptions& opt) {
  if (opt.max_dim < 1) throw input_error("--max-dim must be at least 1");
  if (opt.max_steps < 0) throw input_error("--max-steps must be nonnegative");
  if (opt.coeff != "gf2" && opt.coeff != "real")
    throw input_error("--coeff must be gf2 or real");

  const FilteredComplex F = rips_from_points(X, opt.max_dim, opt.max_steps);
  const std::size_t n = F.complex.size();

  // (dim, birth, death) -> multiplicity, death == k_plus_inf for infinite bars
  std::map<std::tuple<int, int, int>, long long> agg;
  if (opt.coeff == "gf2") {
    const BoundaryMatrix D = boundary_matrix_gf2(F.complex, F.order);
    const ReducedMatrix R = reduce(D);
    std::vector<int> f_ord(n), dims(n);
    for (std::size_t p = 0; p < n; ++p) {
      f_ord[p] = F.f_ind[F.order[p]];
      dims[p] = simplex_dim(F.complex.cells[F.order[p]]);
    }
    for (const PersistencePair& pr : barcodes_from_reduced(R, f_ord, dims))
      agg[{pr.dim, pr.birth, pr.death}] += 1;
  } else {
    const RealFiltration RF = real_filtration(F);
    const BetaTable B = beta_table(RF);
    const MuTable M = mu_from_beta(B);
    for (int r = 0; r <= M.max_dim; ++r) {
      for (int s = 0; s <= M.P; ++s) {
        if (M.inf[r][s] > 0) agg[{r, s, k_plus_inf}] += M.inf[r][s];
        for (int t = s; t <= M.P - 1; ++t)
          if (M.fin[r][s][t] > 0) agg[{r, s, t}] += M.fin[r][s][t];
      }
    }
  }

  const std::vector<double> eps(F.schedule.epsiorg.begin(),
                                F.schedule.epsiorg.begin() + F.P + 1);
  BarcodeDocument doc;
  doc.meta.obj["pipeline"] = JsonValue::str("rips");
  doc.meta.obj["coeff"] = JsonValue::str(opt.coeff);
  if (!opt.points_file.empty()) {
    doc.meta.obj["points_file"] = JsonValue::str(opt.points_file);
    doc.meta.obj["points_hash"] = JsonValue::str(fnv1a_hash_file(opt.points_file));
  }
  doc.meta.obj["n_points"] = JsonValue::integer(static_cast<long long>(X.size()));
  doc.meta.obj["m"] = JsonValue::integer(opt.max_dim);
  doc.meta.obj["max_steps"] = JsonValue::integer(opt.max_steps);
  doc.meta.obj["p"] = JsonValue::integer(F.P);
  doc.meta.obj["max_valid_dim"] = JsonValue::integer(opt.max_dim - 1);
  doc.meta.obj["epsilons"] = real_array(eps);
  doc.axis = eps;

  for (const auto& [key, mult] : agg) {
    const auto& [r, birth, death] = key;
    if (r > opt.max_dim - 1) continue; // the m-skeleton is only faithful below m
    DocumentBar d;
    d.dim = r;
    d.mult = mult;
    d.left = finite_end(birth, eps[birth], EndKind::closed);
    d.right = death == k_plus_inf ? infinite_end()
                                  : finite_end(death, eps[death], EndKind::closed);
    doc.bars.push_back(d);
  }
  return doc;
}

BarcodeDocument cmd_rips(const RipsOptions& opt) {
  const PointCloud X = read_point_cloud(opt.points_file);
  BarcodeDocument doc = rips_document(X, opt);
  finish(doc, opt.out, opt.plot);
  return doc;
}

BarcodeDocument level_document(const PLMap& f, const LevelOptions& opt) {
  if (opt.method != 1 && opt.method != 2) throw input_error("--method must be 1 or 2");
  reset_reduction_counters();

  LevelBarcode bars;
  if (opt.method == 1) {
    bars = level_barcodes_from_i(i_numbers_method1(f));
  } else {
    std::map<Level, PosNegBarcodes> codes;
    for (int k = 1; k <= f.N; ++k)
      codes.emplace(level_critical(k), posneg_at_level(f, level_critical(k)));
    RelevantNumbers rel = relevant_from_posneg(f, codes);
    (void)i_numbers_method2(f, rel);
    bars = level_barcodes_from_relevant(rel);
  }
  const ReductionCounters c = reduction_counters();

  BarcodeDocument doc;
  add_map_meta(doc, f, opt, "level");
  doc.meta.obj["method"] = JsonValue::integer(opt.method);
  JsonValue red = JsonValue::object();
  red.obj["reduce"] = JsonValue::integer(c.reduce_calls);
  red.obj["reduce_level"] = JsonValue::integer(c.reduce_level_calls);
  red.obj["total"] = JsonValue::integer(c.total());
  doc.meta.obj["reductions"] = std::move(red);

  push_level_bars(doc, f, bars.to_intervals());
  return doc;
}

BarcodeDocument cmd_level(const LevelOptions& opt) {
  const PLMap f = load_map(opt);
  BarcodeDocument doc = level_document(f, opt);
  finish(doc, opt.out, opt.plot);
  return doc;
}

BarcodeDocument posneg_document(const PLMap& f, const PosnegOptions& opt) {
  const Level g = parse_level_spec(opt.level);
  const PosNegBarcodes pn = posneg_at_level(f, g);

  BarcodeDocument doc;
  add_map_meta(doc, f, opt, "posneg");
  JsonValue lv = JsonValue::object();
  double level_value;
  const bool mid = !level_is_critical(g);
  const int k_level = mid ? (g - 1) / 2 : level_critical_index(g);
  if (mid) {
    JsonValue pair = JsonValue::array();
    pair.arr.push_back(JsonValue::integer(k_level));
    pair.arr.push_back(JsonValue::integer(k_level + 1));
    lv.obj["index"] = std::move(pair);
    level_value = (f.critical[k_level] + f.critical[k_level + 1]) / 2.0;
  } else {
    lv.obj["index"] = JsonValue::integer(k_level);
    level_value = f.critical[k_level];
  }
  lv.obj["value"] = JsonValue::real(level_value);
  doc.meta.obj["level"] = std::move(lv);

  for (std::size_t idx = 0; idx < pn.positive.size(); ++idx) {
    const HalfBar& p = pn.positive[idx];
    const HalfBar& m = pn.negative[idx];
    DocumentBar dp;
    dp.dim = p.dim;
    dp.generator = static_cast<int>(p.col);
    dp.sign = "positive";
    dp.left = finite_end(k_level, level_value, EndKind::closed, mid);
    if (p.end == k_plus_inf) {
      dp.right = infinite_end();
    } else {
      const int j = level_critical_index(p.end);
      dp.right = finite_end(j, f.critical[j], EndKind::open);
    }
    DocumentBar dm;
    dm.dim = m.dim;
    dm.generator = static_cast<int>(m.col);
    dm.sign = "negative";
    dm.right = finite_end(k_level, level_value, EndKind::closed, mid);
    if (m.end == k_minus_inf) {
      dm.left = infinite_end();
    } else {
      const int a = level_critical_index(m.end);
      dm.left = finite_end(a, f.critical[a], EndKind::open);
    }
    doc.bars.push_back(dp);
    doc.bars.push_back(dm);
  }
  std::stable_sort(doc.bars.begin(), doc.bars.end(),
                   [](const DocumentBar& a, const DocumentBar& b) {
                     return std::tie(a.dim, a.generator) < std::tie(b.dim, b.generator);
                   });
  return doc;
}

BarcodeDocument cmd_posneg(const PosnegOptions& opt) {
  const PLMap f = load_map(opt);
  BarcodeDocument doc = posneg_document(f, opt);
  finish(doc, opt.out, opt.plot);
  return doc;
}

BarcodeDocument sublevel_document(const PLMap& f, const SublevelOptions& opt) {
  if (opt.via != "direct" && opt.via != "level")
    throw input_error("--via must be direct or level");

  SublevelMu S;
  if (opt.via == "direct") {
    S = sublevel_barcodes_direct(f);
  } else {
    std::map<Level, PosNegBarcodes> codes;
    for (int k = 1; k <= f.N; ++k)
      codes.emplace(level_critical(k), posneg_at_level(f, level_critical(k)));
    RelevantNumbers rel = relevant_from_posneg(f, codes);
    (void)i_numbers_method2(f, rel);
    S = sublevel_from_level(level_barcodes_from_relevant(rel));
  }

  BarcodeDocument doc;
  add_map_meta(doc, f, opt, "sublevel");
  doc.meta.obj["via"] = JsonValue::str(opt.via);
  for (int r = 0; r <= S.max_dim; ++r) {
    for (int i = 1; i <= S.N; ++i) {
      if (S.inf[r][i] > 0) {
        DocumentBar d;
        d.dim = r;
        d.mult = S.inf[r][i];
        d.left = finite_end(i, f.critical[i], EndKind::closed);
        d.right = infinite_end();
        doc.bars.push_back(d);
      }
      for (int j = i + 1; j <= S.N; ++j) {
        if (S.fin[r][i][j] == 0) continue;
        DocumentBar d;
        d.dim = r;
        d.mult = S.fin[r][i][j];
        d.left = finite_end(i, f.critical[i], EndKind::closed);
        d.right = finite_end(j, f.critical[j], EndKind::open);
        doc.bars.push_back(d);
      }
    }
  }
  std::sort(doc.bars.begin(), doc.bars.end(), [](const DocumentBar& a, const DocumentBar& b) {
    const int ra = a.right.infinite ? k_plus_inf : a.right.index;
    const int rb = b.right.infinite ? k_plus_inf : b.right.index;
    return std::tie(a.dim, a.left.index, ra) < std::tie(b.dim, b.left.index, rb);
  });
  return doc;
}

BarcodeDocument cmd_sublevel(const SublevelOptions& opt) {
  const PLMap f = load_map(opt);
  BarcodeDocument doc = sublevel_document(f, opt);
  finish(doc, opt.out, opt.plot);
  return doc;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"bar codes of Rips filtrations and level persistence of PL maps"};
  app.require_subcommand(1);

  RipsOptions ro;
  auto* rips = app.add_subcommand("rips", "bar codes of a point cloud");
  rips->add_option("points", ro.points_file, "point-cloud file")->required();
  rips->add_option("--max-dim", ro.max_dim, "skeleton cap m")->required();
  rips->add_option("--max-steps", ro.max_steps, "step cap S")->required();
  rips->add_option("--coeff", ro.coeff, "coefficient field: gf2 or real");
  rips->add_option("--out", ro.out, "output JSON path (stdout if omitted)");
  rips->add_option("--plot", ro.plot, "SVG plot path");

  auto add_map_options = [](CLI::App* cmd, MapOptions& mo) {
    cmd->add_option("complex", mo.complex_file, "simplex-list file")->required();
    cmd->add_option("values", mo.values_file, "vertex-value file")->required();
    cmd->add_option("--perturb", mo.perturb,
                    "perturb value of vertex i by i * eps * max|value| before the generic check");
    cmd->add_option("--out", mo.out, "output JSON path (stdout if omitted)");
    cmd->add_option("--plot", mo.plot, "SVG plot path");
  };

  LevelOptions lo;
  auto* level = app.add_subcommand("level", "four-endpoint-kind level bar codes");
  add_map_options(level, lo);
  level->add_option("--method", lo.method, "1 (slab grid) or 2 (relevant numbers)");

  PosnegOptions po;
  auto* posneg = app.add_subcommand("posneg", "positive/negative bar codes at one level");
  add_map_options(posneg, po);
  posneg->add_option("--level", po.level, "critical index k or midpoint k+1/2")->required();

  SublevelOptions so;
  auto* sublevel = app.add_subcommand("sublevel", "sub-level bar codes");
  add_map_options(sublevel, so);
  sublevel->add_option("--via", so.via, "direct or level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rips->parsed())
      cmd_rips(ro);
    else if (level->parsed())
      cmd_level(lo);
    else if (posneg->parsed())
      cmd_posneg(po);
    else
      cmd_sublevel(so);
    return 0;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

} // namespace persistor
