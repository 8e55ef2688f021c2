#include "persistor/cli.hpp"

#include "persistor/common.hpp"
#include "persistor/level.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;

namespace {

std::string canonical(const persistor::BarcodeDocument& doc) {
  return persistor::to_canonical_json(persistor::document_json(doc));
}

} // namespace

PYBIND11_MODULE(_persistor, m) {
  using namespace persistor;

  m.doc() = "bar codes of Rips filtrations and level persistence of generic PL maps";

  py::register_exception<input_error>(m, "InputError");
  py::register_exception<precondition_error>(m, "PreconditionError");
  py::register_exception<internal_error>(m, "InternalError");

  m.def(
      "rips",
      [](const PointCloud& points, int max_dim, int max_steps, const std::string& coeff) {
        RipsOptions opt;
        opt.max_dim = max_dim;
        opt.max_steps = max_steps;
        opt.coeff = coeff;
        return canonical(rips_document(points, opt));
      },
      py::arg("points"), py::arg("max_dim"), py::arg("max_steps"),
      py::arg("coeff") = "gf2",
      "Bar codes of the Rips filtration of a point cloud, as canonical JSON.");

  m.def(
      "level",
      [](const std::vector<Simplex>& simplices,
         const std::vector<std::pair<VertexId, double>>& values, int method,
         double perturb) {
        LevelOptions opt;
        opt.method = method;
        opt.perturb = perturb;
        return canonical(level_document(make_pl_map(simplices, values, perturb), opt));
      },
      py::arg("simplices"), py::arg("values"), py::arg("method") = 2,
      py::arg("perturb") = 0.0,
      "Level bar codes (four endpoint kinds) of a generic PL map, as canonical JSON.");

  m.def(
      "posneg",
      [](const std::vector<Simplex>& simplices,
         const std::vector<std::pair<VertexId, double>>& values, const std::string& level,
         double perturb) {
        PosnegOptions opt;
        opt.level = level;
        opt.perturb = perturb;
        return canonical(posneg_document(make_pl_map(simplices, values, perturb), opt));
      },
      py::arg("simplices"), py::arg("values"), py::arg("level"), py::arg("perturb") = 0.0,
      "Positive and negative bar codes at one level (\"k\" or \"k+1/2\"), as canonical JSON.");

  m.def(
      "sublevel",
      [](const std::vector<Simplex>& simplices,
         const std::vector<std::pair<VertexId, double>>& values, const std::string& via,
         double perturb) {
        SublevelOptions opt;
        opt.via = via;
        opt.perturb = perturb;
        return canonical(sublevel_document(make_pl_map(simplices, values, perturb), opt));
      },
      py::arg("simplices"), py::arg("values"), py::arg("via") = "direct",
      py::arg("perturb") = 0.0, "Sub-level bar codes of a generic PL map, as canonical JSON.");

  m.def(
      "plot_svg",
      [](const PointCloud& points, int max_dim, int max_steps, const std::string& coeff) {
        RipsOptions opt;
        opt.max_dim = max_dim;
        opt.max_steps = max_steps;
        opt.coeff = coeff;
        return emit_plot(rips_document(points, opt));
      },
      py::arg("points"), py::arg("max_dim"), py::arg("max_steps"),
      py::arg("coeff") = "gf2", "SVG bar-code plot for a point cloud.");
}
