#pragma once

#include "persistor/io.hpp"

#include <string>

namespace persistor {

struct RipsOptions {
  std::string points_file;
  int max_dim = 1;     // m
  int max_steps = 0;   // S
  std::string coeff = "gf2";
  std::string out;
  std::string plot;
};

struct MapOptions {
  std::string complex_file;
  std::string values_file;
  double perturb = 0.0; // > 0: deterministic perturbation of non-generic values
  std::string out;
  std::string plot;
};

struct LevelOptions : MapOptions {
  int method = 2;
};

struct PosnegOptions : MapOptions {
  std::string level; // "k" or "k+1/2"
};

struct SublevelOptions : MapOptions {
  std::string via = "direct"; // direct | level
};

BarcodeDocument cmd_rips(const RipsOptions& opt);
BarcodeDocument cmd_level(const LevelOptions& opt);
BarcodeDocument cmd_posneg(const PosnegOptions& opt);
BarcodeDocument cmd_sublevel(const SublevelOptions& opt);

// Document builders behind the commands; file fields in the options are used
// for metadata only and may be empty for in-memory callers.
struct PLMap;
PLMap make_pl_map(const std::vector<Simplex>& simplices,
                  std::vector<std::pair<VertexId, double>> values, double perturb);
BarcodeDocument rips_document(const PointCloud& X, const RipsOptions& opt);
BarcodeDocument level_document(const PLMap& f, const LevelOptions& opt);
BarcodeDocument posneg_document(const PLMap& f, const PosnegOptions& opt);
BarcodeDocument sublevel_document(const PLMap& f, const SublevelOptions& opt);

// Full argument parsing and dispatch; returns the process exit code
// (0 ok, 2 input error, 3 precondition error, 4 internal inconsistency).
int run_cli(int argc, const char* const* argv);

} // namespace persistor
