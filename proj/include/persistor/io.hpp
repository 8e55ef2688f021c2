#pragma once

#include "persistor/persistence_algebra.hpp"
#include "persistor/rips.hpp"

#include <map>
#include <string>
#include <vector>

namespace persistor {

// Minimal JSON value with canonical serialization: object keys sorted,
// reals printed with 17 significant digits.
struct JsonValue {
  enum class Type { null, boolean, integer, real, string, array, object };
  Type type = Type::null;
  bool b = false;
  long long i = 0;
  double d = 0.0;
  std::string s;
  std::vector<JsonValue> arr;
  std::map<std::string, JsonValue> obj;

  static JsonValue boolean(bool v);
  static JsonValue integer(long long v);
  static JsonValue real(double v);
  static JsonValue str(std::string v);
  static JsonValue array();
  static JsonValue object();
};

std::string to_canonical_json(const JsonValue& v);

// One serialized bar endpoint: a step/critical index, a midpoint (k, k+1),
// or an infinite end.
struct BarEnd {
  bool infinite = false;
  bool midpoint = false;
  int index = 0; // k; midpoints stand for (k, k+1)
  double value = 0.0;
  EndKind kind = EndKind::closed;
};

struct DocumentBar {
  int dim = 0;
  BarEnd left, right;
  long long mult = 1;
  int generator = -1;        // posneg documents only
  std::string sign;          // "positive" / "negative" for posneg documents
};

struct BarcodeDocument {
  JsonValue meta = JsonValue::object();
  std::vector<DocumentBar> bars;
  std::vector<double> axis; // tick values for the plot
};

JsonValue document_json(const BarcodeDocument& doc);
std::string emit_plot(const BarcodeDocument& doc);
void emit_plot(const BarcodeDocument& doc, const std::string& path);

// File formats. Lines may carry `#` comments; blank lines are skipped.
PointCloud read_point_cloud(const std::string& path);
std::vector<Simplex> read_simplex_list(const std::string& path);
std::vector<std::pair<VertexId, double>> read_vertex_values(const std::string& path);

void write_text_atomic(const std::string& path, const std::string& text);
std::string fnv1a_hash_file(const std::string& path);

} // namespace persistor
