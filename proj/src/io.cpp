#include "persistor/io.hpp"

#include "persistor/common.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace persistor {

JsonValue JsonValue::boolean(bool v) {
  JsonValue j;
  j.type = Type::boolean;
  j.b = v;
  return j;
}

JsonValue JsonValue::integer(long long v) {
  JsonValue j;
  j.type = Type::integer;
  j.i = v;
  return j;
}

JsonValue JsonValue::real(double v) {
  JsonValue j;
  j.type = Type::real;
  j.d = v;
  return j;
}

JsonValue JsonValue::str(std::string v) {
  JsonValue j;
  j.type = Type::string;
  j.s = std::move(v);
  return j;
}

JsonValue JsonValue::array() {
  JsonValue j;
  j.type = Type::array;
  return j;
}

JsonValue JsonValue::object() {
  JsonValue j;
  j.type = Type::object;
  return j;
}

namespace {

std::string format_real(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_json(std::string& out, const JsonValue& v) {
  switch (v.type) {
    case JsonValue::Type::null: out += "null"; break;
    case JsonValue::Type::boolean: out += v.b ? "true" : "false"; break;
    case JsonValue::Type::integer: out += std::to_string(v.i); break;
    case JsonValue::Type::real: out += format_real(v.d); break;
    case JsonValue::Type::string: append_escaped(out, v.s); break;
    case JsonValue::Type::array: {
      out += '[';
      for (std::size_t k = 0; k < v.arr.size(); ++k) {
        if (k) out += ',';
        append_json(out, v.arr[k]);
      }
      out += ']';
      break;
    }
    case JsonValue::Type::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, val] : v.obj) {
        if (!first) out += ',';
        first = false;
        append_escaped(out, key);
        out += ':';
        append_json(out, val);
      }
      out += '}';
      break;
    }
  }
}

JsonValue end_json(const BarEnd& e) {
  JsonValue j = JsonValue::object();
  if (e.infinite) {
    j.obj["index"] = JsonValue::str("inf");
    j.obj["value"] = JsonValue::str("inf");
    j.obj["kind"] = JsonValue::str("infinite");
    return j;
  }
  if (e.midpoint) {
    JsonValue pair = JsonValue::array();
    pair.arr.push_back(JsonValue::integer(e.index));
    pair.arr.push_back(JsonValue::integer(e.index + 1));
    j.obj["index"] = std::move(pair);
  } else {
    j.obj["index"] = JsonValue::integer(e.index);
  }
  j.obj["value"] = JsonValue::real(e.value);
  j.obj["kind"] = JsonValue::str(e.kind == EndKind::closed ? "closed" : "open");
  return j;
}

} // namespace

std::string to_canonical_json(const JsonValue& v) {
  std::string out;
  append_json(out, v);
  out += '\n';
  return out;
}

JsonValue document_json(const BarcodeDocument& doc) {
  JsonValue root = JsonValue::object();
  root.obj["meta"] = doc.meta;
  JsonValue bars = JsonValue::array();
  for (const DocumentBar& b : doc.bars) {
    if (b.mult < 1) throw internal_error("bar with multiplicity < 1");
    JsonValue j = JsonValue::object();
    j.obj["dim"] = JsonValue::integer(b.dim);
    j.obj["left"] = end_json(b.left);
    j.obj["right"] = end_json(b.right);
    j.obj["mult"] = JsonValue::integer(b.mult);
    if (b.generator >= 0) j.obj["generator"] = JsonValue::integer(b.generator);
    if (!b.sign.empty()) j.obj["sign"] = JsonValue::str(b.sign);
    bars.arr.push_back(std::move(j));
  }
  root.obj["bars"] = std::move(bars);
  return root;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// strips comments, splits into nonblank lines
std::vector<std::string> data_lines(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) lines.push_back(line);
  }
  return lines;
}

} // namespace

PointCloud read_point_cloud(const std::string& path) {
  PointCloud X;
  for (std::string line : data_lines(path)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream in(line);
    std::vector<double> p;
    double x;
    while (in >> x) {
      if (!std::isfinite(x)) throw input_error("non-finite coordinate in " + path);
      p.push_back(x);
    }
    if (!in.eof()) throw input_error("malformed point line in " + path + ": " + line);
    if (p.empty()) continue;
    if (!X.empty() && p.size() != X.front().size())
      throw input_error("inconsistent point dimension in " + path);
    X.push_back(std::move(p));
  }
  if (X.empty()) throw input_error("no points in " + path);
  return X;
}

std::vector<Simplex> read_simplex_list(const std::string& path) {
  std::vector<Simplex> out;
  for (const std::string& line : data_lines(path)) {
    std::istringstream in(line);
    Simplex s;
    long long v;
    while (in >> v) {
      if (v <= 0) throw input_error("vertex ids must be positive in " + path);
      s.push_back(static_cast<VertexId>(v));
    }
    if (!in.eof()) throw input_error("malformed simplex line in " + path + ": " + line);
    if (s.empty()) continue;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw input_error("repeated vertex in simplex in " + path + ": " + line);
    out.push_back(std::move(s));
  }
  if (out.empty()) throw input_error("no simplices in " + path);
  return out;
}

std::vector<std::pair<VertexId, double>> read_vertex_values(const std::string& path) {
  std::vector<std::pair<VertexId, double>> out;
  for (const std::string& line : data_lines(path)) {
    std::istringstream in(line);
    long long id;
    double v;
    if (!(in >> id >> v) || id <= 0 || !std::isfinite(v))
      throw input_error("malformed value line in " + path + ": " + line);
    std::string rest;
    if (in >> rest) throw input_error("trailing tokens on value line in " + path + ": " + line);
    out.emplace_back(static_cast<VertexId>(id), v);
  }
  if (out.empty()) throw input_error("no values in " + path);
  return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write file: " + path);
    out << text;
    out.flush();
    if (!out) throw input_error("write failed: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw input_error("cannot replace file: " + path);
  }
}

std::string fnv1a_hash_file(const std::string& path) {
  const std::string text = read_file(path);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

} // namespace

std::string emit_plot(const BarcodeDocument& doc) {
  const double margin_l = 64, margin_r = 44, margin_t = 28, margin_b = 44;
  const double row_h = 18, plot_w = 560;

  // expand multiplicities into rows; deterministic order
  std::vector<DocumentBar> rows;
  for (const DocumentBar& b : doc.bars)
    for (long long k = 0; k < b.mult; ++k) rows.push_back(b);

  double lo = 0.0, hi = 1.0;
  if (!doc.axis.empty()) {
    lo = *std::min_element(doc.axis.begin(), doc.axis.end());
    hi = *std::max_element(doc.axis.begin(), doc.axis.end());
  }
  for (const DocumentBar& b : rows) {
    if (!b.left.infinite) {
      lo = std::min(lo, b.left.value);
      hi = std::max(hi, b.left.value);
    }
    if (!b.right.infinite) {
      lo = std::min(lo, b.right.value);
      hi = std::max(hi, b.right.value);
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double span = hi - lo;
  auto X = [&](double v) { return margin_l + (v - lo) / span * plot_w; };
  const double x_inf = margin_l + plot_w + 22;

  const double height = margin_t + std::max<double>(rows.size(), 1) * row_h + margin_b;
  const double width = margin_l + plot_w + margin_r + 30;

  std::string svg;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "viewBox=\"0 0 %g %g\">\n",
                width, height, width, height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axis with ticks at the schedule values
  const double axis_y = height - margin_b + 10;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"black\"/>\n",
                fmt6(margin_l).c_str(), fmt6(axis_y).c_str(), fmt6(margin_l + plot_w).c_str(),
                fmt6(axis_y).c_str());
  svg += buf;
  for (double t : doc.axis) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"black\"/>\n",
                  fmt6(X(t)).c_str(), fmt6(axis_y - 4).c_str(), fmt6(X(t)).c_str(),
                  fmt6(axis_y + 4).c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%s\" y=\"%s\" font-size=\"10\" text-anchor=\"middle\">%s</text>\n",
                  fmt6(X(t)).c_str(), fmt6(axis_y + 16).c_str(), fmt6(t).c_str());
    svg += buf;
  }

  int last_dim = -1;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const DocumentBar& b = rows[k];
    const double y = margin_t + (k + 0.5) * row_h;
    if (b.dim != last_dim) {
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%s\" y=\"%s\" font-size=\"11\" font-weight=\"bold\">H%d</text>\n",
                    fmt6(8.0).c_str(), fmt6(y + 4).c_str(), b.dim);
      svg += buf;
      last_dim = b.dim;
    }
    const double x1 = b.left.infinite ? margin_l : X(b.left.value);
    const double x2 = b.right.infinite ? x_inf : X(b.right.value);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"black\" "
                  "stroke-width=\"2\"/>\n",
                  fmt6(x1).c_str(), fmt6(y).c_str(), fmt6(x2).c_str(), fmt6(y).c_str());
    svg += buf;
    auto glyph = [&](const BarEnd& e, double x, bool right_side) {
      if (e.infinite) {
        // arrowhead pointing outward
        const double dir = right_side ? 1.0 : -1.0;
        std::snprintf(buf, sizeof buf,
                      "<polygon points=\"%s,%s %s,%s %s,%s\" fill=\"black\" "
                      "class=\"arrow\"/>\n",
                      fmt6(x + 8 * dir).c_str(), fmt6(y).c_str(), fmt6(x).c_str(),
                      fmt6(y - 4).c_str(), fmt6(x).c_str(), fmt6(y + 4).c_str());
        svg += buf;
      } else if (e.kind == EndKind::closed) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%s\" cy=\"%s\" r=\"3.5\" fill=\"black\" "
                      "class=\"closed\"/>\n",
                      fmt6(x).c_str(), fmt6(y).c_str());
        svg += buf;
      } else {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%s\" cy=\"%s\" r=\"3.5\" fill=\"white\" stroke=\"black\" "
                      "class=\"open\"/>\n",
                      fmt6(x).c_str(), fmt6(y).c_str());
        svg += buf;
      }
    };
    glyph(b.left, x1, false);
    glyph(b.right, x2, true);
  }

  svg += "</svg>\n";
  return svg;
}

void emit_plot(const BarcodeDocument& doc, const std::string& path) {
  write_text_atomic(path, emit_plot(doc));
}

} // namespace persistor
