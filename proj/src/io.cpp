#include "hcube/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hcube {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ << '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  out_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ << '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  out_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  if (first_.back())
    first_.back() = false;
  else
    out_ << ',';
  out_ << '"' << k << "\":";
  pending_key_ = true;
  return *this;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (first_.back())
    first_.back() = false;
  else
    out_ << ',';
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separator();
  out_ << '"';
  for (const char c : v) {
    switch (c) {
      case '"': out_ << "\\\""; break;
      case '\\': out_ << "\\\\"; break;
      case '\n': out_ << "\\n"; break;
      case '\t': out_ << "\\t"; break;
      default: out_ << c;
    }
  }
  out_ << '"';
  return *this;
}

namespace {

using nlohmann::json;

json parse_stream(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
}

int read_n_field(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::runtime_error("expected an object with integer field \"n\"");
  const std::int64_t n = j["n"].get<std::int64_t>();
  if (n < 0 || n > dimension_cap())
    throw std::runtime_error("field \"n\" out of range");
  return static_cast<int>(n);
}

}  // namespace

CubeFunction read_function_json(std::istream& in) {
  const json j = parse_stream(in);
  const int n = read_n_field(j);
  if (!j.contains("values") || !j["values"].is_array())
    throw std::runtime_error("expected array field \"values\"");
  const auto& vals = j["values"];
  const Index size = Index{1} << n;
  if (static_cast<Index>(vals.size()) != size)
    throw std::runtime_error("\"values\" must have exactly 2^n entries");
  Vec v(size);
  for (Index i = 0; i < size; ++i) {
    const auto& e = vals[static_cast<std::size_t>(i)];
    if (!e.is_number())
      throw std::runtime_error("\"values\" entries must be numbers");
    v[i] = e.get<double>();
  }
  try {
    return CubeFunction(n, std::move(v));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

FourierExpansion read_expansion_json(std::istream& in) {
  const json j = parse_stream(in);
  const int n = read_n_field(j);
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::runtime_error("expected array field \"coeffs\"");
  const Index size = Index{1} << n;
  Vec c = Vec::Zero(size);
  std::vector<bool> seen(static_cast<std::size_t>(size), false);
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_object() || !entry.contains("mask") ||
        !entry.contains("value") || !entry["mask"].is_number_integer() ||
        !entry["value"].is_number())
      throw std::runtime_error(
          "\"coeffs\" entries must be {\"mask\": int, \"value\": number}");
    const std::int64_t mask = entry["mask"].get<std::int64_t>();
    if (mask < 0 || mask >= size)
      throw std::runtime_error("coefficient mask out of range");
    if (seen[static_cast<std::size_t>(mask)])
      throw std::runtime_error("duplicate coefficient mask");
    seen[static_cast<std::size_t>(mask)] = true;
    c[mask] = entry["value"].get<double>();
  }
  try {
    return FourierExpansion(n, std::move(c));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

void write_function_json(std::ostream& out, const CubeFunction& f) {
  JsonWriter w(out);
  w.begin_object();
  w.key("n").value(f.n());
  w.key("values").begin_array();
  for (Index i = 0; i < f.size(); ++i) w.value(f.values()[i]);
  w.end_array();
  w.end_object();
  out << '\n';
}

void write_expansion_json(std::ostream& out, const FourierExpansion& e) {
  JsonWriter w(out);
  w.begin_object();
  w.key("n").value(e.n());
  w.key("coeffs").begin_array();
  for (Index s = 0; s < e.size(); ++s) {
    if (e.coeffs()[s] == 0.0) continue;
    w.begin_object();
    w.key("mask").value(static_cast<std::int64_t>(s));
    w.key("value").value(e.coeffs()[s]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  out << '\n';
}

Graph read_graph_text(std::istream& in) {
  std::int64_t n = 0, m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("graph file: expected \"n m\"");
  if (n < 0 || n > (1 << 20) || m < 0)
    throw std::runtime_error("graph file: bad header");
  Graph g(static_cast<int>(n));
  for (std::int64_t k = 0; k < m; ++k) {
    std::int64_t u = 0, v = 0;
    if (!(in >> u >> v))
      throw std::runtime_error("graph file: missing edge line");
    if (u < 1 || v < 1 || u > n || v > n)
      throw std::runtime_error("graph file: vertex out of range (1-indexed)");
    try {
      g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("graph file: ") + e.what());
    }
  }
  return g;
}

void write_graph_text(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.has_edge(i, j)) out << i + 1 << ' ' << j + 1 << '\n';
}

CubeFunction read_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_function_json(in);
}

FourierExpansion read_expansion_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_expansion_json(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph_text(in);
}

}  // namespace hcube
