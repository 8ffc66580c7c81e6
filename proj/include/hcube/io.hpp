#pragma once

#include "hcube/cube.hpp"
#include "hcube/graphs.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hcube {

// %.17g: parses back to the identical bits, and the text is byte-stable,
// which the deterministic-output contract leans on. Non-finite values
// become "null".
std::string format_double(double v);

// Streaming JSON emitter preserving insertion order, doubles through
// format_double. Minimal by design: the output side must be byte-stable,
// so it is kept in-tree rather than delegated.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);

 private:
  void separator();
  std::ostream& out_;
  std::vector<bool> first_;   // per nesting level
  bool pending_key_ = false;
};

// {"n": int, "values": [2^n reals]} in index order.
CubeFunction read_function_json(std::istream& in);
CubeFunction read_function_file(const std::string& path);
void write_function_json(std::ostream& out, const CubeFunction& f);

// {"n": int, "coeffs": [{"mask": int, "value": real}, ...]}; masks may be
// sparse, each at most once.
FourierExpansion read_expansion_json(std::istream& in);
FourierExpansion read_expansion_file(const std::string& path);
void write_expansion_json(std::ostream& out, const FourierExpansion& e);

// First line "n m", then m lines "u v", vertices 1-indexed.
Graph read_graph_text(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph_text(std::ostream& out, const Graph& g);

}  // namespace hcube
