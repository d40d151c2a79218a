#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "twcert/certificates.hpp"
#include "twcert/graph.hpp"

namespace twcert::io {

enum class GraphFormat { EdgeList, Graph6 };

/// Malformed text; the message carries the line or byte position.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Edge list: "n m" header, then m lines "u v" with 0-indexed vertices.
Graph parse_edge_list(std::string_view text);
std::string emit_edge_list(const Graph& g);

/// Standard graph6, with or without the ">>graph6<<" header.
Graph parse_graph6(std::string_view text);
/// Requires vertices 0..n-1.
std::string emit_graph6(const Graph& g);

Graph parse_graph(std::string_view text, GraphFormat format);
/// Graph6 for names ending in .g6, edge list otherwise.
GraphFormat format_for_path(std::string_view path);

struct TdDocument {
  RootedTreeDecomposition decomposition;
  int vertex_count = 0;
};

/// .td text, 1-indexed: "s td <bags> <max bag> <n>", one "b <id> <v...>" line
/// per bag (bag 1 is the root), then one "<parent> <child>" line per node
/// other than the root, in node order.
std::string emit_decomposition(const RootedTreeDecomposition& d, int vertex_count);
TdDocument parse_decomposition(std::string_view text);

/// {"pattern": {"n": h, "edges": [[u, v], ...]}, "branch": {"0": [...], ...}}.
std::string emit_minor_model(const MinorModel& m);
MinorModel parse_minor_model(std::string_view text);

/// key=value lines; '#' starts a comment.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace twcert::io
