#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twcert {

using Vertex = int;
using VertexSet = std::set<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

// Malformed caller input (bad edge, violated precondition).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An instance exceeds a configured size limit of an exhaustive routine.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proof step that must hold did not; always an implementation bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define TWCERT_CHECK(cond, msg)                                              \
  do {                                                                       \
    if (!(cond))                                                             \
      throw ::twcert::InternalError(std::string(__func__) + ": " + (msg));   \
  } while (0)

/// Simple undirected graph over nonnegative integer labels.
///
/// Labels need not be contiguous: induced subgraphs and contractions keep the
/// labels of the host graph, so certificates computed on a piece can be read
/// directly in the host. Adjacency lists are kept sorted.
class Graph {
 public:
  Graph() = default;
  /// Graph on vertices 0..n-1 with no edges.
  explicit Graph(int n);
  static Graph from_edges(int n, std::span<const Edge> edges);

  void add_vertex(Vertex v);
  /// Adds uv. Throws InputError on loops or absent endpoints; an existing
  /// edge is left alone.
  void add_edge(Vertex u, Vertex v);

  bool has_vertex(Vertex v) const {
    return v >= 0 && static_cast<std::size_t>(v) < present_.size() && present_[v];
  }
  bool has_edge(Vertex u, Vertex v) const;

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Vertex>& neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  /// One past the largest label ever added.
  int label_bound() const { return static_cast<int>(present_.size()); }
  std::vector<Edge> edges() const;
  VertexSet vertex_set() const { return {vertices_.begin(), vertices_.end()}; }

  Graph induced(const VertexSet& keep) const;
  Graph without(const VertexSet& drop) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges() == b.edges();
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> present_;
  std::vector<Vertex> vertices_;
  std::size_t num_edges_ = 0;
};

/// Maps each vertex of a derived graph to the connected set of original
/// vertices it stands for.
struct ContractionTrace {
  std::map<Vertex, VertexSet> branch_of;

  static ContractionTrace identity(const Graph& g);
  /// Original vertices behind `v`; {v} when `v` is untracked.
  VertexSet expand(Vertex v) const;
  VertexSet expand(const VertexSet& vs) const;
};

/// (A, B) with A ∪ B = V(G) and no edge between A−B and B−A.
struct Separation {
  VertexSet a;
  VertexSet b;
  std::size_t order() const;
};

// Maximal connected vertex sets, ordered by their smallest vertex.
std::vector<VertexSet> components(const Graph& g);
std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed);
bool is_connected(const Graph& g);

struct BlockCutDecomposition {
  std::vector<VertexSet> blocks;
  VertexSet cut_vertices;
};
/// Biconnected blocks (isolated vertices form singleton blocks); blocks are
/// ordered by their smallest vertex.
BlockCutDecomposition blocks_and_cutvertices(const Graph& g);
bool is_2connected(const Graph& g);

VertexSet neighborhood_of_set(const Graph& g, const VertexSet& s);

/// Contracts every edge in `edges`; each merged class keeps its smallest label.
std::pair<Graph, ContractionTrace> contract_edges(const Graph& g, std::span<const Edge> edges,
                                                  const ContractionTrace& trace);

struct ContractionGroup {
  Vertex keep;
  VertexSet members;  // must contain `keep` and induce a connected subgraph
};
/// Contracts each group into its designated vertex. Loops and parallel edges
/// are dropped.
std::pair<Graph, ContractionTrace> contract_groups(const Graph& g,
                                                   std::span<const ContractionGroup> groups,
                                                   const ContractionTrace& trace);

/// Shortest path from any vertex of `from` to any vertex of `to` whose
/// interior avoids `blocked`; empty when none exists.
std::vector<Vertex> shortest_path(const Graph& g, const VertexSet& from, const VertexSet& to,
                                  const VertexSet& blocked = {});

bool is_tree(const Graph& g);
bool induces_connected(const Graph& g, const VertexSet& s);

// Small set helpers used throughout.
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);
std::string to_string(const VertexSet& s);

}  // namespace twcert
