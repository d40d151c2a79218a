#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "twcert/graph.hpp"

namespace twcert {

/// Tree of bags with node 0 as the root (parent -1).
struct RootedTreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<int> parent;

  static RootedTreeDecomposition single(VertexSet bag);
  /// Builds a rooted decomposition from an undirected tree over `bags`,
  /// renumbering nodes so that `root` becomes node 0 (BFS order).
  static RootedTreeDecomposition from_tree(std::vector<VertexSet> bags,
                                           const std::vector<std::pair<int, int>>& tree_edges,
                                           int root);

  int add_node(VertexSet bag, int parent_node);
  std::size_t size() const { return bags.size(); }
  bool empty() const { return bags.empty(); }
  const VertexSet& root_bag() const { return bags.at(0); }
  std::vector<std::vector<int>> children() const;
  std::size_t max_bag_size() const;
  /// Copy without the given non-root nodes; the kept nodes must stay connected.
  RootedTreeDecomposition without_nodes(const std::vector<int>& drop) const;
  /// Copies `sub` in as a new subtree whose root hangs below node `at`;
  /// returns the index of the copied root.
  int graft(const RootedTreeDecomposition& sub, int at);

  bool operator==(const RootedTreeDecomposition&) const = default;
};

/// Max bag size minus one. Throws InputError on an empty decomposition.
int width(const RootedTreeDecomposition& d);

struct MinorModel {
  Graph pattern;                  // vertices 0..h-1
  std::vector<VertexSet> branch;  // indexed by pattern vertex

  bool operator==(const MinorModel&) const = default;
};

using DecomposeOutcome = std::variant<RootedTreeDecomposition, MinorModel>;

enum class PatternKind { ApexForest, Wheel };

/// The pattern H of a run: F⁺ for a tree F, or the k-wheel. The apex (hub)
/// is always the highest-numbered pattern vertex.
struct PatternSpec {
  PatternKind kind = PatternKind::ApexForest;
  Graph forest;  // ApexForest only
  int k = 0;     // Wheel only
  Graph resolved;

  static PatternSpec apex_forest(const Graph& tree);
  static PatternSpec wheel(int k);
  Vertex apex() const { return static_cast<Vertex>(resolved.num_vertices()) - 1; }
  std::string name() const;
};

enum class Violation {
  None,
  MalformedTree,
  VertexUncovered,
  EdgeUncovered,
  OccurrenceDisconnected,
  ForeignVertex,
  RootBagMismatch,
  BagTooLarge,
  EmptyBranchSet,
  BranchSetsOverlap,
  BranchSetDisconnected,
  PatternEdgeMissing,
  OversizedBagNotLeaf,
  OversizedBagParentTooLarge,
  ThickWrist,
};

std::string to_string(Violation v);

/// Structured verifier answer: the violated condition plus a witness.
struct Verdict {
  Violation violation = Violation::None;
  std::string witness;

  static Verdict accept() { return {}; }
  static Verdict reject(Violation v, std::string w) { return {v, std::move(w)}; }
  bool ok() const { return violation == Violation::None; }
  explicit operator bool() const { return ok(); }
  std::string describe() const;
  bool operator==(const Verdict&) const = default;
};

Verdict verify_tree_decomposition(const Graph& g, const RootedTreeDecomposition& d,
                                  const std::optional<VertexSet>& required_root_bag = std::nullopt,
                                  std::optional<std::size_t> max_bag = std::nullopt);

Verdict verify_minor_model(const Graph& host, const MinorModel& m);

/// Identifies each child's root with base node z; child root bags must equal
/// the bag at z.
RootedTreeDecomposition attach(const RootedTreeDecomposition& base,
                               const std::vector<std::pair<RootedTreeDecomposition, int>>& children);

/// Re-expresses a model of a contracted graph in the graph the trace refers to.
MinorModel lift_minor_model(const MinorModel& m, const ContractionTrace& trace);

}  // namespace twcert
