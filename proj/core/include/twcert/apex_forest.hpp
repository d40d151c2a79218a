#pragma once

#include <map>
#include <variant>
#include <vector>

#include "twcert/certificates.hpp"
#include "twcert/graph.hpp"

namespace twcert::apex_forest {

/// An (S,w)-octopus: an S-rooted tree-decomposition in which every bag of
/// size at least w+1 sits at a non-root leaf whose parent bag has at most |S|
/// vertices.
struct Octopus {
  RootedTreeDecomposition decomposition;
  VertexSet root_set;
  int budget = 0;

  /// Nodes with a child whose bag exceeds the budget.
  std::vector<int> wrists() const;
  /// Wrists whose own bag has exactly |root_set| vertices.
  std::vector<int> thick_wrists() const;
};

/// Maps each vertex of a subtree of F to a vertex of S.
using Embedding = std::map<Vertex, Vertex>;

using OctopusOrModel = std::variant<Octopus, MinorModel>;

Verdict verify_octopus(const Graph& g, const Octopus& o, bool thin);

/// Root S; for each component C of G−S a node N(C) with a leaf child
/// N(C) ∪ V(C).
/// Requires N(C) ⊊ S for every component. A negative budget means |S|.
Octopus easy_octopus(const Graph& g, const VertexSet& s, int budget = -1);

/// `emb` embeds all of F spanning in G[S]. Returns the F⁺ model when some
/// component of G−S sees all of S.
OctopusOrModel base_octopus(const Graph& g, const VertexSet& s, const Graph& forest, const Embedding& emb);

/// One rerouting step at a thick wrist that is not |S|-linked to S. The
/// result has strictly fewer thick wrists.
Octopus reroute_thick_wrist(const Graph& g, const Octopus& o, int wrist);

/// Reroutes until every thick wrist admits |S| disjoint S–X_t paths.
Octopus minimize_thick_wrists(const Graph& g, const Octopus& o);

/// Thin (S,|V(F)|)-octopus of G, or an F⁺ model in G. `emb` embeds the
/// subtree of F on its key set spanning in G[S].
OctopusOrModel build_thin_octopus(const Graph& g, const VertexSet& s, const Graph& forest, const Embedding& emb);

/// Tree-decomposition of width at most |V(F)|−1, or an F⁺ model. The model's
/// pattern is PatternSpec::apex_forest(forest).resolved.
DecomposeOutcome decompose_apex_forest(const Graph& g, const Graph& forest);

}  // namespace twcert::apex_forest
