#pragma once

#include <string>
#include <vector>

#include "twcert/graph.hpp"

namespace twcert {

/// Pairwise vertex-disjoint paths from `source` to `target`, each internally
/// disjoint from source ∪ target. A vertex of source ∩ target is a path of
/// one vertex.
struct PathSystem {
  std::vector<std::vector<Vertex>> paths;
  VertexSet source;
  VertexSet target;

  std::size_t size() const { return paths.size(); }
  VertexSet vertices() const;
};

/// Empty string when `p` satisfies every PathSystem invariant in `g`,
/// otherwise a description of the first violation.
std::string validate_path_system(const Graph& g, const PathSystem& p);

PathSystem max_disjoint_paths(const Graph& g, const VertexSet& source, const VertexSet& target);

struct MinSeparation {
  Separation separation;
  PathSystem paths;
  /// crossing[i] is the unique vertex of paths.paths[i] inside A ∩ B.
  std::vector<Vertex> crossing;
};

/// Minimum-order separation (A, B) with source ⊆ A and target ⊆ B, chosen
/// closest to the source, together with |A ∩ B| disjoint paths.
MinSeparation min_vertex_separation(const Graph& g, const VertexSet& source, const VertexSet& target);

std::string validate_min_separation(const Graph& g, const MinSeparation& s);

}  // namespace twcert
