#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twcert/certificates.hpp"
#include "twcert/graph.hpp"

// Rooted decompositions of graphs without a k-wheel minor.
//
// Roots are given as vertex sequences: two vertices for an edge, or the
// vertices of a cycle in cyclic order. Every decomposition returned for
// (G, C, k) is V(C)-rooted with bags of at most bag_bound(k) vertices; every
// model is a k-wheel model in G (rim vertices 0..k-1, hub k).
namespace twcert::wheel {

/// max{⌊3k/2⌋ − 3, k}.
int bag_bound(int k);

/// Lexicographic recursion measure (|V(G)|, |V(G)| − |V(C)|).
struct RecursionMeasure {
  std::size_t vertices;
  std::size_t outside_root;
  auto operator<=>(const RecursionMeasure&) const = default;
};

/// A C-edge v1vc, a path P′ = v1 · inner · vc internally disjoint from V(C),
/// and a largest component M of G − (V(C) ∪ V(P′)).
struct PathChoice {
  Vertex v1 = -1;
  Vertex vc = -1;
  std::vector<Vertex> inner;  // P, ordered from the v1 end
  VertexSet largest;          // M

  std::vector<Vertex> full_path() const;
};

struct Interval {
  std::vector<Vertex> inner;  // open interval, in path order
  Vertex left = -1;           // endpoints of the closed interval (A_I)
  Vertex right = -1;
  VertexSet grown;            // Y_I
  VertexSet attachments;      // N(Y_I)
};

/// A stretch of P before the first (after the last) attachment vertex and
/// the component of G − (V(C) ∪ A) containing it.
struct EndSegment {
  std::vector<Vertex> inner;
  bool at_v1_end = true;
  VertexSet grown;
  VertexSet attachments;
};

struct IntervalStructure {
  VertexSet hub_neighbors;  // N(M)
  VertexSet attachments;    // A = V(P) ∩ N(M)
  Vertex first = -1;        // a, nearest v1 on P′
  Vertex last = -1;         // a′, nearest vc on P′
  std::vector<Interval> intervals;
  std::vector<EndSegment> end_segments;
  std::vector<Vertex> outer_cycle;  // C′: C with v1vc replaced by P′
};

struct JumpTable {
  std::map<Vertex, VertexSet> targets;  // S_r
  VertexSet with_jumps;                 // S
  VertexSet bad;
};

/// A strictly better path choice found by replaying a maximality argument.
struct ImprovementWitness {
  PathChoice better;
  std::string reason;
};

/// Throws InputError unless `root` is an edge of G or a cycle of G with at
/// most k−1 vertices.
void validate_root(const Graph& g, const std::vector<Vertex>& root, int k);

DecomposeOutcome decompose_wheel(const Graph& g, std::optional<std::vector<Vertex>> root, int k);

/// The connectivity reductions (blocks, components of G − V(C), C-vertices
/// without outside neighbours). Returns the finished outcome when one fires,
/// nothing when G is already normalized.
std::optional<DecomposeOutcome> reduce_connectivity(const Graph& g, const std::vector<Vertex>& root, int k);

/// Shortest P′ over all C-edges, or the direct path-decomposition when
/// V(C) ∪ V(P′) = V(G). Requires a normalized instance.
std::variant<PathChoice, RootedTreeDecomposition> initial_path(const Graph& g, const std::vector<Vertex>& root);

/// Builds the choice for (v1, vc, inner), picking the largest component.
PathChoice make_choice(const Graph& g, const std::vector<Vertex>& root, Vertex v1, Vertex vc,
                       std::vector<Vertex> inner);

/// A path Q in G − E(C) between two vertices of P′, internally avoiding
/// V(C) ∪ V(P′) ∪ V(M), that skips over an attachment vertex.
std::optional<ImprovementWitness> find_crossing_path(const Graph& g, const std::vector<Vertex>& root,
                                                     const PathChoice& choice);

std::variant<IntervalStructure, MinorModel> build_interval_structure(const Graph& g,
                                                                     const std::vector<Vertex>& root,
                                                                     const PathChoice& choice, int k);

JumpTable compute_jumps(const Graph& g, const std::vector<Vertex>& root, const PathChoice& choice,
                        const IntervalStructure& structure);

/// Searches adjacent C-vertices r, r′ with jumps avoiding M for a path P*
/// between them that frees an attachment vertex. With `only_bad`, r must be
/// bad and the jump from r must end outside {a, a′}.
std::optional<ImprovementWitness> find_jump_improvement(const Graph& g, const std::vector<Vertex>& root,
                                                        const PathChoice& choice,
                                                        const IntervalStructure& structure,
                                                        const JumpTable& jumps, bool only_bad);

/// Runs every maximality check the construction relies on.
std::optional<ImprovementWitness> check_maximality(const Graph& g, const std::vector<Vertex>& root,
                                                   const PathChoice& choice, int k);

/// N(Y_I)-rooted decomposition of the contracted interval graph G_I′, or a
/// k-wheel model lifted into G.
DecomposeOutcome decompose_interval(const Graph& g, const std::vector<Vertex>& root, const PathChoice& choice,
                                    const IntervalStructure& structure, std::size_t interval, int k);

using CentralResult = std::variant<RootedTreeDecomposition, MinorModel, ImprovementWitness>;

/// Decomposes G* = G[V(C) ∪ A], attaches the recursive pieces for every
/// component of G − V(G*), or recurses on the larger root C′ when M is the
/// only such component and sees all of C′.
CentralResult assemble_central(const Graph& g, const std::vector<Vertex>& root, int k, const PathChoice& choice,
                               const IntervalStructure& structure);

/// k-wheel model with hub `hub` and rim obtained by contracting `rim` (a
/// cycle disjoint from hub, listed in order) onto k neighbours of the hub.
MinorModel wheel_model(const Graph& g, const VertexSet& hub, const std::vector<Vertex>& rim, int k);

}  // namespace twcert::wheel
