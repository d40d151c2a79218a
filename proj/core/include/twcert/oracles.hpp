#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twcert/certificates.hpp"
#include "twcert/graph.hpp"

// Exhaustive reference solvers for desk-scale instances.
namespace twcert::oracles {

struct Limits {
  int treewidth_vertices = 16;
  int minor_host_vertices = 12;
  int minor_pattern_vertices = 8;
};

struct TreewidthResult {
  int width = -1;
  std::vector<Vertex> elimination_order;
  RootedTreeDecomposition witness;
};

/// Subset dynamic program over elimination orderings. Throws LimitExceeded
/// above `limit` vertices.
TreewidthResult exact_treewidth(const Graph& g, int limit = Limits{}.treewidth_vertices);

/// Branch and bound over elimination orderings with a memo on the
/// eliminated set; shares no code with exact_treewidth.
int treewidth_branch_and_bound(const Graph& g, int limit = Limits{}.treewidth_vertices);

/// Decomposition induced by eliminating vertices in `order` (all of V(G)),
/// rooted at the bag of the last vertex.
RootedTreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order);

std::optional<MinorModel> exact_minor_test(const Graph& host, const Graph& pattern, const Limits& limits = {});

/// One graph per isomorphism class of connected graphs on n vertices, in
/// canonical labelling, sorted by canonical code. Throws LimitExceeded for n > 8.
const std::vector<Graph>& enumerate_connected_graphs(int n);

/// Canonical adjacency code of a graph with at most 11 vertices labelled 0..n-1.
std::uint64_t canonical_code(const Graph& g);

Graph random_gnp(int n, double p, std::uint64_t seed);

Graph clique(int n);
Graph cycle(int n);
Graph path(int n);
Graph grid(int rows, int cols);
/// Rim 0..k-1, hub k.
Graph wheel(int k);
Graph star(int leaves);
Graph petersen();

/// Relabels the vertices of g to 0..n-1 by `order[i] -> i`.
Graph relabel(const Graph& g, const std::vector<Vertex>& order);

}  // namespace twcert::oracles
