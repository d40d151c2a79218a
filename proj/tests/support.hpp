#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "twcert/graph.hpp"

namespace twcert::testing {

inline Graph make_graph(int n, std::initializer_list<Edge> edges) {
  std::vector<Edge> list(edges);
  return Graph::from_edges(n, list);
}

inline Graph subdivided_wheel(int k) {
  // Hub 0, rim 1..k, each rim edge subdivided by k+1..2k.
  Graph g(2 * k + 1);
  for (int i = 1; i <= k; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, k + i);
    g.add_edge(k + i, i % k + 1);
  }
  return g;
}

/// Smallest |Z| such that G − Z has no path from source − Z to target − Z,
/// by trying every Z. Requires vertices 0..n-1 with n ≤ 20.
inline int brute_force_min_cut(const Graph& g, const VertexSet& source, const VertexSet& target) {
  const int n = static_cast<int>(g.num_vertices());
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  std::uint32_t s_mask = 0, x_mask = 0;
  for (Vertex v : source) s_mask |= 1u << v;
  for (Vertex v : target) x_mask |= 1u << v;
  int best = n;
  for (std::uint32_t z = 0; z < (1u << n); ++z) {
    const int size = std::popcount(z);
    if (size >= best) continue;
    const std::uint32_t open = ~z & ((1u << n) - 1);
    std::uint32_t reached = s_mask & open, frontier = reached;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint32_t fresh = adj[v] & open & ~reached;
      reached |= fresh;
      frontier |= fresh;
    }
    if (!(reached & x_mask)) best = size;
  }
  return best;
}

}  // namespace twcert::testing
