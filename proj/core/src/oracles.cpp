#include "twcert/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

namespace twcert::oracles {

namespace {

using Mask = std::uint32_t;

// Dense re-indexing of a graph's vertices into bitmask adjacency.
struct Dense {
  std::vector<Vertex> label;
  std::vector<Mask> adj;

  explicit Dense(const Graph& g) : label(g.vertices()) {
    std::map<Vertex, int> index;
    for (std::size_t i = 0; i < label.size(); ++i) index[label[i]] = static_cast<int>(i);
    adj.assign(label.size(), 0);
    for (auto [u, v] : g.edges()) {
      adj[index[u]] |= Mask{1} << index[v];
      adj[index[v]] |= Mask{1} << index[u];
    }
  }
  int n() const { return static_cast<int>(label.size()); }
  Mask all() const { return n() == 32 ? ~Mask{0} : (Mask{1} << n()) - 1; }
};

Mask neighbours_of(const std::vector<Mask>& adj, Mask s) {
  Mask out = 0;
  for (Mask rest = s; rest; rest &= rest - 1) out |= adj[std::countr_zero(rest)];
  return out & ~s;
}

bool connected_mask(const std::vector<Mask>& adj, Mask s) {
  if (!s) return false;
  Mask seen = s & (~s + 1);
  Mask frontier = seen;
  while (frontier) {
    Mask next = neighbours_of(adj, seen) & s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == s;
}

// Vertices outside s ∪ {v} reachable from v through s.
int q_size(const std::vector<Mask>& adj, Mask s, int v) {
  Mask reach = Mask{1} << v;
  Mask todo = adj[v] & s;
  while (todo) {
    const int u = std::countr_zero(todo);
    reach |= Mask{1} << u;
    todo = (todo | (adj[u] & s)) & ~reach;
  }
  return std::popcount(neighbours_of(adj, reach) & ~s);
}

void check_limit(const Graph& g, int limit, const char* what) {
  if (static_cast<int>(g.num_vertices()) > limit)
    throw LimitExceeded(std::string(what) + ": " + std::to_string(g.num_vertices()) + " vertices exceeds limit " +
                        std::to_string(limit));
}

// Non-induced subgraph embedding of pattern into host (both dense).
bool embed(const std::vector<Mask>& pattern, const std::vector<Mask>& host, std::vector<int>& image) {
  const int pn = static_cast<int>(pattern.size());
  std::vector<int> order(pn);
  for (int i = 0; i < pn; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::popcount(pattern[a]) > std::popcount(pattern[b]); });
  image.assign(pn, -1);
  Mask used = 0;
  std::function<bool(int)> go = [&](int at) {
    if (at == pn) return true;
    const int p = order[at];
    for (int h = 0; h < static_cast<int>(host.size()); ++h) {
      if (used >> h & 1 || std::popcount(host[h]) < std::popcount(pattern[p])) continue;
      bool fits = true;
      for (int q = 0; q < pn && fits; ++q)
        if (image[q] >= 0 && (pattern[p] >> q & 1) && !(host[h] >> image[q] & 1)) fits = false;
      if (!fits) continue;
      image[p] = h;
      used |= Mask{1} << h;
      if (go(at + 1)) return true;
      used &= ~(Mask{1} << h);
      image[p] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace

RootedTreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
  if (order.size() != g.num_vertices() || VertexSet(order.begin(), order.end()) != g.vertex_set())
    throw InputError("elimination order is not a permutation of V(G)");
  if (order.empty()) return RootedTreeDecomposition::single({});
  std::map<Vertex, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::map<Vertex, VertexSet> filled;
  for (Vertex v : g.vertices()) filled[v] = VertexSet(g.neighbors(v).begin(), g.neighbors(v).end());

  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> edges;
  const int last = static_cast<int>(order.size()) - 1;
  for (int i = 0; i <= last; ++i) {
    const Vertex v = order[i];
    VertexSet later;
    for (Vertex w : filled[v])
      if (position[w] > static_cast<std::size_t>(i)) later.insert(w);
    for (Vertex x : later)
      for (Vertex y : later)
        if (x != y) filled[x].insert(y);
    VertexSet bag = later;
    bag.insert(v);
    bags.push_back(std::move(bag));
    if (i == last) break;
    int next = last;
    for (Vertex w : later) next = std::min(next, static_cast<int>(position[w]));
    edges.emplace_back(i, next);
  }
  return RootedTreeDecomposition::from_tree(std::move(bags), edges, last);
}

TreewidthResult exact_treewidth(const Graph& g, int limit) {
  check_limit(g, std::min(limit, 24), "exact_treewidth");
  const Dense d(g);
  const int n = d.n();
  TreewidthResult r;
  if (n == 0) {
    r.witness = RootedTreeDecomposition::single({});
    r.width = -1;
    return r;
  }
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::int8_t> best(states, 0);
  std::vector<std::int8_t> pick(states, -1);
  best[0] = -1;
  for (std::size_t s = 1; s < states; ++s) {
    int value = 127;
    for (Mask rest = static_cast<Mask>(s); rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const Mask before = static_cast<Mask>(s) & ~(Mask{1} << v);
      const int cost = std::max<int>(best[before], q_size(d.adj, before, v));
      if (cost < value) {
        value = cost;
        pick[s] = static_cast<std::int8_t>(v);
      }
    }
    best[s] = static_cast<std::int8_t>(value);
  }
  r.width = best[states - 1];
  for (Mask s = d.all(); s; s &= ~(Mask{1} << pick[s])) r.elimination_order.push_back(d.label[pick[s]]);
  std::reverse(r.elimination_order.begin(), r.elimination_order.end());
  r.witness = decomposition_from_order(g, r.elimination_order);
  TWCERT_CHECK(width(r.witness) == r.width, "witness width differs from the dynamic program");
  return r;
}

int treewidth_branch_and_bound(const Graph& g, int limit) {
  check_limit(g, std::min(limit, 24), "treewidth_branch_and_bound");
  const Dense d(g);
  const int n = d.n();
  if (n == 0) return -1;
  int upper = n - 1;
  std::unordered_map<Mask, int> reached;  // eliminated set -> smallest width seen on arrival

  std::function<void(Mask, const std::vector<Mask>&, int)> search = [&](Mask gone, const std::vector<Mask>& adj,
                                                                         int so_far) {
    const Mask left = d.all() & ~gone;
    const int remaining = std::popcount(left);
    upper = std::min(upper, std::max(so_far, remaining - 1));
    if (remaining - 1 <= so_far) return;
    if (auto it = reached.find(gone); it != reached.end() && it->second <= so_far) return;
    reached[gone] = so_far;
    int min_degree = n;
    for (Mask rest = left; rest; rest &= rest - 1)
      min_degree = std::min(min_degree, std::popcount(adj[std::countr_zero(rest)] & left));
    if (std::max(so_far, min_degree) >= upper) return;
    for (Mask rest = left; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const Mask nb = adj[v] & left;
      const int cost = std::max(so_far, std::popcount(nb));
      if (cost >= upper) continue;
      std::vector<Mask> next = adj;
      for (Mask m = nb; m; m &= m - 1) {
        const int u = std::countr_zero(m);
        next[u] |= nb & ~(Mask{1} << u);
      }
      search(gone | Mask{1} << v, next, cost);
    }
  };
  search(0, d.adj, -1);
  return upper;
}

std::optional<MinorModel> exact_minor_test(const Graph& host, const Graph& pattern, const Limits& limits) {
  check_limit(host, std::min(limits.minor_host_vertices, 16), "exact_minor_test host");
  check_limit(pattern, std::min(limits.minor_pattern_vertices, 16), "exact_minor_test pattern");
  const Dense h(host);
  const Dense p(pattern);
  const int hn = h.n(), pn = p.n();
  auto to_model = [&](const std::vector<Mask>& blocks, const std::vector<int>& image) {
    MinorModel m;
    m.pattern = Graph(pn);
    for (auto [u, v] : pattern.edges()) {
      const auto iu = std::find(p.label.begin(), p.label.end(), u) - p.label.begin();
      const auto iv = std::find(p.label.begin(), p.label.end(), v) - p.label.begin();
      m.pattern.add_edge(static_cast<Vertex>(iu), static_cast<Vertex>(iv));
    }
    for (int i = 0; i < pn; ++i) {
      VertexSet branch;
      for (Mask rest = blocks[image[i]]; rest; rest &= rest - 1) branch.insert(h.label[std::countr_zero(rest)]);
      m.branch.push_back(std::move(branch));
    }
    return m;
  };
  if (pn > hn || pattern.num_edges() > host.num_edges()) return std::nullopt;

  // Partitions of V(host) into connected blocks; H ≼ G iff H embeds as a
  // subgraph in the quotient of one of them.
  std::vector<int> block_of(hn, 0);
  std::optional<MinorModel> found;
  std::function<void(int, int)> assign = [&](int at, int blocks) {
    if (found || blocks + (hn - at) < pn) return;
    if (at == hn) {
      std::vector<Mask> members(blocks, 0);
      for (int v = 0; v < hn; ++v) members[block_of[v]] |= Mask{1} << v;
      for (Mask b : members)
        if (!connected_mask(h.adj, b)) return;
      std::vector<Mask> quotient(blocks, 0);
      for (int a = 0; a < blocks; ++a) {
        const Mask seen = neighbours_of(h.adj, members[a]);
        for (int b = 0; b < blocks; ++b)
          if (b != a && (seen & members[b])) quotient[a] |= Mask{1} << b;
      }
      std::vector<int> image;
      if (embed(p.adj, quotient, image)) found = to_model(members, image);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block_of[at] = b;
      assign(at + 1, std::max(blocks, b + 1));
    }
  };
  if (pn == 0) return MinorModel{Graph(0), {}};
  assign(0, 0);
  if (found) {
    const auto verdict = verify_minor_model(host, *found);
    TWCERT_CHECK(verdict.ok(), "exhaustive search produced an invalid model: " + verdict.describe());
  }
  return found;
}

std::uint64_t canonical_code(const Graph& g) {
  const Dense d(g);
  const int n = d.n();
  if (n > 11) throw LimitExceeded("canonical_code supports at most 11 vertices");

  // Colour refinement gives an isomorphism-invariant ordered partition; only
  // permutations inside its cells are tried.
  std::vector<int> colour(n);
  for (int v = 0; v < n; ++v) colour[v] = std::popcount(d.adj[v]);
  for (int round = 0; round < n; ++round) {
    std::vector<std::pair<int, std::vector<int>>> key(n);
    for (int v = 0; v < n; ++v) {
      key[v].first = colour[v];
      for (Mask m = d.adj[v]; m; m &= m - 1) key[v].second.push_back(colour[std::countr_zero(m)]);
      std::sort(key[v].second.begin(), key[v].second.end());
    }
    auto sorted = key;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), key[v]) - sorted.begin());
    if (next == colour) break;
    colour = std::move(next);
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return std::pair(colour[a], a) < std::pair(colour[b], b); });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && colour[order[j]] == colour[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  std::uint64_t best = ~std::uint64_t{0};
  std::function<void(std::size_t)> vary = [&](std::size_t cell) {
    if (cell == cells.size()) {
      std::uint64_t code = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) code = code << 1 | (d.adj[order[i]] >> order[j] & 1);
      best = std::min(best, code);
      return;
    }
    auto first = order.begin() + cells[cell].first, last = order.begin() + cells[cell].second;
    std::sort(first, last);
    do vary(cell + 1);
    while (std::next_permutation(first, last));
  };
  vary(0);
  return best;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& order) {
  std::map<Vertex, Vertex> to;
  for (std::size_t i = 0; i < order.size(); ++i) to[order[i]] = static_cast<Vertex>(i);
  Graph out(static_cast<int>(order.size()));
  for (auto [u, v] : g.edges()) out.add_edge(to.at(u), to.at(v));
  return out;
}

namespace {

Graph from_code(int n, std::uint64_t code) {
  Graph g(n);
  int bit = n * (n - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (code >> --bit & 1) g.add_edge(i, j);
  return g;
}

}  // namespace

const std::vector<Graph>& enumerate_connected_graphs(int n) {
  if (n < 0) throw InputError("negative vertex count");
  if (n > 8) throw LimitExceeded("enumerate_connected_graphs supports n <= 8");
  static std::recursive_mutex lock;
  static std::map<int, std::vector<Graph>> cache;
  std::lock_guard guard(lock);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  std::vector<std::uint64_t> codes;
  if (n == 1) {
    codes.push_back(0);
  } else if (n > 1) {
    const auto& smaller = enumerate_connected_graphs(n - 1);
    for (const auto& base : smaller)
      for (Mask nb = 1; nb < (Mask{1} << (n - 1)); ++nb) {
        Graph g = base;
        g.add_vertex(n - 1);
        for (int v = 0; v < n - 1; ++v)
          if (nb >> v & 1) g.add_edge(v, n - 1);
        codes.push_back(canonical_code(g));
      }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  }
  std::vector<Graph> out;
  for (auto code : codes) out.push_back(from_code(n, code));
  return cache.emplace(n, std::move(out)).first->second;
}

Graph random_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw InputError("negative vertex count");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability outside [0, 1]");
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // Top 53 bits as a uniform double in [0, 1); portable across libraries.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) g.add_edge(i, j);
    }
  return g;
}

Graph clique(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph cycle(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph grid(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
    }
  return g;
}

Graph wheel(int k) {
  Graph g = cycle(k);
  g.add_vertex(k);
  for (int i = 0; i < k; ++i) g.add_edge(i, k);
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace twcert::oracles
