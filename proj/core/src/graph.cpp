#include "twcert/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace twcert {

Graph::Graph(int n) {
  for (Vertex v = 0; v < n; ++v) add_vertex(v);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_vertex(Vertex v) {
  if (v < 0) throw InputError("negative vertex label " + std::to_string(v));
  if (static_cast<std::size_t>(v) >= present_.size()) {
    present_.resize(v + 1, 0);
    adj_.resize(v + 1);
  }
  if (present_[v]) return;
  present_[v] = 1;
  vertices_.insert(std::lower_bound(vertices_.begin(), vertices_.end(), v), v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw InputError("loop at vertex " + std::to_string(u));
  if (!has_vertex(u) || !has_vertex(v))
    throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                     " has an endpoint outside the graph");
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return;
  nu.insert(it, v);
  auto& nv = adj_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++num_edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  if (!has_vertex(v)) throw InputError("vertex " + std::to_string(v) + " not in graph");
  return adj_[v];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u : vertices_)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(const VertexSet& keep) const {
  Graph h;
  for (Vertex v : keep)
    if (has_vertex(v)) h.add_vertex(v);
  for (Vertex u : h.vertices_)
    for (Vertex v : adj_[u])
      if (u < v && h.has_vertex(v)) h.add_edge(u, v);
  return h;
}

Graph Graph::without(const VertexSet& drop) const {
  VertexSet keep;
  for (Vertex v : vertices_)
    if (!drop.count(v)) keep.insert(v);
  return induced(keep);
}

ContractionTrace ContractionTrace::identity(const Graph& g) {
  ContractionTrace t;
  for (Vertex v : g.vertices()) t.branch_of[v] = {v};
  return t;
}

VertexSet ContractionTrace::expand(Vertex v) const {
  auto it = branch_of.find(v);
  return it == branch_of.end() ? VertexSet{v} : it->second;
}

VertexSet ContractionTrace::expand(const VertexSet& vs) const {
  VertexSet out;
  for (Vertex v : vs) {
    auto b = expand(v);
    out.insert(b.begin(), b.end());
  }
  return out;
}

std::size_t Separation::order() const { return set_intersection(a, b).size(); }

std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.label_bound(), 0);
  for (Vertex r : removed)
    if (g.has_vertex(r)) seen[r] = 1;
  for (Vertex s : g.vertices()) {
    if (seen[s]) continue;
    VertexSet comp;
    std::deque<Vertex> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      comp.insert(u);
      for (Vertex w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> components(const Graph& g) { return components_without(g, {}); }

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

BlockCutDecomposition blocks_and_cutvertices(const Graph& g) {
  BlockCutDecomposition out;
  const int n = g.label_bound();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> stack;
  int timer = 0;

  std::function<void(Vertex, Vertex)> dfs = [&](Vertex u, Vertex parent) {
    disc[u] = low[u] = timer++;
    int children = 0;
    for (Vertex w : g.neighbors(u)) {
      if (w == parent) continue;
      if (disc[w] == -1) {
        ++children;
        stack.emplace_back(u, w);
        dfs(w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          if (parent != -1 || children > 1) out.cut_vertices.insert(u);
          VertexSet block;
          while (true) {
            auto e = stack.back();
            stack.pop_back();
            block.insert(e.first);
            block.insert(e.second);
            if (e == Edge{u, w}) break;
          }
          out.blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[u]) {
        low[u] = std::min(low[u], disc[w]);
        stack.emplace_back(u, w);
      }
    }
  };

  for (Vertex v : g.vertices()) {
    if (disc[v] != -1) continue;
    if (g.degree(v) == 0) {
      disc[v] = timer++;
      out.blocks.push_back({v});
      continue;
    }
    dfs(v, -1);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

bool is_2connected(const Graph& g) {
  if (g.num_vertices() < 3 || !is_connected(g)) return false;
  return blocks_and_cutvertices(g).cut_vertices.empty();
}

VertexSet neighborhood_of_set(const Graph& g, const VertexSet& s) {
  VertexSet out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!s.count(w)) out.insert(w);
  return out;
}

std::pair<Graph, ContractionTrace> contract_groups(const Graph& g,
                                                   std::span<const ContractionGroup> groups,
                                                   const ContractionTrace& trace) {
  std::vector<Vertex> rep(g.label_bound(), -1);
  for (Vertex v : g.vertices()) rep[v] = v;
  for (const auto& grp : groups) {
    if (!grp.members.count(grp.keep))
      throw InputError("contraction group does not contain its kept vertex");
    if (!induces_connected(g, grp.members))
      throw InputError("contraction group " + to_string(grp.members) + " is not connected");
    for (Vertex v : grp.members) {
      if (!g.has_vertex(v)) throw InputError("contraction group vertex not in graph");
      if (rep[v] != v) throw InputError("contraction groups overlap");
      rep[v] = grp.keep;
    }
  }
  Graph h;
  for (Vertex v : g.vertices())
    if (rep[v] == v) h.add_vertex(v);
  for (auto [u, v] : g.edges())
    if (rep[u] != rep[v]) h.add_edge(rep[u], rep[v]);

  ContractionTrace out;
  for (Vertex v : h.vertices()) out.branch_of[v] = {};
  for (Vertex v : g.vertices()) {
    auto b = trace.expand(v);
    out.branch_of[rep[v]].insert(b.begin(), b.end());
  }
  return {std::move(h), std::move(out)};
}

std::pair<Graph, ContractionTrace> contract_edges(const Graph& g, std::span<const Edge> edges,
                                                  const ContractionTrace& trace) {
  std::vector<Vertex> parent(g.label_bound());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Vertex(Vertex)> find = [&](Vertex x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [u, v] : edges) {
    if (!g.has_edge(u, v))
      throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " not in graph");
    Vertex a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<Vertex, VertexSet> classes;
  for (Vertex v : g.vertices()) classes[find(v)].insert(v);
  std::vector<ContractionGroup> groups;
  for (auto& [root, members] : classes)
    if (members.size() > 1) groups.push_back({*members.begin(), members});
  return contract_groups(g, groups, trace);
}

std::vector<Vertex> shortest_path(const Graph& g, const VertexSet& from, const VertexSet& to,
                                  const VertexSet& blocked) {
  std::vector<Vertex> prev(g.label_bound(), -2);
  std::deque<Vertex> queue;
  for (Vertex s : from) {
    if (!g.has_vertex(s)) continue;
    if (to.count(s)) return {s};
    prev[s] = -1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (prev[w] != -2) continue;
      if (to.count(w)) {
        std::vector<Vertex> path{w};
        for (Vertex x = u; x != -1; x = prev[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (blocked.count(w)) continue;
      prev[w] = u;
      queue.push_back(w);
    }
  }
  return {};
}

bool is_tree(const Graph& g) {
  return g.num_vertices() >= 1 && g.num_edges() + 1 == g.num_vertices() && is_connected(g);
}

bool induces_connected(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  return components(g.induced(s)).size() == 1;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string to_string(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Vertex v : s) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace twcert
