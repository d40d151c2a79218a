#include "twcert/menger.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace twcert {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Unit vertex-capacity flow network: vertex v becomes in(v) -> out(v) with
// capacity 1; graph edges and terminal arcs are uncapacitated, so every
// minimum cut consists of vertex arcs only.
class SplitNetwork {
 public:
  SplitNetwork(const Graph& g, const VertexSet& sources, const VertexSet& sinks, const VertexSet& removed)
      : labels_(g.label_bound()), head_(2 * labels_ + 2, -1) {
    for (Vertex v : g.vertices()) {
      if (removed.count(v)) continue;
      add_arc(in(v), out(v), 1);
      for (Vertex w : g.neighbors(v))
        if (!removed.count(w)) add_arc(out(v), in(w), kInf);
    }
    for (Vertex s : sources) add_arc(source(), in(s), kInf);
    for (Vertex x : sinks) add_arc(out(x), sink(), kInf);
  }

  int in(Vertex v) const { return 2 * v; }
  int out(Vertex v) const { return 2 * v + 1; }
  int source() const { return 2 * labels_; }
  int sink() const { return 2 * labels_ + 1; }

  int max_flow() {
    int flow = 0;
    while (augment()) ++flow;
    return flow;
  }

  std::vector<char> residual_reachable() const {
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> queue{source()};
    seen[source()] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int a = head_[u]; a != -1; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          queue.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

  // Walks each unit of flow from the source; returns graph-vertex sequences.
  std::vector<std::vector<Vertex>> flow_paths() const {
    std::vector<int> used(arcs_.size(), 0);
    std::vector<std::vector<Vertex>> out_paths;
    while (true) {
      int node = source();
      std::vector<Vertex> path;
      bool found = false;
      while (node != sink()) {
        int next_arc = -1;
        for (int a = head_[node]; a != -1; a = arcs_[a].next)
          if (a % 2 == 0 && flow_on(a) - used[a] > 0) {
            next_arc = a;
            break;
          }
        if (next_arc == -1) break;
        ++used[next_arc];
        node = arcs_[next_arc].to;
        if (node != sink() && node % 2 == 0) path.push_back(node / 2);
        if (node == sink()) found = true;
      }
      if (!found) break;
      out_paths.push_back(std::move(path));
    }
    return out_paths;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int next;
  };

  void add_arc(int u, int v, int cap) {
    arcs_.push_back({v, cap, head_[u]});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    original_.push_back(cap);
    arcs_.push_back({u, 0, head_[v]});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
    original_.push_back(0);
  }

  int flow_on(int a) const { return original_[a] - arcs_[a].cap; }

  bool augment() {
    std::vector<int> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> queue{source()};
    seen[source()] = 1;
    while (!queue.empty() && !seen[sink()]) {
      int u = queue.front();
      queue.pop_front();
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        int w = arcs_[a].to;
        if (arcs_[a].cap > 0 && !seen[w]) {
          seen[w] = 1;
          via[w] = a;
          queue.push_back(w);
        }
      }
    }
    if (!seen[sink()]) return false;
    for (int v = sink(); v != source(); v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].cap -= 1;
      arcs_[via[v] ^ 1].cap += 1;
    }
    return true;
  }

  int labels_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> original_;
};

struct FlowResult {
  PathSystem system;
  VertexSet cut;  // vertices whose unit arc separates the residual source side
  VertexSet reach;
};

FlowResult run_flow(const Graph& g, const VertexSet& source, const VertexSet& target) {
  for (Vertex v : source)
    if (!g.has_vertex(v)) throw InputError("source vertex " + std::to_string(v) + " not in graph");
  for (Vertex v : target)
    if (!g.has_vertex(v)) throw InputError("target vertex " + std::to_string(v) + " not in graph");

  const VertexSet shared = set_intersection(source, target);
  const VertexSet from = set_difference(source, shared);
  const VertexSet to = set_difference(target, shared);

  SplitNetwork net(g, from, to, shared);
  const int flow = net.max_flow();

  FlowResult r;
  r.system.source = source;
  r.system.target = target;
  for (Vertex v : shared) r.system.paths.push_back({v});
  for (auto& walk : net.flow_paths()) {
    // Trim to the last source vertex before the first target vertex so the
    // interior avoids source ∪ target.
    auto first_target = std::find_if(walk.begin(), walk.end(), [&](Vertex v) { return to.count(v) > 0; });
    TWCERT_CHECK(first_target != walk.end(), "flow path misses the target");
    auto last_source = std::find_if(std::make_reverse_iterator(first_target + 1), walk.rend(),
                                    [&](Vertex v) { return from.count(v) > 0; });
    TWCERT_CHECK(last_source != walk.rend(), "flow path misses the source");
    r.system.paths.emplace_back(last_source.base() - 1, first_target + 1);
  }
  TWCERT_CHECK(static_cast<int>(r.system.paths.size()) == flow + static_cast<int>(shared.size()),
               "path count differs from flow value");

  const auto reachable = net.residual_reachable();
  for (Vertex v : g.vertices())
    if (!shared.count(v) && reachable[net.in(v)] && !reachable[net.out(v)]) r.cut.insert(v);
  TWCERT_CHECK(static_cast<int>(r.cut.size()) == flow, "residual cut size differs from flow value");

  VertexSet blocked = set_union(r.cut, shared);
  std::deque<Vertex> queue;
  for (Vertex s : from)
    if (!blocked.count(s) && r.reach.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u))
      if (!blocked.count(w) && r.reach.insert(w).second) queue.push_back(w);
  }
  return r;
}

}  // namespace

VertexSet PathSystem::vertices() const {
  VertexSet out;
  for (const auto& p : paths) out.insert(p.begin(), p.end());
  return out;
}

std::string validate_path_system(const Graph& g, const PathSystem& p) {
  const VertexSet ends = set_union(p.source, p.target);
  VertexSet used;
  for (std::size_t i = 0; i < p.paths.size(); ++i) {
    const auto& path = p.paths[i];
    const std::string tag = "path " + std::to_string(i) + ": ";
    if (path.empty()) return tag + "empty";
    if (!p.source.count(path.front())) return tag + "does not start in the source set";
    if (!p.target.count(path.back())) return tag + "does not end in the target set";
    for (std::size_t j = 0; j < path.size(); ++j) {
      if (!g.has_vertex(path[j])) return tag + "leaves the graph";
      if (!used.insert(path[j]).second) return tag + "shares vertex " + std::to_string(path[j]);
      if (j > 0 && !g.has_edge(path[j - 1], path[j])) return tag + "uses a non-edge";
      if (j > 0 && j + 1 < path.size() && ends.count(path[j]))
        return tag + "interior meets source or target at " + std::to_string(path[j]);
    }
    if (path.size() >= 2 && (p.target.count(path.front()) || p.source.count(path.back())))
      return tag + "has an endpoint in source ∩ target but is not trivial";
  }
  return {};
}

PathSystem max_disjoint_paths(const Graph& g, const VertexSet& source, const VertexSet& target) {
  auto r = run_flow(g, source, target);
  auto problem = validate_path_system(g, r.system);
  TWCERT_CHECK(problem.empty(), problem);
  return std::move(r.system);
}

MinSeparation min_vertex_separation(const Graph& g, const VertexSet& source, const VertexSet& target) {
  auto r = run_flow(g, source, target);
  const VertexSet shared = set_intersection(source, target);
  MinSeparation out;
  const VertexSet middle = set_union(r.cut, shared);
  out.separation.a = set_union(r.reach, middle);
  for (Vertex v : g.vertices())
    if (!r.reach.count(v)) out.separation.b.insert(v);
  out.paths = std::move(r.system);
  for (const auto& path : out.paths.paths) {
    Vertex hit = -1;
    for (Vertex v : path)
      if (middle.count(v)) hit = v;
    out.crossing.push_back(hit);
  }
  auto problem = validate_min_separation(g, out);
  TWCERT_CHECK(problem.empty(), problem);
  return out;
}

std::string validate_min_separation(const Graph& g, const MinSeparation& s) {
  if (auto p = validate_path_system(g, s.paths); !p.empty()) return p;
  const auto& [a, b] = s.separation;
  if (set_union(a, b) != g.vertex_set()) return "A ∪ B is not V(G)";
  const VertexSet only_a = set_difference(a, b);
  for (Vertex v : only_a)
    for (Vertex w : g.neighbors(v))
      if (!a.count(w)) return "edge " + std::to_string(v) + "-" + std::to_string(w) + " crosses the separation";
  if (!is_subset(s.paths.source, a)) return "source not inside A";
  if (!is_subset(s.paths.target, b)) return "target not inside B";
  const VertexSet middle = set_intersection(a, b);
  if (middle.size() != s.paths.size()) return "|A ∩ B| differs from the number of paths";
  if (s.crossing.size() != s.paths.size()) return "crossing table size mismatch";
  for (std::size_t i = 0; i < s.paths.size(); ++i) {
    std::size_t hits = 0;
    for (Vertex v : s.paths.paths[i]) hits += middle.count(v);
    if (hits != 1) return "path " + std::to_string(i) + " meets A ∩ B " + std::to_string(hits) + " times";
    if (!middle.count(s.crossing[i])) return "crossing vertex of path " + std::to_string(i) + " not in A ∩ B";
  }
  return {};
}

}  // namespace twcert
