#include "twcert/certificates.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace twcert {

RootedTreeDecomposition RootedTreeDecomposition::single(VertexSet bag) {
  RootedTreeDecomposition d;
  d.add_node(std::move(bag), -1);
  return d;
}

RootedTreeDecomposition RootedTreeDecomposition::from_tree(
    std::vector<VertexSet> bags, const std::vector<std::pair<int, int>>& tree_edges, int root) {
  const int n = static_cast<int>(bags.size());
  if (root < 0 || root >= n) throw InputError("root node out of range");
  if (static_cast<int>(tree_edges.size()) != n - 1)
    throw InputError("tree must have exactly one edge fewer than nodes");
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : tree_edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw InputError("bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> index(n, -1);
  RootedTreeDecomposition d;
  std::deque<int> queue{root};
  index[root] = d.add_node(std::move(bags[root]), -1);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : adj[u]) {
      if (index[w] != -1) continue;
      index[w] = d.add_node(std::move(bags[w]), index[u]);
      queue.push_back(w);
    }
  }
  if (static_cast<int>(d.size()) != n) throw InputError("tree edges do not form a tree");
  return d;
}

int RootedTreeDecomposition::add_node(VertexSet bag, int parent_node) {
  if (bags.empty() != (parent_node == -1))
    throw InputError("exactly the first node is the root");
  if (parent_node >= static_cast<int>(bags.size())) throw InputError("unknown parent node");
  bags.push_back(std::move(bag));
  parent.push_back(parent_node);
  return static_cast<int>(bags.size()) - 1;
}

std::vector<std::vector<int>> RootedTreeDecomposition::children() const {
  std::vector<std::vector<int>> out(bags.size());
  for (std::size_t t = 1; t < bags.size(); ++t) out[parent[t]].push_back(static_cast<int>(t));
  return out;
}

std::size_t RootedTreeDecomposition::max_bag_size() const {
  std::size_t best = 0;
  for (const auto& b : bags) best = std::max(best, b.size());
  return best;
}

RootedTreeDecomposition RootedTreeDecomposition::without_nodes(const std::vector<int>& drop) const {
  std::vector<char> gone(bags.size(), 0);
  for (int t : drop) {
    if (t <= 0 || t >= static_cast<int>(bags.size())) throw InputError("cannot drop node");
    gone[t] = 1;
  }
  std::vector<int> index(bags.size(), -1);
  RootedTreeDecomposition d;
  for (std::size_t t = 0; t < bags.size(); ++t) {
    if (gone[t]) continue;
    int p = parent[t];
    if (p != -1 && index[p] == -1) throw InputError("dropping nodes would disconnect the tree");
    index[t] = d.add_node(bags[t], p == -1 ? -1 : index[p]);
  }
  return d;
}

int RootedTreeDecomposition::graft(const RootedTreeDecomposition& sub, int at) {
  if (sub.empty()) throw InputError("cannot graft an empty decomposition");
  std::vector<int> index(sub.size(), -1);
  for (std::size_t t = 0; t < sub.size(); ++t)
    index[t] = add_node(sub.bags[t], t == 0 ? at : index[sub.parent[t]]);
  return index[0];
}

int width(const RootedTreeDecomposition& d) {
  if (d.empty()) throw InputError("width of an empty decomposition");
  return static_cast<int>(d.max_bag_size()) - 1;
}

PatternSpec PatternSpec::apex_forest(const Graph& tree) {
  if (!is_tree(tree)) throw InputError("apex-forest pattern requires a tree");
  const auto n = static_cast<Vertex>(tree.num_vertices());
  for (Vertex v = 0; v < n; ++v)
    if (!tree.has_vertex(v)) throw InputError("tree vertices must be labelled 0..n-1");
  PatternSpec p;
  p.kind = PatternKind::ApexForest;
  p.forest = tree;
  p.resolved = tree;
  p.resolved.add_vertex(n);
  for (Vertex v = 0; v < n; ++v) p.resolved.add_edge(v, n);
  return p;
}

PatternSpec PatternSpec::wheel(int k) {
  if (k < 3) throw InputError("a k-wheel needs k >= 3");
  PatternSpec p;
  p.kind = PatternKind::Wheel;
  p.k = k;
  p.resolved = Graph(k + 1);
  for (Vertex v = 0; v < k; ++v) {
    p.resolved.add_edge(v, (v + 1) % k);
    p.resolved.add_edge(v, k);
  }
  return p;
}

std::string PatternSpec::name() const {
  if (kind == PatternKind::Wheel) return "wheel-" + std::to_string(k);
  std::string s = "apex-forest[";
  bool first = true;
  for (auto [u, v] : forest.edges()) {
    if (!first) s += ',';
    s += std::to_string(u) + "-" + std::to_string(v);
    first = false;
  }
  return s + "]";
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::MalformedTree: return "malformed-tree";
    case Violation::VertexUncovered: return "vertex-uncovered";
    case Violation::EdgeUncovered: return "edge-uncovered";
    case Violation::OccurrenceDisconnected: return "occurrence-disconnected";
    case Violation::ForeignVertex: return "foreign-vertex";
    case Violation::RootBagMismatch: return "root-bag-mismatch";
    case Violation::BagTooLarge: return "bag-too-large";
    case Violation::EmptyBranchSet: return "empty-branch-set";
    case Violation::BranchSetsOverlap: return "branch-sets-overlap";
    case Violation::BranchSetDisconnected: return "branch-set-disconnected";
    case Violation::PatternEdgeMissing: return "pattern-edge-missing";
    case Violation::OversizedBagNotLeaf: return "oversized-bag-not-leaf";
    case Violation::OversizedBagParentTooLarge: return "oversized-bag-parent-too-large";
    case Violation::ThickWrist: return "thick-wrist";
  }
  return "unknown";
}

std::string Verdict::describe() const {
  if (ok()) return "accepted";
  return "rejected: " + to_string(violation) + " (" + witness + ")";
}

Verdict verify_tree_decomposition(const Graph& g, const RootedTreeDecomposition& d,
                                  const std::optional<VertexSet>& required_root_bag,
                                  std::optional<std::size_t> max_bag) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return Verdict::reject(Violation::MalformedTree, "no root node");
  if (d.parent.size() != d.bags.size())
    return Verdict::reject(Violation::MalformedTree, "parent table size mismatch");
  if (d.parent[0] != -1) return Verdict::reject(Violation::MalformedTree, "node 0 has a parent");
  for (int t = 1; t < n; ++t) {
    // Parents precede children in every decomposition we build, but accept
    // any acyclic parent table.
    int p = d.parent[t];
    if (p < 0 || p >= n || p == t)
      return Verdict::reject(Violation::MalformedTree, "node " + std::to_string(t) + " has bad parent");
  }
  for (int t = 1; t < n; ++t) {
    int steps = 0;
    for (int x = t; x != 0; x = d.parent[x])
      if (++steps > n)
        return Verdict::reject(Violation::MalformedTree, "cycle through node " + std::to_string(t));
  }

  std::map<Vertex, int> occurrences;
  for (int t = 0; t < n; ++t) {
    for (Vertex v : d.bags[t]) {
      if (!g.has_vertex(v))
        return Verdict::reject(Violation::ForeignVertex,
                               "vertex " + std::to_string(v) + " in bag of node " + std::to_string(t));
      ++occurrences[v];
    }
  }
  for (Vertex v : g.vertices())
    if (!occurrences.count(v))
      return Verdict::reject(Violation::VertexUncovered, "vertex " + std::to_string(v));

  // v occupies a subtree iff exactly one occupied node has an unoccupied parent.
  std::map<Vertex, int> tops;
  for (int t = 0; t < n; ++t)
    for (Vertex v : d.bags[t])
      if (t == 0 || !d.bags[d.parent[t]].count(v)) ++tops[v];
  for (auto [v, c] : tops)
    if (c != 1)
      return Verdict::reject(Violation::OccurrenceDisconnected,
                             "vertex " + std::to_string(v) + " occupies " + std::to_string(c) +
                                 " separate subtrees");

  std::map<Vertex, std::vector<int>> where;
  for (int t = 0; t < n; ++t)
    for (Vertex v : d.bags[t]) where[v].push_back(t);
  for (auto [u, v] : g.edges()) {
    const auto& wu = where[u];
    bool covered = std::any_of(wu.begin(), wu.end(), [&](int t) { return d.bags[t].count(v) > 0; });
    if (!covered)
      return Verdict::reject(Violation::EdgeUncovered, "edge " + std::to_string(u) + "-" + std::to_string(v));
  }

  if (required_root_bag && d.bags[0] != *required_root_bag)
    return Verdict::reject(Violation::RootBagMismatch,
                           "root bag " + to_string(d.bags[0]) + ", required " + to_string(*required_root_bag));
  if (max_bag) {
    for (int t = 0; t < n; ++t)
      if (d.bags[t].size() > *max_bag)
        return Verdict::reject(Violation::BagTooLarge,
                               "node " + std::to_string(t) + " bag size " + std::to_string(d.bags[t].size()) +
                                   " > " + std::to_string(*max_bag));
  }
  return Verdict::accept();
}

Verdict verify_minor_model(const Graph& host, const MinorModel& m) {
  const auto h = m.pattern.num_vertices();
  if (m.branch.size() != h)
    return Verdict::reject(Violation::EmptyBranchSet, "branch table has " + std::to_string(m.branch.size()) +
                                                          " entries for " + std::to_string(h) + " pattern vertices");
  std::map<Vertex, int> owner;
  for (std::size_t x = 0; x < h; ++x) {
    if (!m.pattern.has_vertex(static_cast<Vertex>(x)))
      return Verdict::reject(Violation::EmptyBranchSet, "pattern vertices must be 0..h-1");
    const auto& b = m.branch[x];
    if (b.empty()) return Verdict::reject(Violation::EmptyBranchSet, "pattern vertex " + std::to_string(x));
    for (Vertex v : b) {
      if (!host.has_vertex(v))
        return Verdict::reject(Violation::ForeignVertex, "host vertex " + std::to_string(v));
      auto [it, fresh] = owner.emplace(v, static_cast<int>(x));
      if (!fresh)
        return Verdict::reject(Violation::BranchSetsOverlap,
                               "host vertex " + std::to_string(v) + " in branch sets " +
                                   std::to_string(it->second) + " and " + std::to_string(x));
    }
    if (!induces_connected(host, b))
      return Verdict::reject(Violation::BranchSetDisconnected, "pattern vertex " + std::to_string(x) + " " + to_string(b));
  }
  for (auto [x, y] : m.pattern.edges()) {
    bool joined = false;
    for (Vertex v : m.branch[x]) {
      for (Vertex w : host.neighbors(v))
        if (m.branch[y].count(w)) {
          joined = true;
          break;
        }
      if (joined) break;
    }
    if (!joined)
      return Verdict::reject(Violation::PatternEdgeMissing, "pattern edge " + std::to_string(x) + "-" + std::to_string(y));
  }
  return Verdict::accept();
}

RootedTreeDecomposition attach(const RootedTreeDecomposition& base,
                               const std::vector<std::pair<RootedTreeDecomposition, int>>& children) {
  RootedTreeDecomposition out = base;
  for (const auto& [child, z] : children) {
    if (z < 0 || z >= static_cast<int>(base.size())) throw InputError("attach node out of range");
    if (child.empty() || child.root_bag() != base.bags[z])
      throw InputError("attached root bag " + (child.empty() ? std::string("<none>") : to_string(child.root_bag())) +
                       " differs from bag " + to_string(base.bags[z]) + " at node " + std::to_string(z));
    std::vector<int> index(child.size(), -1);
    index[0] = z;
    for (std::size_t t = 1; t < child.size(); ++t)
      index[t] = out.add_node(child.bags[t], index[child.parent[t]]);
  }
  return out;
}

MinorModel lift_minor_model(const MinorModel& m, const ContractionTrace& trace) {
  MinorModel out;
  out.pattern = m.pattern;
  out.branch.reserve(m.branch.size());
  for (const auto& b : m.branch) out.branch.push_back(trace.expand(b));
  return out;
}

}  // namespace twcert
