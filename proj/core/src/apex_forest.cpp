#include "twcert/apex_forest.hpp"

#include <algorithm>
#include <optional>

#include "twcert/menger.hpp"

namespace twcert::apex_forest {

namespace {

// Recursion measure (|V(F)| − |V(F′)|, |V(G)|), compared lexicographically.
struct Measure {
  std::size_t missing_tree_vertices;
  std::size_t graph_vertices;
  auto operator<=>(const Measure&) const = default;
};

void check_embedding(const Graph& g, const VertexSet& s, const Graph& forest, const Embedding& emb) {
  if (emb.empty()) throw InputError("embedding must cover at least one tree vertex");
  if (emb.size() != s.size()) throw InputError("|S| must equal the size of the embedded subtree");
  VertexSet image, domain;
  for (auto [x, y] : emb) {
    if (!forest.has_vertex(x)) throw InputError("embedding key is not a tree vertex");
    if (!s.count(y)) throw InputError("embedding image leaves S");
    if (!image.insert(y).second) throw InputError("embedding is not injective");
    domain.insert(x);
  }
  if (!induces_connected(forest, domain)) throw InputError("embedded vertices do not form a subtree");
  for (auto [x, y] : forest.edges())
    if (domain.count(x) && domain.count(y) && !g.has_edge(emb.at(x), emb.at(y)))
      throw InputError("tree edge " + std::to_string(x) + "-" + std::to_string(y) + " is not mapped to an edge of G[S]");
}

MinorModel apex_model(const Graph& forest, const Embedding& emb, const VertexSet& apex_branch) {
  MinorModel m;
  m.pattern = PatternSpec::apex_forest(forest).resolved;
  m.branch.resize(m.pattern.num_vertices());
  for (auto [x, y] : emb) m.branch[x] = {y};
  m.branch.back() = apex_branch;
  return m;
}

Octopus two_node_octopus(const Graph& g, const VertexSet& s, int budget) {
  Octopus o{RootedTreeDecomposition::single(s), s, budget};
  o.decomposition.add_node(g.vertex_set(), 0);
  return o;
}

void check_octopus(const Graph& g, const Octopus& o, bool thin, const char* where) {
  auto verdict = verify_octopus(g, o, thin);
  TWCERT_CHECK(verdict.ok(), std::string(where) + ": " + verdict.describe());
}

OctopusOrModel build(const Graph& g, const VertexSet& s, const Graph& forest, const Embedding& emb,
                     std::optional<Measure> caller) {
  check_embedding(g, s, forest, emb);
  const Measure here{forest.num_vertices() - emb.size(), g.num_vertices()};
  if (caller) TWCERT_CHECK(here < *caller, "recursion measure did not decrease");

  const int budget = static_cast<int>(forest.num_vertices());
  if (emb.size() == forest.num_vertices()) return base_octopus(g, s, forest, emb);
  if (g.num_vertices() <= forest.num_vertices()) return two_node_octopus(g, s, budget);

  bool some_component_sees_all = false;
  for (const auto& comp : components_without(g, s))
    if (neighborhood_of_set(g, comp) == s) some_component_sees_all = true;
  if (!some_component_sees_all) return easy_octopus(g, s, budget);

  // Extend the embedded subtree by the lexicographically smallest edge uv.
  Vertex u = -1, v = -1;
  for (auto [x, y] : emb) {
    for (Vertex z : forest.neighbors(x))
      if (!emb.count(z)) {
        u = x;
        v = z;
        break;
      }
    if (u != -1) break;
  }
  TWCERT_CHECK(u != -1, "no tree edge leaves the embedded subtree");
  Vertex anchor = emb.at(u);
  Vertex fresh = -1;
  for (Vertex z : g.neighbors(anchor))
    if (!s.count(z)) {
      fresh = z;
      break;
    }
  TWCERT_CHECK(fresh != -1, "the embedded image of u has no neighbour outside S");

  Embedding grown = emb;
  grown[v] = fresh;
  VertexSet bigger = s;
  bigger.insert(fresh);
  auto inner = build(g, bigger, forest, grown, here);
  if (auto* m = std::get_if<MinorModel>(&inner)) return std::move(*m);
  const auto& first = std::get<Octopus>(inner);

  Octopus prefixed{RootedTreeDecomposition::single(s), s, budget};
  prefixed.decomposition.graft(first.decomposition, 0);
  check_octopus(g, prefixed, false, "prefixed root");

  Octopus linked = minimize_thick_wrists(g, prefixed);
  const auto thick = linked.thick_wrists();
  if (thick.empty()) return linked;

  const auto kids = linked.decomposition.children();
  RootedTreeDecomposition assembled = linked.decomposition;
  std::vector<int> dropped;
  for (int t : thick) {
    const VertexSet& wrist_bag = linked.decomposition.bags[t];
    const PathSystem system = max_disjoint_paths(g, s, wrist_bag);
    TWCERT_CHECK(system.size() == s.size(), "thick wrist is not linked after minimization");

    for (int c : kids[t]) {
      const VertexSet& leaf_bag = linked.decomposition.bags[c];
      if (static_cast<int>(leaf_bag.size()) < budget + 1) continue;

      // G_{t,c} = G[X_t ∪ X_c] ∪ paths ∪ G[S], each path contracted into its
      // end in X_t.
      Graph piece = g.induced(set_union(wrist_bag, leaf_bag));
      for (Vertex x : s) piece.add_vertex(x);
      for (const auto& path : system.paths)
        for (Vertex x : path) piece.add_vertex(x);
      for (auto [a, b] : g.induced(s).edges()) piece.add_edge(a, b);
      for (const auto& path : system.paths)
        for (std::size_t i = 1; i < path.size(); ++i) piece.add_edge(path[i - 1], path[i]);

      std::vector<ContractionGroup> groups;
      std::map<Vertex, Vertex> end_of;
      for (const auto& path : system.paths) {
        end_of[path.front()] = path.back();
        if (path.size() > 1) groups.push_back({path.back(), VertexSet(path.begin(), path.end())});
      }
      auto [minor, trace] = contract_groups(piece, groups, ContractionTrace::identity(piece));

      if (minor.num_vertices() >= g.num_vertices()) {
        // Only possible when X_t = S and X_c ⊇ V(G)−S; then some vertex of S
        // has no neighbour outside S and every component misses it.
        TWCERT_CHECK(wrist_bag == s && is_subset(set_difference(g.vertex_set(), s), leaf_bag) &&
                         leaf_bag != g.vertex_set(),
                     "contracted piece is not smaller than G");
        return easy_octopus(g, s, budget);
      }

      Embedding moved;
      for (auto [x, y] : emb) moved[x] = end_of.at(y);
      auto sub = build(minor, wrist_bag, forest, moved, here);
      if (auto* m = std::get_if<MinorModel>(&sub)) return lift_minor_model(*m, trace);
      const auto& piece_octopus = std::get<Octopus>(sub);
      assembled = attach(assembled, {{piece_octopus.decomposition, t}});
      dropped.push_back(c);
    }
  }

  Octopus out{assembled.without_nodes(dropped), s, budget};
  check_octopus(g, out, true, "assembled octopus");
  return out;
}

}  // namespace

std::vector<int> Octopus::wrists() const {
  std::vector<int> out;
  const auto kids = decomposition.children();
  for (std::size_t t = 0; t < decomposition.size(); ++t)
    for (int c : kids[t])
      if (static_cast<int>(decomposition.bags[c].size()) >= budget + 1) {
        out.push_back(static_cast<int>(t));
        break;
      }
  return out;
}

std::vector<int> Octopus::thick_wrists() const {
  std::vector<int> out;
  for (int t : wrists())
    if (decomposition.bags[t].size() == root_set.size()) out.push_back(t);
  return out;
}

Verdict verify_octopus(const Graph& g, const Octopus& o, bool thin) {
  if (auto v = verify_tree_decomposition(g, o.decomposition, o.root_set); !v) return v;
  const auto& d = o.decomposition;
  const auto kids = d.children();
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (static_cast<int>(d.bags[t].size()) < o.budget + 1) continue;
    if (t == 0 || !kids[t].empty())
      return Verdict::reject(Violation::OversizedBagNotLeaf, "node " + std::to_string(t) + " bag size " +
                                                                 std::to_string(d.bags[t].size()));
    if (d.bags[d.parent[t]].size() > o.root_set.size())
      return Verdict::reject(Violation::OversizedBagParentTooLarge,
                             "node " + std::to_string(t) + " parent " + std::to_string(d.parent[t]));
  }
  if (thin) {
    auto thick = o.thick_wrists();
    if (!thick.empty()) return Verdict::reject(Violation::ThickWrist, "node " + std::to_string(thick.front()));
  }
  return Verdict::accept();
}

Octopus easy_octopus(const Graph& g, const VertexSet& s, int budget) {
  if (!is_subset(s, g.vertex_set())) throw InputError("S is not a subset of V(G)");
  Octopus o{RootedTreeDecomposition::single(s), s, budget < 0 ? static_cast<int>(s.size()) : budget};
  for (const auto& comp : components_without(g, s)) {
    VertexSet attach_set = neighborhood_of_set(g, comp);
    if (attach_set == s)
      throw InputError("component " + to_string(comp) + " is adjacent to every vertex of S");
    int wrist = o.decomposition.add_node(attach_set, 0);
    o.decomposition.add_node(set_union(comp, attach_set), wrist);
  }
  return o;
}

OctopusOrModel base_octopus(const Graph& g, const VertexSet& s, const Graph& forest, const Embedding& emb) {
  check_embedding(g, s, forest, emb);
  if (emb.size() != forest.num_vertices()) throw InputError("base case needs the whole tree embedded");
  for (const auto& comp : components_without(g, s))
    if (neighborhood_of_set(g, comp) == s) return apex_model(forest, emb, comp);
  return easy_octopus(g, s, static_cast<int>(forest.num_vertices()));
}

Octopus reroute_thick_wrist(const Graph& g, const Octopus& o, int wrist) {
  const auto thick_before = o.thick_wrists();
  if (std::find(thick_before.begin(), thick_before.end(), wrist) == thick_before.end())
    throw InputError("node " + std::to_string(wrist) + " is not a thick wrist");
  const auto& d = o.decomposition;
  const auto sep = min_vertex_separation(g, o.root_set, d.bags[wrist]);
  if (sep.paths.size() >= o.root_set.size()) throw InputError("thick wrist is already linked to S");

  const auto& [a, b] = sep.separation;
  Octopus out{d, o.root_set, o.budget};
  for (std::size_t t = 0; t < d.size(); ++t) {
    VertexSet bag = set_intersection(d.bags[t], a);
    for (std::size_t i = 0; i < sep.paths.size(); ++i) {
      const auto& path = sep.paths.paths[i];
      bool meets = std::any_of(path.begin(), path.end(),
                               [&](Vertex v) { return d.bags[t].count(v) && b.count(v); });
      if (meets) bag.insert(sep.crossing[i]);
    }
    TWCERT_CHECK(bag.size() <= d.bags[t].size(), "rewritten bag grew");
    out.decomposition.bags[t] = std::move(bag);
  }
  TWCERT_CHECK(out.decomposition.bags[0] == o.root_set, "rewritten root bag differs from S");
  TWCERT_CHECK(out.decomposition.bags[wrist] == set_intersection(a, b), "rewritten wrist bag is not A ∩ B");
  out.decomposition.add_node(b, wrist);

  check_octopus(g, out, false, "rerouted octopus");
  TWCERT_CHECK(out.thick_wrists().size() < thick_before.size(), "thick wrist count did not drop");
  return out;
}

Octopus minimize_thick_wrists(const Graph& g, const Octopus& o) {
  Octopus current = o;
  while (true) {
    std::optional<int> unlinked;
    for (int t : current.thick_wrists())
      if (max_disjoint_paths(g, current.root_set, current.decomposition.bags[t]).size() < current.root_set.size()) {
        unlinked = t;
        break;
      }
    if (!unlinked) return current;
    current = reroute_thick_wrist(g, current, *unlinked);
  }
}

OctopusOrModel build_thin_octopus(const Graph& g, const VertexSet& s, const Graph& forest, const Embedding& emb) {
  return build(g, s, forest, emb, std::nullopt);
}

DecomposeOutcome decompose_apex_forest(const Graph& g, const Graph& forest) {
  PatternSpec::apex_forest(forest);  // validates the tree
  const auto f = forest.num_vertices();
  std::vector<RootedTreeDecomposition> parts;
  for (const auto& comp : components(g)) {
    Graph piece = g.induced(comp);
    const Vertex start = *comp.begin();
    auto result = build(piece, {start}, forest, {{0, start}}, std::nullopt);
    if (auto* m = std::get_if<MinorModel>(&result)) return std::move(*m);
    auto& octopus = std::get<Octopus>(result);
    // With |S| = 1 a thin octopus of a connected graph has no wrists.
    TWCERT_CHECK(octopus.wrists().empty(), "thin octopus with a single root vertex has a wrist");
    TWCERT_CHECK(octopus.decomposition.max_bag_size() <= f, "bag exceeds |V(F)|");
    parts.push_back(std::move(octopus.decomposition));
  }
  if (parts.empty()) return RootedTreeDecomposition::single({});
  if (parts.size() == 1) return std::move(parts.front());
  auto joined = RootedTreeDecomposition::single({});
  for (const auto& p : parts) joined.graft(p, 0);
  return joined;
}

}  // namespace twcert::apex_forest
