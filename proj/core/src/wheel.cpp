#include "twcert/wheel.hpp"

#include <algorithm>
#include <deque>

namespace twcert::wheel {

namespace {

VertexSet as_set(const std::vector<Vertex>& seq) { return {seq.begin(), seq.end()}; }

RecursionMeasure measure_of(const Graph& g, const std::vector<Vertex>& root) {
  return {g.num_vertices(), g.num_vertices() - root.size()};
}

DecomposeOutcome solve(const Graph& g, const std::vector<Vertex>& root, int k,
                       std::optional<RecursionMeasure> caller);

// Groups consecutive ring elements onto the unique `targets` vertex each run
// starts with. Returns the groups in ring order.
std::vector<ContractionGroup> ring_groups(const std::vector<VertexSet>& ring, const VertexSet& targets) {
  std::size_t start = ring.size();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto hits = set_intersection(ring[i], targets);
    TWCERT_CHECK(hits.size() <= 1, "ring element holds two attachment vertices");
    if (!hits.empty() && start == ring.size()) start = i;
  }
  TWCERT_CHECK(start < ring.size(), "ring misses every attachment vertex");
  std::vector<ContractionGroup> groups;
  for (std::size_t step = 0; step < ring.size(); ++step) {
    const auto& elem = ring[(start + step) % ring.size()];
    const auto hits = set_intersection(elem, targets);
    if (!hits.empty()) groups.push_back({*hits.begin(), {}});
    groups.back().members.insert(elem.begin(), elem.end());
  }
  return groups;
}

std::vector<VertexSet> singletons(const std::vector<Vertex>& seq) {
  std::vector<VertexSet> out;
  for (Vertex v : seq) out.push_back({v});
  return out;
}

// Decomposition of the graph on piece ∪ N(piece) obtained by contracting a
// ring of connected sets (disjoint from the piece) onto N(piece), rooted at
// the resulting cycle or edge.
DecomposeOutcome solve_piece(const Graph& g, const VertexSet& piece, const std::vector<VertexSet>& ring, int k,
                             RecursionMeasure here) {
  const VertexSet attach = neighborhood_of_set(g, piece);
  TWCERT_CHECK(attach.size() >= 2, "piece has fewer than two attachment vertices");
  VertexSet ring_vertices;
  for (const auto& elem : ring) {
    TWCERT_CHECK(set_intersection(elem, piece).empty(), "ring meets the piece");
    ring_vertices.insert(elem.begin(), elem.end());
  }
  TWCERT_CHECK(is_subset(attach, ring_vertices), "ring misses an attachment vertex");

  const Graph host = g.induced(set_union(piece, ring_vertices));
  const auto groups = ring_groups(ring, attach);
  auto [contracted, trace] = contract_groups(host, groups, ContractionTrace::identity(host));
  std::vector<Vertex> root;
  for (const auto& grp : groups) root.push_back(grp.keep);
  TWCERT_CHECK(contracted.vertex_set() == set_union(piece, attach), "contraction left extra vertices");
  for (std::size_t i = 0; i < root.size(); ++i)
    TWCERT_CHECK(contracted.has_edge(root[i], root[(i + 1) % root.size()]), "contracted ring is not a cycle");

  auto sub = solve(contracted, root, k, here);
  if (auto* m = std::get_if<MinorModel>(&sub)) return lift_minor_model(*m, trace);
  return sub;
}

bool has_neighbor_in(const Graph& g, Vertex v, const VertexSet& s) {
  for (Vertex w : g.neighbors(v))
    if (s.count(w)) return true;
  return false;
}

// Path from `from` to `to` through `through` (at least one interior vertex),
// as a vertex sequence; empty when none exists.
std::vector<Vertex> path_through(const Graph& g, Vertex from, Vertex to, const VertexSet& through) {
  VertexSet keep = through;
  keep.insert(to);
  const Graph h = g.induced(keep);
  VertexSet starts;
  for (Vertex w : g.neighbors(from))
    if (through.count(w)) starts.insert(w);
  auto p = shortest_path(h, starts, {to});
  if (p.empty()) return {};
  p.insert(p.begin(), from);
  return p;
}

std::vector<Vertex> cycle_from(const std::vector<Vertex>& root, Vertex v1, Vertex vc) {
  // Walk C from vc away from v1, stopping before v1.
  const int c = static_cast<int>(root.size());
  const int at = static_cast<int>(std::find(root.begin(), root.end(), vc) - root.begin());
  const int dir = root[(at + 1) % c] == v1 ? -1 : 1;
  std::vector<Vertex> out;
  for (int step = 1; step < c - 1; ++step) out.push_back(root[((at + dir * step) % c + c) % c]);
  return out;
}

std::vector<Vertex> outer_cycle(const std::vector<Vertex>& root, const PathChoice& choice) {
  auto seq = choice.full_path();
  const auto rest = cycle_from(root, choice.v1, choice.vc);
  seq.insert(seq.end(), rest.begin(), rest.end());
  return seq;
}

// C_I: C′ with the open interval replaced by a path through M.
std::vector<Vertex> interval_cycle(const Graph& g, const std::vector<Vertex>& root, const PathChoice& choice,
                                   const Interval& iv) {
  const auto detour = path_through(g, iv.left, iv.right, choice.largest);
  TWCERT_CHECK(detour.size() >= 3, "no path through M between the interval ends");
  std::vector<Vertex> seq{choice.v1};
  std::size_t i = 0;
  while (choice.inner[i] != iv.left) seq.push_back(choice.inner[i++]);
  seq.insert(seq.end(), detour.begin(), detour.end() - 1);
  while (choice.inner[i] != iv.right) ++i;
  for (; i < choice.inner.size(); ++i) seq.push_back(choice.inner[i]);
  seq.push_back(choice.vc);
  const auto rest = cycle_from(root, choice.v1, choice.vc);
  seq.insert(seq.end(), rest.begin(), rest.end());
  return seq;
}

// Ring for an end segment: C with the far end of C-edge v1vc stretched along
// P′ up to the nearest attachment vertex.
std::vector<VertexSet> end_segment_ring(const std::vector<Vertex>& root, const PathChoice& choice,
                                        const IntervalStructure& s, const EndSegment& seg) {
  const Vertex far = seg.at_v1_end ? choice.vc : choice.v1;
  VertexSet stretched{far};
  bool inside = !seg.at_v1_end;
  for (Vertex u : choice.inner) {
    if (seg.at_v1_end && u == s.first) inside = true;
    if (inside) stretched.insert(u);
    if (!seg.at_v1_end && u == s.last) inside = false;
  }
  std::vector<VertexSet> ring;
  for (Vertex v : root) ring.push_back(v == far ? stretched : VertexSet{v});
  return ring;
}

}  // namespace

int bag_bound(int k) { return std::max(3 * k / 2 - 3, k); }

std::vector<Vertex> PathChoice::full_path() const {
  std::vector<Vertex> seq{v1};
  seq.insert(seq.end(), inner.begin(), inner.end());
  seq.push_back(vc);
  return seq;
}

void validate_root(const Graph& g, const std::vector<Vertex>& root, int k) {
  if (k < 3) throw InputError("wheel order must be at least 3");
  if (root.size() < 2) throw InputError("root must have at least two vertices");
  if (as_set(root).size() != root.size()) throw InputError("root repeats a vertex");
  for (Vertex v : root)
    if (!g.has_vertex(v)) throw InputError("root vertex " + std::to_string(v) + " not in graph");
  if (root.size() == 2) {
    if (!g.has_edge(root[0], root[1])) throw InputError("root pair is not an edge");
    return;
  }
  if (static_cast<int>(root.size()) > k - 1)
    throw InputError("root cycle has more than k-1 vertices");
  for (std::size_t i = 0; i < root.size(); ++i)
    if (!g.has_edge(root[i], root[(i + 1) % root.size()])) throw InputError("root is not a cycle");
}

MinorModel wheel_model(const Graph& g, const VertexSet& hub, const std::vector<Vertex>& rim, int k) {
  const VertexSet seen = neighborhood_of_set(g, hub);
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < rim.size(); ++i)
    if (seen.count(rim[i])) hits.push_back(i);
  TWCERT_CHECK(static_cast<int>(hits.size()) >= k, "hub sees fewer than k rim vertices");
  const auto smallest = std::min_element(hits.begin(), hits.end(), [&](auto x, auto y) { return rim[x] < rim[y]; });
  std::rotate(hits.begin(), smallest, hits.end());

  MinorModel m;
  m.pattern = PatternSpec::wheel(k).resolved;
  m.branch.assign(k + 1, {});
  for (int i = 0; i < k; ++i) {
    const std::size_t from = hits[i];
    const std::size_t to = i + 1 < k ? hits[i + 1] : hits[0];
    std::size_t at = from;
    do {
      m.branch[i].insert(rim[at]);
      at = (at + 1) % rim.size();
    } while (at != to);
  }
  m.branch[k] = hub;
  const auto verdict = verify_minor_model(g, m);
  TWCERT_CHECK(verdict.ok(), "wheel model invalid: " + verdict.describe());
  return m;
}

PathChoice make_choice(const Graph& g, const std::vector<Vertex>& root, Vertex v1, Vertex vc,
                       std::vector<Vertex> inner) {
  PathChoice p{v1, vc, std::move(inner), {}};
  VertexSet removed = as_set(root);
  removed.insert(p.inner.begin(), p.inner.end());
  for (const auto& comp : components_without(g, removed))
    if (comp.size() > p.largest.size()) p.largest = comp;
  return p;
}

std::optional<DecomposeOutcome> reduce_connectivity(const Graph& g, const std::vector<Vertex>& root, int k) {
  const auto here = measure_of(g, root);
  const VertexSet vc = as_set(root);

  const auto bc = blocks_and_cutvertices(g);
  if (bc.blocks.size() > 1) {
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::map<Vertex, int>> holder(bc.blocks.size());
    std::vector<int> block_root(bc.blocks.size());
    int root_block = -1;
    for (std::size_t b = 0; b < bc.blocks.size(); ++b) {
      const auto& block = bc.blocks[b];
      RootedTreeDecomposition d;
      if (root_block < 0 && is_subset(vc, block)) {
        root_block = static_cast<int>(b);
        auto sub = solve(g.induced(block), root, k, here);
        if (std::holds_alternative<MinorModel>(sub)) return sub;
        d = std::get<RootedTreeDecomposition>(sub);
      } else if (block.size() == 1) {
        d = RootedTreeDecomposition::single(block);
      } else {
        const Graph piece = g.induced(block);
        const auto first = piece.edges().front();
        auto sub = solve(piece, {first.first, first.second}, k, here);
        if (std::holds_alternative<MinorModel>(sub)) return sub;
        d = std::get<RootedTreeDecomposition>(sub);
      }
      const int offset = static_cast<int>(bags.size());
      block_root[b] = offset;
      for (std::size_t i = 0; i < d.size(); ++i) {
        bags.push_back(d.bags[i]);
        if (d.parent[i] >= 0) edges.emplace_back(offset + d.parent[i], offset + static_cast<int>(i));
        for (Vertex v : d.bags[i]) holder[b].try_emplace(v, offset + static_cast<int>(i));
      }
    }
    TWCERT_CHECK(root_block >= 0, "no block contains the root");
    for (Vertex v : bc.cut_vertices) {
      const int hinge = static_cast<int>(bags.size());
      bags.push_back({v});
      for (std::size_t b = 0; b < bc.blocks.size(); ++b)
        if (bc.blocks[b].count(v)) edges.emplace_back(hinge, holder[b].at(v));
    }
    for (const auto& comp : components(g)) {
      if (comp.count(root.front())) continue;
      for (std::size_t b = 0; b < bc.blocks.size(); ++b)
        if (comp.count(*bc.blocks[b].begin())) {
          edges.emplace_back(block_root[root_block], block_root[b]);
          break;
        }
    }
    return RootedTreeDecomposition::from_tree(std::move(bags), edges, block_root[root_block]);
  }

  const auto outside = components_without(g, vc);
  if (outside.size() > 1) {
    std::vector<std::pair<RootedTreeDecomposition, int>> parts;
    for (const auto& comp : outside) {
      auto sub = solve(g.induced(set_union(vc, comp)), root, k, here);
      if (std::holds_alternative<MinorModel>(sub)) return sub;
      parts.emplace_back(std::get<RootedTreeDecomposition>(std::move(sub)), 0);
    }
    return attach(RootedTreeDecomposition::single(vc), parts);
  }

  for (std::size_t i = 0; i < root.size(); ++i) {
    const Vertex v = root[i];
    if (outside.empty() || has_neighbor_in(g, v, outside.front())) continue;
    TWCERT_CHECK(root.size() >= 3, "edge root vertex without outside neighbour in a 2-connected graph");
    const Vertex w = root[(i + 1) % root.size()];
    const std::vector<ContractionGroup> groups{{w, {v, w}}};
    auto [contracted, trace] = contract_groups(g, groups, ContractionTrace::identity(g));
    std::vector<Vertex> smaller;
    for (Vertex x : root)
      if (x != v) smaller.push_back(x);
    auto sub = solve(contracted, smaller, k, here);
    if (auto* m = std::get_if<MinorModel>(&sub)) return lift_minor_model(*m, trace);
    auto d = RootedTreeDecomposition::single(vc);
    d.graft(std::get<RootedTreeDecomposition>(sub), 0);
    return d;
  }
  return std::nullopt;
}

std::variant<PathChoice, RootedTreeDecomposition> initial_path(const Graph& g, const std::vector<Vertex>& root) {
  const VertexSet vc = as_set(root);
  const std::size_t c = root.size();
  std::vector<Vertex> best;
  std::size_t best_edge = 0;
  for (std::size_t i = 0; i < (c == 2 ? 1 : c); ++i) {
    const Vertex x = root[i], y = root[(i + 1) % c];
    VertexSet starts;
    for (Vertex w : g.neighbors(x))
      if (!vc.count(w)) starts.insert(w);
    VertexSet keep = set_difference(g.vertex_set(), vc);
    keep.insert(y);
    auto p = shortest_path(g.induced(keep), starts, {y});
    if (p.empty()) continue;
    if (best.empty() || p.size() < best.size()) {
      best = std::move(p);
      best_edge = i;
    }
  }
  if (best.empty()) throw InputError("no path between adjacent root vertices outside the root");
  const Vertex v1 = root[best_edge], vlast = root[(best_edge + 1) % c];
  std::vector<Vertex> inner(best.begin(), best.end() - 1);

  auto choice = make_choice(g, root, v1, vlast, inner);
  if (!choice.largest.empty()) return choice;

  const std::size_t l = inner.size();
  RootedTreeDecomposition d = RootedTreeDecomposition::single(vc);
  if (c == 2) {
    TWCERT_CHECK(g.num_edges() == g.num_vertices(), "root edge and path do not span a cycle");
    int at = d.add_node({v1, vlast, inner[l - 1]}, 0);
    for (std::size_t j = l - 1; j >= 1; --j) at = d.add_node({v1, inner[j - 1], inner[j]}, at);
    return d;
  }
  // v_1 … v_c along C with v_c = vlast; odd positions see u_1, even see u_ℓ.
  VertexSet odd, even;
  for (std::size_t j = 0; j < c; ++j) {
    const Vertex v = root[(best_edge + c - j) % c];
    VertexSet out;
    for (Vertex w : g.neighbors(v))
      if (!vc.count(w)) out.insert(w);
    const Vertex expect = j % 2 == 0 ? inner.front() : inner.back();
    TWCERT_CHECK(out == VertexSet{expect}, "root vertices do not alternate between the path ends");
    (j % 2 == 0 ? odd : even).insert(v);
  }
  int at = d.add_node(set_union(vc, {inner.front()}), 0);
  VertexSet third = even;
  third.insert(inner.front());
  third.insert(inner.back());
  at = d.add_node(third, at);
  for (std::size_t j = 0; j + 2 < l; ++j) at = d.add_node({inner[j], inner[j + 1], inner.back()}, at);
  return d;
}

std::optional<ImprovementWitness> find_crossing_path(const Graph& g, const std::vector<Vertex>& root,
                                                     const PathChoice& choice) {
  const auto p = choice.full_path();
  const int len = static_cast<int>(p.size());
  const VertexSet hub_seen = neighborhood_of_set(g, choice.largest);
  std::vector<int> attach_before(len + 1, 0);  // attachment positions in [0, i)
  for (int i = 0; i < len; ++i)
    attach_before[i + 1] = attach_before[i] + (i > 0 && i + 1 < len && hub_seen.count(p[i]) ? 1 : 0);
  auto skips_attachment = [&](int lo, int hi) { return attach_before[hi] - attach_before[lo + 1] > 0; };

  auto improve = [&](int lo, int hi, const std::vector<Vertex>& via, const std::string& why) {
    std::vector<Vertex> inner(p.begin() + 1, p.begin() + lo + 1);
    inner.insert(inner.end(), via.begin(), via.end());
    inner.insert(inner.end(), p.begin() + hi, p.end() - 1);
    auto better = make_choice(g, root, choice.v1, choice.vc, std::move(inner));
    TWCERT_CHECK(better.largest.size() > choice.largest.size(), "crossing path did not enlarge M");
    return ImprovementWitness{std::move(better), why};
  };

  for (int i = 0; i < len; ++i)
    for (int j = i + 2; j < len; ++j)
      if (!(i == 0 && j == len - 1) && g.has_edge(p[i], p[j]) && skips_attachment(i, j))
        return improve(i, j, {}, "chord " + std::to_string(p[i]) + "-" + std::to_string(p[j]) + " skips A");

  VertexSet removed = set_union(as_set(root), as_set(p));
  removed.insert(choice.largest.begin(), choice.largest.end());
  for (const auto& comp : components_without(g, removed)) {
    int lo = len, hi = -1;
    for (int i = 0; i < len; ++i)
      if (has_neighbor_in(g, p[i], comp)) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    if (hi <= lo || !skips_attachment(lo, hi)) continue;
    auto through = path_through(g, p[lo], p[hi], comp);
    TWCERT_CHECK(!through.empty(), "component touches both ends but has no path");
    return improve(lo, hi, {through.begin() + 1, through.end() - 1},
                   "component " + to_string(comp) + " bridges over A");
  }
  return std::nullopt;
}

std::variant<IntervalStructure, MinorModel> build_interval_structure(const Graph& g,
                                                                     const std::vector<Vertex>& root,
                                                                     const PathChoice& choice, int k) {
  if (choice.largest.empty()) throw InputError("path choice has no component M");
  if (find_crossing_path(g, root, choice)) throw InputError("path choice admits a crossing path");
  const VertexSet vc = as_set(root);
  const VertexSet on_path = as_set(choice.inner);

  IntervalStructure s;
  s.hub_neighbors = neighborhood_of_set(g, choice.largest);
  s.outer_cycle = outer_cycle(root, choice);
  TWCERT_CHECK(is_subset(s.hub_neighbors, set_union(vc, on_path)), "M sees beyond C and P");
  if (static_cast<int>(s.hub_neighbors.size()) >= k) return wheel_model(g, choice.largest, s.outer_cycle, k);

  std::vector<std::size_t> at;
  for (std::size_t i = 0; i < choice.inner.size(); ++i)
    if (s.hub_neighbors.count(choice.inner[i])) {
      at.push_back(i);
      s.attachments.insert(choice.inner[i]);
    }
  TWCERT_CHECK(!at.empty(), "M has no neighbour on P");
  s.first = choice.inner[at.front()];
  s.last = choice.inner[at.back()];

  const VertexSet removed = set_union(vc, s.attachments);
  auto grown_from = [&](Vertex seed) {
    for (auto& comp : components_without(g, removed))
      if (comp.count(seed)) return comp;
    TWCERT_CHECK(false, "seed vertex lost");
    return VertexSet{};
  };
  auto path_part = [&](std::size_t from, std::size_t to) {
    return std::vector<Vertex>(choice.inner.begin() + from, choice.inner.begin() + to);
  };

  for (std::size_t j = 0; j + 1 < at.size(); ++j) {
    if (at[j + 1] - at[j] < 2) continue;
    Interval iv;
    iv.inner = path_part(at[j] + 1, at[j + 1]);
    iv.left = choice.inner[at[j]];
    iv.right = choice.inner[at[j + 1]];
    iv.grown = grown_from(iv.inner.front());
    iv.attachments = neighborhood_of_set(g, iv.grown);
    TWCERT_CHECK(set_intersection(iv.grown, on_path) == as_set(iv.inner), "Y_I meets P outside I");
    TWCERT_CHECK(is_subset(iv.attachments, set_union(vc, {iv.left, iv.right})), "Y_I sees beyond C and A_I");
    if (static_cast<int>(iv.attachments.size()) >= k)
      return wheel_model(g, iv.grown, interval_cycle(g, root, choice, iv), k);
    s.intervals.push_back(std::move(iv));
  }

  auto add_end = [&](std::size_t from, std::size_t to, bool at_v1_end) {
    if (from == to) return;
    EndSegment seg;
    seg.inner = path_part(from, to);
    seg.at_v1_end = at_v1_end;
    seg.grown = grown_from(seg.inner.front());
    seg.attachments = neighborhood_of_set(g, seg.grown);
    const Vertex far = at_v1_end ? choice.vc : choice.v1;
    const Vertex near = at_v1_end ? s.first : s.last;
    TWCERT_CHECK(set_intersection(seg.grown, on_path) == as_set(seg.inner), "end segment meets the rest of P");
    TWCERT_CHECK(is_subset(seg.attachments, set_union(set_difference(vc, {far}), {near})),
                 "end segment sees beyond C and its attachment vertex");
    s.end_segments.push_back(std::move(seg));
  };
  add_end(0, at.front(), true);
  add_end(at.back() + 1, choice.inner.size(), false);
  return s;
}

JumpTable compute_jumps(const Graph& g, const std::vector<Vertex>& root, const PathChoice& choice,
                        const IntervalStructure& structure) {
  const VertexSet blocked = set_union(set_union(as_set(root), structure.attachments), choice.largest);
  JumpTable t;
  for (Vertex r : root) {
    VertexSet reached{r};
    std::deque<Vertex> queue{r};
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(u)) {
        if (structure.attachments.count(w)) t.targets[r].insert(w);
        if (!blocked.count(w) && reached.insert(w).second) queue.push_back(w);
      }
    }
    auto& hit = t.targets[r];
    if (!hit.empty()) t.with_jumps.insert(r);
    if (!is_subset(hit, {structure.first, structure.last})) t.bad.insert(r);
  }
  return t;
}

std::optional<ImprovementWitness> find_jump_improvement(const Graph& g, const std::vector<Vertex>& root,
                                                        const PathChoice& choice,
                                                        const IntervalStructure& structure,
                                                        const JumpTable& jumps, bool only_bad) {
  const VertexSet vc = as_set(root);
  const VertexSet blocked = set_union(set_union(vc, structure.attachments), choice.largest);
  std::map<Vertex, std::size_t> pos;
  for (std::size_t i = 0; i < choice.inner.size(); ++i) pos[choice.inner[i]] = i;

  const std::size_t c = root.size();
  for (std::size_t i = 0; i < (c == 2 ? 1 : c); ++i)
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex r = flip ? root[(i + 1) % c] : root[i];
      const Vertex r2 = flip ? root[i] : root[(i + 1) % c];
      if (only_bad && !jumps.bad.count(r)) continue;
      for (Vertex b : jumps.targets.at(r)) {
        if (only_bad && (b == structure.first || b == structure.last)) continue;
        for (Vertex b2 : jumps.targets.at(r2)) {
          const auto q1 = shortest_path(g, {r}, {b}, blocked);
          const auto q2 = shortest_path(g, {r2}, {b2}, blocked);
          TWCERT_CHECK(!q1.empty() && !q2.empty(), "jump vanished");
          VertexSet span(q1.begin(), q1.end());
          span.insert(q2.begin(), q2.end());
          const auto [lo, hi] = std::minmax(pos.at(b), pos.at(b2));
          for (std::size_t j = lo; j <= hi; ++j) span.insert(choice.inner[j]);
          span.erase(r);
          const auto star = path_through(g, r, r2, set_difference(span, {r2}));
          if (star.size() < 3) continue;
          auto better = make_choice(g, root, r, r2, {star.begin() + 1, star.end() - 1});
          if (better.largest.size() > choice.largest.size())
            return ImprovementWitness{std::move(better), "jumps from " + std::to_string(r) + " and " +
                                                             std::to_string(r2) + " give a larger M"};
        }
      }
    }
  return std::nullopt;
}

std::optional<ImprovementWitness> check_maximality(const Graph& g, const std::vector<Vertex>& root,
                                                   const PathChoice& choice, int k) {
  if (auto w = find_crossing_path(g, root, choice)) return w;
  auto built = build_interval_structure(g, root, choice, k);
  const auto* s = std::get_if<IntervalStructure>(&built);
  if (!s || s->attachments.size() < 2) return std::nullopt;
  return find_jump_improvement(g, root, choice, *s, compute_jumps(g, root, choice, *s), true);
}

DecomposeOutcome decompose_interval(const Graph& g, const std::vector<Vertex>& root, const PathChoice& choice,
                                    const IntervalStructure& structure, std::size_t interval, int k) {
  const auto& iv = structure.intervals.at(interval);
  return solve_piece(g, iv.grown, singletons(interval_cycle(g, root, choice, iv)), k, measure_of(g, root));
}

CentralResult assemble_central(const Graph& g, const std::vector<Vertex>& root, int k, const PathChoice& choice,
                               const IntervalStructure& structure) {
  const auto here = measure_of(g, root);
  const std::size_t bound = bag_bound(k);
  const VertexSet vc = as_set(root);
  const VertexSet& hub_seen = structure.hub_neighbors;
  const VertexSet central = set_union(vc, structure.attachments);
  const auto pieces = components_without(g, central);

  if (pieces.size() == 1 && pieces.front() == choice.largest && hub_seen == as_set(structure.outer_cycle)) {
    auto sub = solve(g, structure.outer_cycle, k, here);
    if (auto* m = std::get_if<MinorModel>(&sub)) return *m;
    auto d = RootedTreeDecomposition::single(vc);
    d.graft(std::get<RootedTreeDecomposition>(sub), 0);
    return d;
  }

  RootedTreeDecomposition d = RootedTreeDecomposition::single(vc);
  if (structure.attachments.size() == 1) {
    d.add_node(central, 0);
  } else {
    const auto jumps = compute_jumps(g, root, choice, structure);
    for (std::size_t i = 0; i < root.size(); ++i)
      if (jumps.bad.count(root[i]) && (jumps.with_jumps.count(root[(i + 1) % root.size()]) ||
                                       jumps.with_jumps.count(root[(i + root.size() - 1) % root.size()]))) {
        if (auto w = find_jump_improvement(g, root, choice, structure, jumps, true)) return *w;
        if (auto w = find_jump_improvement(g, root, choice, structure, jumps, false)) return *w;
        TWCERT_CHECK(false, "bad vertex " + std::to_string(root[i]) + " has a C-neighbour with a jump");
      }
    TWCERT_CHECK(static_cast<int>(jumps.bad.size()) <= std::max(0, (k - 4) / 2),
                 std::to_string(jumps.bad.size()) + " bad vertices for k = " + std::to_string(k));

    const VertexSet ends{structure.first, structure.last};
    VertexSet key;
    for (Vertex r : root)
      if (jumps.bad.count(r) || hub_seen.count(r)) key.insert(r);
    VertexSet t1 = vc;
    VertexSet t2 = set_union(vc, ends);
    const VertexSet t3 = set_union(key, ends);
    const VertexSet t4 = set_union(key, structure.attachments);

    if (t2.size() > bound) {
      std::optional<std::pair<Vertex, Vertex>> pick;  // (v, a″)
      for (Vertex v : root) {
        if (hub_seen.count(v) || pick) continue;
        for (Vertex end : {structure.first, structure.last})
          if (!pick && jumps.targets.at(v) == VertexSet{end}) pick = std::pair{v, end};
      }
      if (pick) {
        t1.insert(pick->second);
        t2.erase(pick->first);
      } else {
        if (auto w = find_jump_improvement(g, root, choice, structure, jumps, false)) return *w;
        TWCERT_CHECK(false, "central bag exceeds the bound and no larger M was found");
      }
    }
    int at = t1 == vc ? 0 : d.add_node(t1, 0);
    at = d.add_node(t2, at);
    at = d.add_node(t3, at);
    d.add_node(t4, at);
  }
  if (d.max_bag_size() > bound) {
    if (auto w = find_jump_improvement(g, root, choice, structure, compute_jumps(g, root, choice, structure), false))
      return *w;
    TWCERT_CHECK(false, "central bag exceeds " + std::to_string(bound));
  }
  const auto verdict = verify_tree_decomposition(g.induced(central), d, vc);
  TWCERT_CHECK(verdict.ok(), "central decomposition invalid: " + verdict.describe());

  const std::size_t central_nodes = d.size();
  for (const auto& piece : pieces) {
    DecomposeOutcome sub;
    const auto interval = std::find_if(structure.intervals.begin(), structure.intervals.end(),
                                       [&](const Interval& iv) { return iv.grown == piece; });
    const auto segment = std::find_if(structure.end_segments.begin(), structure.end_segments.end(),
                                      [&](const EndSegment& seg) { return seg.grown == piece; });
    if (interval != structure.intervals.end()) {
      sub = decompose_interval(g, root, choice, structure, interval - structure.intervals.begin(), k);
    } else if (segment != structure.end_segments.end()) {
      sub = solve_piece(g, piece, end_segment_ring(root, choice, structure, *segment), k, here);
    } else {
      TWCERT_CHECK(set_intersection(piece, as_set(choice.inner)).empty(), "unclassified piece meets P");
      if (static_cast<int>(neighborhood_of_set(g, piece).size()) >= k)
        return wheel_model(g, piece, structure.outer_cycle, k);
      sub = solve_piece(g, piece, singletons(structure.outer_cycle), k, here);
    }
    if (auto* m = std::get_if<MinorModel>(&sub)) return *m;
    const auto& part = std::get<RootedTreeDecomposition>(sub);
    std::size_t node = 0;
    while (node < central_nodes && !is_subset(part.root_bag(), d.bags[node])) ++node;
    TWCERT_CHECK(node < central_nodes, "no central bag holds N(Q) = " + to_string(part.root_bag()));
    d.graft(part, static_cast<int>(node));
  }
  return d;
}

namespace {

DecomposeOutcome solve(const Graph& g, const std::vector<Vertex>& root, int k,
                       std::optional<RecursionMeasure> caller) {
  const auto here = measure_of(g, root);
  TWCERT_CHECK(!caller || here < *caller, "recursion measure did not decrease");
  const VertexSet vc = as_set(root);
  const std::size_t bound = bag_bound(k);

  auto finish = [&](DecomposeOutcome out) -> DecomposeOutcome {
    if (auto* d = std::get_if<RootedTreeDecomposition>(&out)) {
      const auto verdict = verify_tree_decomposition(g, *d, vc, bound);
      TWCERT_CHECK(verdict.ok(), "decomposition invalid: " + verdict.describe());
    }
    return out;
  };

  if (g.num_vertices() <= bound) {
    auto d = RootedTreeDecomposition::single(vc);
    d.add_node(g.vertex_set(), 0);
    return finish(d);
  }
  if (auto reduced = reduce_connectivity(g, root, k)) return finish(std::move(*reduced));

  auto first = initial_path(g, root);
  if (auto* d = std::get_if<RootedTreeDecomposition>(&first)) return finish(*d);
  PathChoice choice = std::get<PathChoice>(first);

  for (std::size_t round = 0; round <= g.num_vertices(); ++round) {
    if (auto w = find_crossing_path(g, root, choice)) {
      choice = std::move(w->better);
      continue;
    }
    auto built = build_interval_structure(g, root, choice, k);
    if (auto* m = std::get_if<MinorModel>(&built)) return *m;
    auto out = assemble_central(g, root, k, choice, std::get<IntervalStructure>(built));
    if (auto* w = std::get_if<ImprovementWitness>(&out)) {
      TWCERT_CHECK(w->better.largest.size() > choice.largest.size(), "improvement did not enlarge M");
      choice = std::move(w->better);
      continue;
    }
    if (auto* m = std::get_if<MinorModel>(&out)) return *m;
    return finish(std::get<RootedTreeDecomposition>(std::move(out)));
  }
  TWCERT_CHECK(false, "path choice kept improving past |V(G)| rounds");
  return {};
}

}  // namespace

DecomposeOutcome decompose_wheel(const Graph& g, std::optional<std::vector<Vertex>> root, int k) {
  if (k < 3) throw InputError("wheel order must be at least 3");
  if (!root) {
    const auto edges = g.edges();
    if (edges.empty()) {
      RootedTreeDecomposition d;
      if (g.num_vertices() == 0) return RootedTreeDecomposition::single({});
      for (Vertex v : g.vertices()) d.add_node({v}, d.empty() ? -1 : 0);
      return d;
    }
    root = std::vector<Vertex>{edges.front().first, edges.front().second};
  }
  validate_root(g, *root, k);
  auto out = solve(g, *root, k, std::nullopt);
  if (auto* m = std::get_if<MinorModel>(&out)) {
    const auto verdict = verify_minor_model(g, *m);
    TWCERT_CHECK(verdict.ok() && m->pattern == PatternSpec::wheel(k).resolved, "wheel model invalid");
  }
  return out;
}

}  // namespace twcert::wheel
