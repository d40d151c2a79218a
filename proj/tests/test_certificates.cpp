#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "twcert/certificates.hpp"
#include "twcert/oracles.hpp"

namespace twcert {
namespace {

using testing::make_graph;

RootedTreeDecomposition path_decomposition(const std::vector<VertexSet>& bags) {
  RootedTreeDecomposition d = RootedTreeDecomposition::single(bags.front());
  for (std::size_t i = 1; i < bags.size(); ++i) d.add_node(bags[i], static_cast<int>(i) - 1);
  return d;
}

TEST(Width, Examples) {
  EXPECT_EQ(width(RootedTreeDecomposition::single({0, 1, 2, 3, 4})), 4);
  EXPECT_EQ(width(path_decomposition({{0, 1}, {1, 2, 3}})), 2);
  EXPECT_EQ(width(path_decomposition({{0}, {1}, {2}})), 0);
  EXPECT_THROW(width(RootedTreeDecomposition{}), InputError);
}

TEST(VerifyDecomposition, TriangleSingleBag) {
  const auto v = verify_tree_decomposition(oracles::clique(3), RootedTreeDecomposition::single({0, 1, 2}));
  EXPECT_TRUE(v.ok()) << v.describe();
}

TEST(VerifyDecomposition, TriangleMissingEdge) {
  const auto v = verify_tree_decomposition(oracles::clique(3), path_decomposition({{0, 1}, {1, 2}}));
  EXPECT_EQ(v.violation, Violation::EdgeUncovered);
  EXPECT_NE(v.witness.find('0'), std::string::npos);
  EXPECT_NE(v.witness.find('2'), std::string::npos);
}

TEST(VerifyDecomposition, PathAlongPath) {
  const auto d = path_decomposition({{0, 1}, {1, 2}, {2, 3}});
  EXPECT_TRUE(verify_tree_decomposition(oracles::path(4), d).ok());
  EXPECT_EQ(width(d), 1);
}

TEST(VerifyDecomposition, EachAxiom) {
  const Graph p4 = oracles::path(4);
  EXPECT_EQ(verify_tree_decomposition(p4, path_decomposition({{0, 1}, {1, 2}})).violation,
            Violation::VertexUncovered);
  EXPECT_EQ(verify_tree_decomposition(p4, path_decomposition({{0, 1}, {1, 2}, {2, 3}, {1, 3}})).violation,
            Violation::OccurrenceDisconnected);
  EXPECT_EQ(verify_tree_decomposition(p4, path_decomposition({{0, 1}, {1, 2}, {2, 3, 9}})).violation,
            Violation::ForeignVertex);
  EXPECT_EQ(verify_tree_decomposition(p4, path_decomposition({{0, 1}, {1, 2}, {2, 3}}), VertexSet{1, 2}).violation,
            Violation::RootBagMismatch);
  EXPECT_EQ(verify_tree_decomposition(p4, path_decomposition({{0, 1, 2}, {2, 3}}), std::nullopt, 2).violation,
            Violation::BagTooLarge);

  RootedTreeDecomposition cyclic = path_decomposition({{0, 1}, {1, 2}, {2, 3}});
  cyclic.parent[1] = 2;
  EXPECT_EQ(verify_tree_decomposition(p4, cyclic).violation, Violation::MalformedTree);
}

TEST(FromTree, RenumbersFromTheRoot) {
  const auto d = RootedTreeDecomposition::from_tree({{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}}, 2);
  EXPECT_EQ(d.root_bag(), (VertexSet{2, 3}));
  EXPECT_TRUE(verify_tree_decomposition(oracles::path(4), d).ok());
  for (std::size_t t = 1; t < d.size(); ++t) EXPECT_LT(d.parent[t], static_cast<int>(t));
}

TEST(Attach, NothingLeavesBaseUnchanged) {
  const auto base = path_decomposition({{0, 1}, {1, 2}});
  EXPECT_EQ(attach(base, {}), base);
}

TEST(Attach, IdentifiesChildRootWithBaseNode) {
  const auto base = RootedTreeDecomposition::single({0, 1});
  const auto child = path_decomposition({{0, 1}, {0, 1, 2}});
  const auto d = attach(base, {{child, 0}});
  EXPECT_EQ(d.bags, (std::vector<VertexSet>{{0, 1}, {0, 1, 2}}));
  EXPECT_EQ(d.parent, (std::vector<int>{-1, 0}));
}

TEST(Attach, TwoChildrenAtOneNode) {
  // Base is the edge 0-1; the children add triangles on 2 and on 3.
  const auto base = RootedTreeDecomposition::single({0, 1});
  const auto left = path_decomposition({{0, 1}, {0, 1, 2}});
  const auto right = path_decomposition({{0, 1}, {0, 1, 3}});
  const auto d = attach(base, {{left, 0}, {right, 0}});
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.children()[0].size(), 2u);
  const Graph g = make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
  EXPECT_TRUE(verify_tree_decomposition(g, d).ok());
}

TEST(Attach, RandomCompatiblePiecesVerify) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    // Base: path 0..3 with bags along it. Each child hangs a fresh vertex
    // off the bag {i, i+1}.
    Graph g = oracles::path(4);
    const auto base = path_decomposition({{0, 1}, {1, 2}, {2, 3}});
    std::vector<std::pair<RootedTreeDecomposition, int>> children;
    const int pieces = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < pieces; ++i) {
      const int z = static_cast<int>(rng() % 3);
      const Vertex fresh = 4 + i;
      g.add_vertex(fresh);
      g.add_edge(fresh, z);
      g.add_edge(fresh, z + 1);
      children.push_back({path_decomposition({base.bags[z], set_union(base.bags[z], {fresh})}), z});
    }
    const auto d = attach(base, children);
    EXPECT_TRUE(verify_tree_decomposition(g, d).ok());
  }
}

TEST(Attach, RootBagMismatchIsAnInputError) {
  const auto base = RootedTreeDecomposition::single({0, 1});
  EXPECT_THROW(attach(base, {{RootedTreeDecomposition::single({0, 2}), 0}}), InputError);
  EXPECT_THROW(attach(base, {{RootedTreeDecomposition::single({0, 1}), 3}}), InputError);
}

TEST(VerifyMinor, Examples) {
  const Graph k4 = oracles::clique(4);
  MinorModel m{oracles::clique(3), {{0}, {1}, {2}}};
  EXPECT_TRUE(verify_minor_model(k4, m).ok());

  MinorModel overlap{oracles::clique(3), {{0, 1}, {1}, {2}}};
  EXPECT_EQ(verify_minor_model(k4, overlap).violation, Violation::BranchSetsOverlap);

  MinorModel missing{oracles::clique(3), {{0}, {1}, {2}}};
  EXPECT_EQ(verify_minor_model(oracles::path(3), missing).violation, Violation::PatternEdgeMissing);

  MinorModel empty{oracles::clique(3), {{0}, {}, {2}}};
  EXPECT_EQ(verify_minor_model(k4, empty).violation, Violation::EmptyBranchSet);

  MinorModel split{oracles::path(2), {{0, 2}, {1}}};
  EXPECT_EQ(verify_minor_model(oracles::path(3), split).violation, Violation::BranchSetDisconnected);
}

TEST(LiftMinor, IdentityTrace) {
  const Graph k4 = oracles::clique(4);
  const MinorModel m{oracles::clique(3), {{0}, {1}, {3}}};
  EXPECT_EQ(lift_minor_model(m, ContractionTrace::identity(k4)), m);
}

TEST(LiftMinor, OneContraction) {
  const Graph k4 = oracles::clique(4);
  const std::vector<Edge> e{{0, 1}};
  const auto [k3, trace] = contract_edges(k4, e, ContractionTrace::identity(k4));
  const MinorModel m{oracles::clique(3), {{0}, {2}, {3}}};
  ASSERT_TRUE(verify_minor_model(k3, m).ok());
  const auto lifted = lift_minor_model(m, trace);
  EXPECT_EQ(lifted.branch[0], (VertexSet{0, 1}));
  EXPECT_TRUE(verify_minor_model(k4, lifted).ok());
}

TEST(LiftMinor, RandomContractionSequences) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Graph g = oracles::random_gnp(9, 0.5, seed);
    Graph h = g;
    ContractionTrace trace = ContractionTrace::identity(g);
    while (h.num_vertices() > 3 && h.num_edges() > 0) {
      const auto es = h.edges();
      const std::vector<Edge> pick{es[rng() % es.size()]};
      std::tie(h, trace) = contract_edges(h, pick, trace);
    }
    // The contracted graph is its own minor, vertex by vertex.
    std::vector<Vertex> order = h.vertices();
    MinorModel m{oracles::relabel(h, order), {}};
    for (Vertex v : order) m.branch.push_back({v});
    ASSERT_TRUE(verify_minor_model(h, m).ok());
    const auto v = verify_minor_model(g, lift_minor_model(m, trace));
    EXPECT_TRUE(v.ok()) << "seed " << seed << ": " << v.describe();
  }
}

TEST(PatternSpec, ApexForestAndWheel) {
  const auto p = PatternSpec::apex_forest(oracles::path(3));
  EXPECT_EQ(p.resolved.num_vertices(), 4u);
  EXPECT_EQ(p.resolved.num_edges(), 5u);
  EXPECT_EQ(p.apex(), 3);
  EXPECT_THROW(PatternSpec::apex_forest(oracles::cycle(3)), InputError);

  const auto w = PatternSpec::wheel(4);
  EXPECT_EQ(w.resolved, oracles::wheel(4));
  EXPECT_EQ(w.apex(), 4);
  EXPECT_THROW(PatternSpec::wheel(2), InputError);
}

}  // namespace
}  // namespace twcert
