#include <gtest/gtest.h>

#include "support.hpp"
#include "twcert/apex_forest.hpp"
#include "twcert/menger.hpp"
#include "twcert/oracles.hpp"

namespace twcert {
namespace {

using apex_forest::Octopus;
using testing::make_graph;

// S = {0,1}; vertex 2 sees both and is the only way into the clique 3..6.
// The wrist {2,3} has |S| vertices but only one path from S reaches it.
struct ThickWristInstance {
  Graph g = make_graph(7, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
  Octopus octopus() const {
    RootedTreeDecomposition d = RootedTreeDecomposition::single({0, 1});
    const int mid = d.add_node({0, 1, 2}, 0);
    const int wrist = d.add_node({2, 3}, mid);
    d.add_node({3, 4, 5, 6}, wrist);
    return Octopus{d, {0, 1}, 3};
  }
};

TEST(VerifyOctopus, TrivialTwoNodeOctopus) {
  const Graph g = oracles::clique(5);
  RootedTreeDecomposition d = RootedTreeDecomposition::single({0, 1});
  d.add_node(g.vertex_set(), 0);
  const Octopus o{d, {0, 1}, 2};
  EXPECT_TRUE(apex_forest::verify_octopus(g, o, false).ok());
  // The root is a wrist with |S| vertices.
  EXPECT_EQ(apex_forest::verify_octopus(g, o, true).violation, Violation::ThickWrist);
}

TEST(VerifyOctopus, OversizedInternalNode) {
  const Graph g = oracles::path(4);
  RootedTreeDecomposition d = RootedTreeDecomposition::single({0});
  const int mid = d.add_node({0, 1, 2}, 0);
  d.add_node({2, 3}, mid);
  EXPECT_EQ(apex_forest::verify_octopus(g, Octopus{d, {0}, 2}, false).violation, Violation::OversizedBagNotLeaf);
}

TEST(VerifyOctopus, ThickWristNamed) {
  const ThickWristInstance inst;
  const auto o = inst.octopus();
  EXPECT_TRUE(apex_forest::verify_octopus(inst.g, o, false).ok());
  EXPECT_EQ(o.wrists(), (std::vector<int>{2}));
  EXPECT_EQ(o.thick_wrists(), (std::vector<int>{2}));
  const auto v = apex_forest::verify_octopus(inst.g, o, true);
  EXPECT_EQ(v.violation, Violation::ThickWrist);
  EXPECT_NE(v.witness.find('2'), std::string::npos);
}

TEST(EasyOctopus, NoOutsideVertices) {
  const Graph g = oracles::clique(3);
  const auto o = apex_forest::easy_octopus(g, {0, 1, 2});
  EXPECT_EQ(o.decomposition.size(), 1u);
}

TEST(EasyOctopus, Star) {
  const Graph g = oracles::star(4);
  const auto o = apex_forest::easy_octopus(g, {0, 1});
  EXPECT_TRUE(apex_forest::verify_octopus(g, o, true).ok());
  for (int w : o.wrists()) EXPECT_EQ(o.decomposition.bags[w].size(), 1u);
  EXPECT_EQ(o.decomposition.size(), 7u);
}

TEST(EasyOctopus, ComponentSeeingAllOfSIsRejected) {
  EXPECT_THROW(apex_forest::easy_octopus(oracles::cycle(4), {0, 2}), InputError);
}

TEST(EasyOctopus, RandomInstancesAreThin) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Graph g = oracles::random_gnp(10, 0.25, seed);
    const VertexSet s{0, 1, 2};
    bool pre = true;
    for (const auto& c : components_without(g, s))
      if (neighborhood_of_set(g, c) == s) pre = false;
    if (!pre) continue;
    ++checked;
    const auto o = apex_forest::easy_octopus(g, s);
    EXPECT_TRUE(apex_forest::verify_octopus(g, o, true).ok()) << "seed " << seed;
  }
  EXPECT_GT(checked, 20);
}

TEST(BaseOctopus, ApexGraphItself) {
  const Graph f = oracles::path(3);
  const auto pattern = PatternSpec::apex_forest(f);
  const auto out = apex_forest::base_octopus(pattern.resolved, {0, 1, 2}, f, {{0, 0}, {1, 1}, {2, 2}});
  ASSERT_TRUE(std::holds_alternative<MinorModel>(out));
  const auto& m = std::get<MinorModel>(out);
  EXPECT_EQ(m.branch.back(), (VertexSet{3}));
  EXPECT_TRUE(verify_minor_model(pattern.resolved, m).ok());
}

TEST(BaseOctopus, TreeAlone) {
  const Graph f = oracles::star(3);
  const auto out = apex_forest::base_octopus(f, {0, 1, 2, 3}, f, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  ASSERT_TRUE(std::holds_alternative<Octopus>(out));
  EXPECT_EQ(std::get<Octopus>(out).decomposition.size(), 1u);
}

TEST(BaseOctopus, RandomModelsVerify) {
  const Graph f = oracles::path(3);
  const auto pattern = PatternSpec::apex_forest(f);
  int models = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    Graph g = oracles::random_gnp(9, 0.3, seed);
    for (auto [u, v] : f.edges()) g.add_edge(u, v);
    const auto out = apex_forest::base_octopus(g, {0, 1, 2}, f, {{0, 0}, {1, 1}, {2, 2}});
    if (const auto* m = std::get_if<MinorModel>(&out)) {
      ++models;
      EXPECT_EQ(m->pattern, pattern.resolved);
      EXPECT_TRUE(verify_minor_model(g, *m).ok()) << "seed " << seed;
    } else {
      EXPECT_TRUE(apex_forest::verify_octopus(g, std::get<Octopus>(out), true).ok()) << "seed " << seed;
    }
  }
  EXPECT_GT(models, 0);
}

TEST(Reroute, ReducesThickWrists) {
  const ThickWristInstance inst;
  const auto o = inst.octopus();
  const auto out = apex_forest::reroute_thick_wrist(inst.g, o, 2);
  EXPECT_EQ(out.decomposition.root_bag(), o.root_set);
  EXPECT_TRUE(apex_forest::verify_octopus(inst.g, out, false).ok());
  EXPECT_LT(out.thick_wrists().size(), o.thick_wrists().size());
  const auto kids = out.decomposition.children();
  const int added = static_cast<int>(out.decomposition.size()) - 1;
  EXPECT_EQ(out.decomposition.parent[added], 2);
  EXPECT_TRUE(kids[added].empty());
}

TEST(Reroute, RejectsNodesThatAreNotThickWrists) {
  const ThickWristInstance inst;
  EXPECT_THROW(apex_forest::reroute_thick_wrist(inst.g, inst.octopus(), 1), InputError);
}

TEST(MinimizeThickWrists, FixedPointWithoutThickWrists) {
  const Graph g = oracles::star(4);
  const auto o = apex_forest::easy_octopus(g, {0, 1});
  EXPECT_EQ(apex_forest::minimize_thick_wrists(g, o).decomposition, o.decomposition);
}

TEST(MinimizeThickWrists, RemainingThickWristsAreLinked) {
  const ThickWristInstance inst;
  const auto out = apex_forest::minimize_thick_wrists(inst.g, inst.octopus());
  EXPECT_TRUE(apex_forest::verify_octopus(inst.g, out, false).ok());
  for (int t : out.thick_wrists())
    EXPECT_EQ(max_disjoint_paths(inst.g, out.root_set, out.decomposition.bags[t]).size(), out.root_set.size());
}

TEST(ThinOctopus, CompleteGraphContainsStarApex) {
  const Graph f = oracles::star(3);
  const auto out = apex_forest::build_thin_octopus(oracles::clique(5), {2}, f, {{0, 2}});
  ASSERT_TRUE(std::holds_alternative<MinorModel>(out));
  const auto& m = std::get<MinorModel>(out);
  EXPECT_EQ(m.pattern, PatternSpec::apex_forest(f).resolved);
  EXPECT_TRUE(verify_minor_model(oracles::clique(5), m).ok());
}

TEST(ThinOctopus, CycleHasNoPathApex) {
  const Graph c5 = oracles::cycle(5);
  const auto out = apex_forest::build_thin_octopus(c5, {0}, oracles::path(4), {{0, 0}});
  ASSERT_TRUE(std::holds_alternative<Octopus>(out));
  const auto& o = std::get<Octopus>(out);
  EXPECT_TRUE(apex_forest::verify_octopus(c5, o, true).ok());
  EXPECT_TRUE(o.wrists().empty());
  EXPECT_LE(width(o.decomposition), 3);
}

TEST(DecomposeApexForest, CompleteGraphIsTight) {
  for (int n = 4; n <= 8; ++n) {
    const auto out = apex_forest::decompose_apex_forest(oracles::clique(n - 1), oracles::path(n - 1));
    ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(out)) << n;
    EXPECT_EQ(width(std::get<RootedTreeDecomposition>(out)), n - 2);
  }
}

TEST(DecomposeApexForest, TreeHost) {
  const Graph host = make_graph(7, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}});
  for (int size = 2; size <= 4; ++size) {
    const auto out = apex_forest::decompose_apex_forest(host, oracles::path(size));
    ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(out));
    const auto& d = std::get<RootedTreeDecomposition>(out);
    EXPECT_TRUE(verify_tree_decomposition(host, d).ok());
    EXPECT_LE(width(d), size - 1);
  }
}

TEST(DecomposeApexForest, DisconnectedHost) {
  const Graph host = make_graph(8, {{0, 1}, {1, 2}, {0, 2}, {4, 5}, {5, 6}, {6, 7}, {4, 7}, {4, 6}});
  const auto out = apex_forest::decompose_apex_forest(host, oracles::path(3));
  ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(out));
  const auto& d = std::get<RootedTreeDecomposition>(out);
  EXPECT_TRUE(verify_tree_decomposition(host, d).ok());
  EXPECT_LE(width(d), 2);
}

TEST(DecomposeApexForest, RandomCertificatesVerify) {
  const Graph f = oracles::star(3);
  const auto pattern = PatternSpec::apex_forest(f);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Graph g = oracles::random_gnp(25, 0.15, seed);
    const auto out = apex_forest::decompose_apex_forest(g, f);
    if (const auto* d = std::get_if<RootedTreeDecomposition>(&out)) {
      EXPECT_TRUE(verify_tree_decomposition(g, *d, std::nullopt, 4).ok()) << seed;
    } else {
      const auto& m = std::get<MinorModel>(out);
      EXPECT_EQ(m.pattern, pattern.resolved);
      EXPECT_TRUE(verify_minor_model(g, m).ok()) << seed;
    }
  }
}

}  // namespace
}  // namespace twcert
