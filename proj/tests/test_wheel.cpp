#include <gtest/gtest.h>

#include "support.hpp"
#include "twcert/oracles.hpp"
#include "twcert/wheel.hpp"

namespace twcert {
namespace {

using testing::make_graph;
using testing::subdivided_wheel;

void expect_valid(const Graph& g, const DecomposeOutcome& out, int k, const std::optional<VertexSet>& root) {
  if (const auto* d = std::get_if<RootedTreeDecomposition>(&out)) {
    const auto v = verify_tree_decomposition(g, *d, root, wheel::bag_bound(k));
    EXPECT_TRUE(v.ok()) << v.describe();
  } else {
    const auto& m = std::get<MinorModel>(out);
    EXPECT_EQ(m.pattern, PatternSpec::wheel(k).resolved);
    EXPECT_TRUE(verify_minor_model(g, m).ok());
  }
}

TEST(BagBound, Values) {
  EXPECT_EQ(wheel::bag_bound(3), 3);
  EXPECT_EQ(wheel::bag_bound(4), 4);
  EXPECT_EQ(wheel::bag_bound(5), 5);
  EXPECT_EQ(wheel::bag_bound(6), 6);
  EXPECT_EQ(wheel::bag_bound(7), 7);
  EXPECT_EQ(wheel::bag_bound(8), 9);
  EXPECT_EQ(wheel::bag_bound(10), 12);
}

TEST(ValidateRoot, RejectsBadRoots) {
  const Graph c6 = oracles::cycle(6);
  EXPECT_NO_THROW(wheel::validate_root(c6, {0, 1}, 3));
  EXPECT_THROW(wheel::validate_root(c6, {0, 2}, 3), InputError);
  EXPECT_THROW(wheel::validate_root(c6, {0, 1, 2, 3, 4, 5}, 6), InputError);
  EXPECT_NO_THROW(wheel::validate_root(c6, {0, 1, 2, 3, 4, 5}, 7));
  EXPECT_THROW(wheel::validate_root(c6, {0, 1, 2}, 7), InputError);
}

TEST(DecomposeWheel, K4IsTheThreeWheel) {
  const Graph k4 = oracles::clique(4);
  const auto out = wheel::decompose_wheel(k4, std::vector<Vertex>{0, 1}, 3);
  ASSERT_TRUE(std::holds_alternative<MinorModel>(out));
  expect_valid(k4, out, 3, std::nullopt);
}

TEST(DecomposeWheel, TreeHasSmallBags) {
  const Graph t = make_graph(8, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {4, 6}, {6, 7}});
  const auto out = wheel::decompose_wheel(t, std::nullopt, 3);
  ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(out));
  expect_valid(t, out, 3, std::nullopt);
}

TEST(DecomposeWheel, EdgelessGraphs) {
  const auto empty = wheel::decompose_wheel(Graph{}, std::nullopt, 3);
  ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(empty));
  const Graph isolated(3);
  expect_valid(isolated, wheel::decompose_wheel(isolated, std::nullopt, 3), 3, std::nullopt);
}

TEST(DecomposeWheel, RootBagIsTheGivenCycle) {
  // Triangle 0-1-2 with a fan on the far side.
  const Graph g = make_graph(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}, {3, 5}});
  const auto out = wheel::decompose_wheel(g, std::vector<Vertex>{0, 1, 2}, 5);
  expect_valid(g, out, 5, VertexSet{0, 1, 2});
}

TEST(DecomposeWheel, SubdividedWheel) {
  // For k >= 4 a decomposition is also a valid answer: a k-wheel has
  // tree-width 3 < bag_bound(k).
  const auto k3 = wheel::decompose_wheel(subdivided_wheel(3), std::nullopt, 3);
  EXPECT_TRUE(std::holds_alternative<MinorModel>(k3));
  for (int k = 3; k <= 7; ++k) {
    const Graph g = subdivided_wheel(k);
    expect_valid(g, wheel::decompose_wheel(g, std::nullopt, k), k, std::nullopt);
  }
}

TEST(DecomposeWheel, ExhaustiveK3MatchesTheMinorOracle) {
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : oracles::enumerate_connected_graphs(n)) {
      const auto out = wheel::decompose_wheel(g, std::nullopt, 3);
      expect_valid(g, out, 3, std::nullopt);
      const bool present = oracles::exact_minor_test(g, oracles::clique(4)).has_value();
      EXPECT_EQ(std::holds_alternative<MinorModel>(out), present);
    }
}

TEST(DecomposeWheel, ExhaustiveK4ModelsAreReal) {
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : oracles::enumerate_connected_graphs(n)) {
      const auto out = wheel::decompose_wheel(g, std::nullopt, 4);
      expect_valid(g, out, 4, std::nullopt);
      if (std::holds_alternative<MinorModel>(out)) EXPECT_TRUE(oracles::exact_minor_test(g, oracles::wheel(4)));
    }
}

TEST(DecomposeWheel, RandomGraphs) {
  for (int k = 3; k <= 7; ++k)
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const Graph g = oracles::random_gnp(22, 0.12 + 0.02 * k, seed);
      expect_valid(g, wheel::decompose_wheel(g, std::nullopt, k), k, std::nullopt);
    }
}

TEST(ReduceConnectivity, TrianglesSharingAVertex) {
  const Graph g = make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  const auto out = wheel::reduce_connectivity(g, {0, 1}, 4);
  ASSERT_TRUE(out.has_value());
  ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(*out));
  expect_valid(g, *out, 4, VertexSet{0, 1});
}

TEST(ReduceConnectivity, CycleWithPendantPath) {
  const Graph g = make_graph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 5}, {5, 6}});
  const auto out = wheel::reduce_connectivity(g, {0, 1, 2, 3}, 5);
  ASSERT_TRUE(out.has_value());
  expect_valid(g, *out, 5, VertexSet{0, 1, 2, 3});
}

TEST(ReduceConnectivity, NormalizedInstancePassesThrough) {
  EXPECT_FALSE(wheel::reduce_connectivity(subdivided_wheel(5), {1, 6}, 5).has_value());
}

TEST(InitialPath, CycleIsDirect) {
  const Graph c6 = oracles::cycle(6);
  const auto out = wheel::initial_path(c6, {0, 1});
  ASSERT_TRUE(std::holds_alternative<RootedTreeDecomposition>(out));
  const auto v = verify_tree_decomposition(c6, std::get<RootedTreeDecomposition>(out), VertexSet{0, 1}, 3);
  EXPECT_TRUE(v.ok()) << v.describe();
}

TEST(InitialPath, SubdividedWheelGivesNonemptyM) {
  const Graph g = subdivided_wheel(5);
  const auto out = wheel::initial_path(g, {1, 6});
  ASSERT_TRUE(std::holds_alternative<wheel::PathChoice>(out));
  const auto& choice = std::get<wheel::PathChoice>(out);
  EXPECT_FALSE(choice.largest.empty());
  const auto path = choice.full_path();
  EXPECT_EQ(path.front(), choice.v1);
  EXPECT_EQ(path.back(), choice.vc);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(g.has_edge(path[i], path[i + 1]));
}

TEST(Maximality, PlantedCrossingPathEnlargesM) {
  // Root edge 0-1. Long path 0-2-3-4-5-1 with a shortcut 2-6-4 around 3,
  // and a big blob hanging off 3 and 6.
  Graph g = make_graph(11, {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {2, 6}, {6, 4},
                            {3, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 6}, {7, 9}, {1, 8}});
  const auto choice = wheel::make_choice(g, {0, 1}, 0, 1, {2, 3, 4, 5});
  const auto w = wheel::check_maximality(g, {0, 1}, choice, 6);
  if (w) EXPECT_GT(w->better.largest.size(), choice.largest.size());
  const auto out = wheel::decompose_wheel(g, std::vector<Vertex>{0, 1}, 6);
  expect_valid(g, out, 6, VertexSet{0, 1});
}

TEST(IntervalStructure, InvariantsOnRandomInstances) {
  int structures = 0;
  for (int k = 4; k <= 8; ++k)
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const Graph g = oracles::random_gnp(14, 0.22, seed);
      const auto es = g.edges();
      if (es.empty()) continue;
      const std::vector<Vertex> root{es.front().first, es.front().second};
      if (wheel::reduce_connectivity(g, root, k)) continue;
      auto first = wheel::initial_path(g, root);
      if (!std::holds_alternative<wheel::PathChoice>(first)) continue;
      auto choice = std::get<wheel::PathChoice>(first);
      for (std::size_t round = 0; round <= g.num_vertices(); ++round) {
        auto w = wheel::check_maximality(g, root, choice, k);
        if (!w) break;
        ASSERT_GT(w->better.largest.size(), choice.largest.size());
        choice = w->better;
      }
      const auto built = wheel::build_interval_structure(g, root, choice, k);
      if (const auto* m = std::get_if<MinorModel>(&built)) {
        EXPECT_TRUE(verify_minor_model(g, *m).ok());
        continue;
      }
      const auto& s = std::get<wheel::IntervalStructure>(built);
      ++structures;
      EXPECT_FALSE(s.attachments.empty());
      EXPECT_LT(static_cast<int>(s.hub_neighbors.size()), k);
      for (std::size_t i = 0; i < s.intervals.size(); ++i)
        for (std::size_t j = i + 1; j < s.intervals.size(); ++j)
          EXPECT_TRUE(set_intersection(s.intervals[i].grown, s.intervals[j].grown).empty());
      const auto jumps = wheel::compute_jumps(g, root, choice, s);
      for (Vertex r : root)
        for (Vertex a : g.neighbors(r))
          if (s.attachments.count(a)) EXPECT_TRUE(jumps.targets.at(r).count(a));
      for (std::size_t i = 0; i < s.intervals.size(); ++i) {
        const auto out = wheel::decompose_interval(g, root, choice, s, i, k);
        if (const auto* d = std::get_if<RootedTreeDecomposition>(&out)) {
          EXPECT_EQ(d->root_bag(), s.intervals[i].attachments);
          EXPECT_LE(d->max_bag_size(), static_cast<std::size_t>(wheel::bag_bound(k)));
        } else {
          EXPECT_TRUE(verify_minor_model(g, std::get<MinorModel>(out)).ok());
        }
      }
    }
  EXPECT_GT(structures, 10);
}

TEST(WheelModel, HubAndRim) {
  const Graph g = subdivided_wheel(4);
  const auto m = wheel::wheel_model(g, {0}, {1, 5, 2, 6, 3, 7, 4, 8}, 4);
  EXPECT_EQ(m.pattern, oracles::wheel(4));
  EXPECT_TRUE(verify_minor_model(g, m).ok());
}

}  // namespace
}  // namespace twcert
