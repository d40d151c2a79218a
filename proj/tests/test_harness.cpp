#include <gtest/gtest.h>

#include <filesystem>

#include "twcert/harness.hpp"
#include "twcert/io.hpp"
#include "twcert/oracles.hpp"

namespace twcert {
namespace {

TEST(FuzzInstances, ExhaustiveCoversEveryClass) {
  harness::FuzzSpec spec;
  spec.n = 5;
  const auto instances = harness::fuzz_instances(spec);
  ASSERT_EQ(instances.size(), 21u);
  EXPECT_EQ(instances.front().id, "exh-n5-00000");
}

TEST(FuzzInstances, GnpIdsAndGraphsAreReproducible) {
  harness::FuzzSpec spec;
  spec.mode = harness::FuzzSpec::Mode::Gnp;
  spec.n = 12;
  spec.probabilities = {0.1, 0.5};
  spec.seeds = 3;
  spec.base_seed = 40;
  const auto a = harness::fuzz_instances(spec);
  const auto b = harness::fuzz_instances(spec);
  ASSERT_EQ(a.size(), 6u);
  EXPECT_EQ(a.front().id, "gnp-n12-p0.100-s000040");
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].graph, b[i].graph);
  }
}

TEST(BagLimit, PerPattern) {
  EXPECT_EQ(harness::bag_limit(PatternSpec::apex_forest(oracles::path(4))), 4u);
  EXPECT_EQ(harness::bag_limit(PatternSpec::wheel(8)), 9u);
}

TEST(RunInstance, ReportsOracleComparisons) {
  harness::RunOptions options;
  options.pattern = PatternSpec::wheel(3);
  const auto r = harness::run_instance({"k4", oracles::clique(4)}, options);
  EXPECT_EQ(r.outcome, "model");
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.comparisons.size(), 2u);
  EXPECT_EQ(r.comparisons[0].name, "treewidth");
  EXPECT_EQ(r.comparisons[1].detail, "present");
  EXPECT_FALSE(r.millis.has_value());
}

TEST(RunInstance, SkipsOraclesAboveTheCutoff) {
  harness::RunOptions options;
  options.pattern = PatternSpec::apex_forest(oracles::path(3));
  options.max_oracle_n = 5;
  const auto r = harness::run_instance({"c8", oracles::cycle(8)}, options);
  EXPECT_EQ(r.outcome, "decomposition");
  EXPECT_LE(r.max_bag, 3u);
  EXPECT_TRUE(r.comparisons.empty());
}

TEST(RunInstance, WritesCertificates) {
  const auto dir = std::filesystem::temp_directory_path() / "twcert_harness_test";
  std::filesystem::remove_all(dir);
  harness::RunOptions options;
  options.pattern = PatternSpec::wheel(4);
  options.out_dir = dir.string();
  const Graph g = oracles::grid(3, 3);
  const auto r = harness::run_instance({"grid", g}, options);
  ASSERT_FALSE(r.certificate_path.empty());
  const std::string text = io::read_file(r.certificate_path);
  if (r.outcome == "decomposition")
    EXPECT_TRUE(verify_tree_decomposition(g, io::parse_decomposition(text).decomposition).ok());
  else
    EXPECT_TRUE(verify_minor_model(g, io::parse_minor_model(text)).ok());
  std::filesystem::remove_all(dir);
}

TEST(RunInstance, ErrorsAreReported) {
  harness::RunOptions options;
  options.pattern = PatternSpec::wheel(3);
  options.cycle = std::vector<Vertex>{0, 2};
  const auto r = harness::run_instance({"p3", oracles::path(3)}, options);
  EXPECT_EQ(r.outcome, "error");
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.to_json().find("\"verdict\":\"not run\""), std::string::npos);
}

TEST(RunBatch, IndependentOfThreadCount) {
  harness::FuzzSpec spec;
  spec.mode = harness::FuzzSpec::Mode::Gnp;
  spec.n = 14;
  spec.probabilities = {0.2, 0.3};
  spec.seeds = 8;
  harness::RunOptions options;
  options.pattern = PatternSpec::wheel(5);
  options.max_oracle_n = 0;
  const auto instances = harness::fuzz_instances(spec);
  const auto serial = harness::run_batch(instances, options, 1);
  const auto parallel = harness::run_batch(instances, options, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_TRUE(serial[i].ok()) << serial[i].to_json();
    EXPECT_EQ(serial[i].to_json(), parallel[i].to_json());
    if (i > 0) EXPECT_LT(serial[i - 1].id, serial[i].id);
  }
}

}  // namespace
}  // namespace twcert
