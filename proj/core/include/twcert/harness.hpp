#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twcert/certificates.hpp"
#include "twcert/graph.hpp"
#include "twcert/oracles.hpp"

// Runs decomposers on batches of instances and cross-checks every answer.
namespace twcert::harness {

/// Dispatches on the pattern kind. `cycle` is only used for wheels.
DecomposeOutcome decompose(const Graph& g, const PatternSpec& pattern,
                           const std::optional<std::vector<Vertex>>& cycle = std::nullopt);

/// Largest bag a decomposition for this pattern may have.
std::size_t bag_limit(const PatternSpec& pattern);

/// Verifier pass for either certificate kind, including the bag limit and
/// the pattern of a model.
Verdict verify_outcome(const Graph& g, const PatternSpec& pattern, const DecomposeOutcome& outcome);

struct OracleComparison {
  std::string name;
  bool agrees = true;
  std::string detail;
};

struct RunReport {
  std::string id;
  std::string pattern;
  std::string outcome;  // "decomposition", "model" or "error"
  std::string certificate_path;
  Verdict verdict;
  std::size_t max_bag = 0;
  std::vector<OracleComparison> comparisons;
  std::optional<double> millis;
  std::string error;

  bool ok() const;
  /// One JSON object on a single line.
  std::string to_json() const;
};

struct Instance {
  std::string id;
  Graph graph;
};

struct RunOptions {
  PatternSpec pattern;
  std::optional<std::vector<Vertex>> cycle;
  std::optional<std::string> out_dir;
  int max_oracle_n = 9;
  oracles::Limits limits;
  bool timing = false;
};

RunReport run_instance(const Instance& instance, const RunOptions& options);

/// Runs instances on `jobs` worker threads; reports come back sorted by id.
std::vector<RunReport> run_batch(const std::vector<Instance>& instances, const RunOptions& options, int jobs = 1);

struct FuzzSpec {
  enum class Mode { Exhaustive, Gnp } mode = Mode::Exhaustive;
  int n = 6;
  std::vector<double> probabilities{0.3};
  int seeds = 10;
  std::uint64_t base_seed = 1;
};

std::vector<Instance> fuzz_instances(const FuzzSpec& spec);

}  // namespace twcert::harness
