#include "twcert/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "json.hpp"
#include "twcert/apex_forest.hpp"
#include "twcert/io.hpp"
#include "twcert/wheel.hpp"

namespace twcert::harness {

DecomposeOutcome decompose(const Graph& g, const PatternSpec& pattern,
                           const std::optional<std::vector<Vertex>>& cycle) {
  if (pattern.kind == PatternKind::ApexForest) return apex_forest::decompose_apex_forest(g, pattern.forest);
  return wheel::decompose_wheel(g, cycle, pattern.k);
}

std::size_t bag_limit(const PatternSpec& pattern) {
  if (pattern.kind == PatternKind::ApexForest) return pattern.forest.num_vertices();
  return static_cast<std::size_t>(wheel::bag_bound(pattern.k));
}

Verdict verify_outcome(const Graph& g, const PatternSpec& pattern, const DecomposeOutcome& outcome) {
  if (const auto* d = std::get_if<RootedTreeDecomposition>(&outcome))
    return verify_tree_decomposition(g, *d, std::nullopt, bag_limit(pattern));
  const auto& m = std::get<MinorModel>(outcome);
  if (!(m.pattern == pattern.resolved))
    return Verdict::reject(Violation::PatternEdgeMissing, "model pattern differs from " + pattern.name());
  return verify_minor_model(g, m);
}

bool RunReport::ok() const {
  if (outcome == "error" || !verdict.ok()) return false;
  return std::all_of(comparisons.begin(), comparisons.end(), [](const auto& c) { return c.agrees; });
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["pattern"] = pattern;
  j["outcome"] = outcome;
  if (!certificate_path.empty()) j["certificate"] = certificate_path;
  j["verdict"] = outcome == "error" ? "not run" : verdict.ok() ? "accept" : verdict.describe();
  j["max_bag"] = max_bag;
  auto& list = j["comparisons"] = nlohmann::ordered_json::array();
  for (const auto& c : comparisons) list.push_back({{"name", c.name}, {"agrees", c.agrees}, {"detail", c.detail}});
  if (!error.empty()) j["error"] = error;
  if (millis) j["millis"] = *millis;
  return j.dump();
}

RunReport run_instance(const Instance& instance, const RunOptions& options) {
  RunReport r;
  r.id = instance.id;
  r.pattern = options.pattern.name();
  const auto start = std::chrono::steady_clock::now();
  const Graph& g = instance.graph;
  try {
    const auto outcome = decompose(g, options.pattern, options.cycle);
    r.verdict = verify_outcome(g, options.pattern, outcome);
    const auto* d = std::get_if<RootedTreeDecomposition>(&outcome);
    r.outcome = d ? "decomposition" : "model";
    if (d) r.max_bag = d->max_bag_size();

    if (options.out_dir) {
      std::filesystem::create_directories(*options.out_dir);
      const auto file = std::filesystem::path(*options.out_dir) / (instance.id + (d ? ".td" : ".json"));
      io::write_file(file.string(), d ? io::emit_decomposition(*d, g.label_bound())
                                      : io::emit_minor_model(std::get<MinorModel>(outcome)));
      r.certificate_path = file.string();
    }

    if (static_cast<int>(g.num_vertices()) <= options.max_oracle_n) {
      const int tw = oracles::exact_treewidth(g, options.limits.treewidth_vertices).width;
      const int forced = static_cast<int>(bag_limit(options.pattern));
      OracleComparison width_check{"treewidth", true, "tw=" + std::to_string(tw)};
      if (d && tw > width(*d)) {
        width_check.agrees = false;
        width_check.detail += " exceeds the certificate width " + std::to_string(width(*d));
      } else if (d && tw >= forced) {
        width_check.agrees = false;
        width_check.detail += " forces a minor but a decomposition was returned";
      }
      r.comparisons.push_back(width_check);

      if (options.pattern.resolved.num_vertices() <= static_cast<std::size_t>(options.limits.minor_pattern_vertices) &&
          static_cast<int>(g.num_vertices()) <= options.limits.minor_host_vertices) {
        const bool present = oracles::exact_minor_test(g, options.pattern.resolved, options.limits).has_value();
        OracleComparison minor_check{"minor", true, present ? "present" : "absent"};
        if (!d && !present) {
          minor_check.agrees = false;
          minor_check.detail += " but a model was returned";
        }
        r.comparisons.push_back(minor_check);
      }
    }
  } catch (const std::exception& e) {
    r.outcome = "error";
    r.error = e.what();
  }
  if (options.timing)
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<RunReport> run_batch(const std::vector<Instance>& instances, const RunOptions& options, int jobs) {
  std::vector<RunReport> reports(instances.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) reports[i] = run_instance(instances[i], options);
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(instances.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return reports;
}

std::vector<Instance> fuzz_instances(const FuzzSpec& spec) {
  std::vector<Instance> out;
  char id[96];
  if (spec.mode == FuzzSpec::Mode::Exhaustive) {
    const auto& graphs = oracles::enumerate_connected_graphs(spec.n);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      std::snprintf(id, sizeof id, "exh-n%d-%05zu", spec.n, i);
      out.push_back({id, graphs[i]});
    }
    return out;
  }
  for (double p : spec.probabilities)
    for (int s = 0; s < spec.seeds; ++s) {
      const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(s);
      std::snprintf(id, sizeof id, "gnp-n%02d-p%.3f-s%06llu", spec.n, p, static_cast<unsigned long long>(seed));
      out.push_back({id, oracles::random_gnp(spec.n, p, seed)});
    }
  return out;
}

}  // namespace twcert::harness
