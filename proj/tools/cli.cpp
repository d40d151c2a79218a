#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "twcert/harness.hpp"
#include "twcert/io.hpp"
#include "twcert/oracles.hpp"

namespace twcert::cli {

namespace {

constexpr const char* kFormatHelp =
    "Graph files: edge list (\"n m\" then \"u v\" per line, 0-indexed) or graph6 (*.g6).\n"
    ".td files number bags and vertices from 1; vertex i in a .td file is graph vertex i-1.";

constexpr const char* kUsage =
    "usage: twcert [--config F] [--format auto|edge-list|graph6] [--out P] [--max-oracle-n N]\n"
    "              decompose|verify td|verify minor|oracle treewidth|oracle minor|fuzz ...\n"
    "run with --help for details\n";

struct Shared {
  std::string config_path;
  std::string format = "auto";
  std::string out;
  int max_oracle_n = -1;
};

struct PatternArgs {
  std::string kind;
  std::string forest_path;
  int k = 0;
};

io::GraphFormat pick_format(const std::string& flag, const std::string& path) {
  if (flag == "edge-list") return io::GraphFormat::EdgeList;
  if (flag == "graph6") return io::GraphFormat::Graph6;
  return io::format_for_path(path);
}

Graph load_graph(const Shared& s, const std::string& path) {
  return io::parse_graph(io::read_file(path), pick_format(s.format, path));
}

PatternSpec load_pattern(const Shared& s, const PatternArgs& p) {
  if (p.kind == "apex-forest") {
    if (p.forest_path.empty()) throw InputError("--pattern apex-forest needs --forest <file>");
    return PatternSpec::apex_forest(load_graph(s, p.forest_path));
  }
  if (p.kind == "wheel") return PatternSpec::wheel(p.k);
  throw InputError("unknown pattern '" + p.kind + "'");
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad vertex '" + item + "' in list");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("bad probability '" + item + "'");
    }
  }
  return out;
}

io::Config load_config(const Shared& s) {
  std::string path = s.config_path;
  if (path.empty())
    if (const char* env = std::getenv("TWCERT_CONFIG")) path = env;
  return path.empty() ? io::Config{} : io::Config::load(path);
}

oracles::Limits limits_from(const io::Config& c) {
  oracles::Limits l;
  l.treewidth_vertices = c.get_int("treewidth_limit", l.treewidth_vertices);
  l.minor_host_vertices = c.get_int("minor_host_limit", l.minor_host_vertices);
  l.minor_pattern_vertices = c.get_int("minor_pattern_limit", l.minor_pattern_vertices);
  return l;
}

std::string default_out(const std::string& graph_path, const std::string& suffix) {
  auto p = std::filesystem::path(graph_path);
  return (p.parent_path() / p.stem()).string() + suffix;
}

int cmd_decompose(const Shared& s, const PatternArgs& pa, const std::string& graph_path,
                  const std::string& cycle_text, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(s, graph_path);
  const PatternSpec pattern = load_pattern(s, pa);
  std::optional<std::vector<Vertex>> cycle;
  if (!cycle_text.empty()) {
    if (pattern.kind != PatternKind::Wheel) throw InputError("--cycle only applies to --pattern wheel");
    cycle = parse_vertex_list(cycle_text);
  }
  const auto outcome = harness::decompose(g, pattern, cycle);
  const Verdict verdict = harness::verify_outcome(g, pattern, outcome);
  if (!verdict.ok()) {
    err << "internal verification failed: " << verdict.describe() << "\n";
    return kVerificationFailure;
  }
  if (const auto* d = std::get_if<RootedTreeDecomposition>(&outcome)) {
    const std::string path = s.out.empty() ? default_out(graph_path, ".td") : s.out;
    io::write_file(path, io::emit_decomposition(*d, g.label_bound()));
    out << "decomposition pattern=" << pattern.name() << " bags=" << d->size() << " width=" << width(*d)
        << " -> " << path << "\n";
  } else {
    const std::string path = s.out.empty() ? default_out(graph_path, ".minor.json") : s.out;
    io::write_file(path, io::emit_minor_model(std::get<MinorModel>(outcome)));
    out << "model pattern=" << pattern.name() << " -> " << path << "\n";
  }
  return kOk;
}

int cmd_verify_td(const Shared& s, const std::vector<std::string>& files, int max_bag, const std::string& root_text,
                  std::ostream& out, std::ostream& err) {
  if (files.size() != 2) throw InputError("verify td needs <graph> <decomposition.td>");
  const Graph g = load_graph(s, files[0]);
  const auto doc = io::parse_decomposition(io::read_file(files[1]));
  std::optional<VertexSet> root;
  if (!root_text.empty()) {
    const auto list = parse_vertex_list(root_text);
    root = VertexSet(list.begin(), list.end());
  }
  std::optional<std::size_t> limit;
  if (max_bag > 0) limit = static_cast<std::size_t>(max_bag);
  const Verdict v = verify_tree_decomposition(g, doc.decomposition, root, limit);
  if (!v.ok()) {
    err << "invalid: " << v.describe() << "\n";
    return kVerificationFailure;
  }
  out << "valid decomposition bags=" << doc.decomposition.size() << " width=" << width(doc.decomposition) << "\n";
  return kOk;
}

int cmd_verify_minor(const Shared& s, const std::vector<std::string>& files, const PatternArgs& pa,
                     std::ostream& out, std::ostream& err) {
  if (files.size() != 2) throw InputError("verify minor needs <graph> <model.json>");
  const Graph g = load_graph(s, files[0]);
  const MinorModel m = io::parse_minor_model(io::read_file(files[1]));
  if (!pa.kind.empty()) {
    const auto pattern = load_pattern(s, pa);
    if (!(m.pattern == pattern.resolved)) {
      err << "invalid: model pattern is not " << pattern.name() << "\n";
      return kVerificationFailure;
    }
  }
  const Verdict v = verify_minor_model(g, m);
  if (!v.ok()) {
    err << "invalid: " << v.describe() << "\n";
    return kVerificationFailure;
  }
  out << "valid minor model pattern_vertices=" << m.branch.size() << "\n";
  return kOk;
}

int cmd_oracle_treewidth(const Shared& s, const io::Config& c, const std::vector<std::string>& files,
                         std::ostream& out) {
  if (files.size() != 1) throw InputError("oracle treewidth needs <graph>");
  const Graph g = load_graph(s, files[0]);
  const auto r = oracles::exact_treewidth(g, limits_from(c).treewidth_vertices);
  out << "treewidth " << r.width;
  if (!s.out.empty()) {
    io::write_file(s.out, io::emit_decomposition(r.witness, g.label_bound()));
    out << " -> " << s.out;
  }
  out << "\n";
  return kOk;
}

int cmd_oracle_minor(const Shared& s, const io::Config& c, const std::vector<std::string>& files,
                     std::ostream& out) {
  if (files.size() != 2) throw InputError("oracle minor needs <graph> <pattern-graph>");
  const Graph g = load_graph(s, files[0]);
  const Graph h = load_graph(s, files[1]);
  const auto m = oracles::exact_minor_test(g, h, limits_from(c));
  out << (m ? "present" : "absent");
  if (m && !s.out.empty()) {
    io::write_file(s.out, io::emit_minor_model(*m));
    out << " -> " << s.out;
  }
  out << "\n";
  return kOk;
}

struct FuzzArgs {
  std::string mode = "exhaustive";
  int n = -1;
  std::string p;
  int seeds = -1;
  long long seed = -1;
  int jobs = -1;
  bool timing = false;
  std::string report;
};

int cmd_fuzz(const Shared& s, const io::Config& c, const PatternArgs& pa, const FuzzArgs& fa, std::ostream& out) {
  harness::FuzzSpec spec;
  if (fa.mode == "exhaustive")
    spec.mode = harness::FuzzSpec::Mode::Exhaustive;
  else if (fa.mode == "gnp")
    spec.mode = harness::FuzzSpec::Mode::Gnp;
  else
    throw InputError("unknown fuzz mode '" + fa.mode + "'");
  spec.n = fa.n >= 0 ? fa.n : c.get_int("fuzz.n", spec.n);
  spec.seeds = fa.seeds >= 0 ? fa.seeds : c.get_int("fuzz.seeds", spec.seeds);
  spec.base_seed = fa.seed >= 0 ? static_cast<std::uint64_t>(fa.seed) : c.get_int("fuzz.seed", 1);
  const std::string plist = !fa.p.empty() ? fa.p : c.get("fuzz.p").value_or("0.3");
  spec.probabilities = parse_double_list(plist);

  harness::RunOptions options;
  options.pattern = load_pattern(s, pa);
  options.limits = limits_from(c);
  options.max_oracle_n = s.max_oracle_n >= 0 ? s.max_oracle_n : c.get_int("max_oracle_n", options.max_oracle_n);
  options.timing = fa.timing;
  if (!s.out.empty()) options.out_dir = s.out;
  const int jobs = fa.jobs > 0 ? fa.jobs : c.get_int("jobs", 1);

  const auto reports = harness::run_batch(harness::fuzz_instances(spec), options, jobs);
  std::ostringstream lines;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    lines << r.to_json() << "\n";
    if (!r.ok()) ++failed;
  }
  if (!fa.report.empty())
    io::write_file(fa.report, lines.str());
  else
    out << lines.str();
  out << "fuzz instances=" << reports.size() << " failed=" << failed << "\n";
  return failed == 0 ? kOk : kVerificationFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certifying tree-decompositions and minor models for apex-forests and wheels"};
  app.footer(kFormatHelp);
  app.require_subcommand(1);
  app.fallthrough();
  Shared shared;
  app.add_option("--config", shared.config_path, "key=value config file (default: $TWCERT_CONFIG)");
  app.add_option("--format", shared.format, "Graph format")->check(CLI::IsMember({"auto", "edge-list", "graph6"}));
  app.add_option("--out", shared.out, "Certificate file (fuzz: directory)");
  app.add_option("--max-oracle-n", shared.max_oracle_n, "Largest graph cross-checked against the oracles");

  PatternArgs pattern;
  auto add_pattern = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--pattern", pattern.kind, "apex-forest or wheel")
                    ->check(CLI::IsMember({"apex-forest", "wheel"}));
    if (required) opt->required();
    sub->add_option("--forest", pattern.forest_path, "Tree F as a graph file (apex-forest)");
    sub->add_option("-k", pattern.k, "Wheel order (wheel)");
  };

  auto* decompose = app.add_subcommand("decompose", "Decomposition or minor model for a pattern");
  add_pattern(decompose, true);
  std::string cycle_text, graph_path;
  decompose->add_option("--cycle", cycle_text, "Root edge or cycle as v,v,... (wheel)");
  decompose->add_option("graph", graph_path, "Graph file")->required();

  auto* verify = app.add_subcommand("verify", "Check a certificate");
  verify->require_subcommand(1);
  verify->fallthrough();
  std::vector<std::string> files;
  int max_bag = 0;
  std::string root_text;
  auto* verify_td = verify->add_subcommand("td", "Check a .td decomposition against a graph");
  verify_td->add_option("--max-bag", max_bag, "Largest allowed bag");
  verify_td->add_option("--root", root_text, "Required root bag as v,v,...");
  verify_td->add_option("files", files, "<graph> <decomposition.td>")->required();
  auto* verify_minor = verify->add_subcommand("minor", "Check a minor model against a graph");
  add_pattern(verify_minor, false);
  verify_minor->add_option("files", files, "<graph> <model.json>")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive reference answers");
  oracle->require_subcommand(1);
  oracle->fallthrough();
  auto* oracle_tw = oracle->add_subcommand("treewidth", "Exact tree-width");
  oracle_tw->add_option("files", files, "<graph>")->required();
  auto* oracle_minor = oracle->add_subcommand("minor", "Exact minor containment");
  oracle_minor->add_option("files", files, "<graph> <pattern-graph>")->required();

  auto* fuzz = app.add_subcommand("fuzz", "Decompose and cross-check a batch of graphs");
  FuzzArgs fa;
  add_pattern(fuzz, true);
  fuzz->add_option("--mode", fa.mode, "exhaustive or gnp")->check(CLI::IsMember({"exhaustive", "gnp"}));
  fuzz->add_option("--n", fa.n, "Vertex count");
  fuzz->add_option("--p", fa.p, "Edge probabilities, comma separated (gnp)");
  fuzz->add_option("--seeds", fa.seeds, "Seeds per probability (gnp)");
  fuzz->add_option("--seed", fa.seed, "First seed (gnp)");
  fuzz->add_option("--jobs", fa.jobs, "Worker threads");
  fuzz->add_flag("--timing", fa.timing, "Include wall-clock times in reports");
  fuzz->add_option("--report", fa.report, "Write reports here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << kUsage;
    return kInputError;
  }

  try {
    const auto config = load_config(shared);
    if (*decompose) return cmd_decompose(shared, pattern, graph_path, cycle_text, out, err);
    if (*verify_td) return cmd_verify_td(shared, files, max_bag, root_text, out, err);
    if (*verify_minor) return cmd_verify_minor(shared, files, pattern, out, err);
    if (*oracle_tw) return cmd_oracle_treewidth(shared, config, files, out);
    if (*oracle_minor) return cmd_oracle_minor(shared, config, files, out);
    if (*fuzz) return cmd_fuzz(shared, config, pattern, fa, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace twcert::cli
