#include "twcert/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace twcert::io {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t at = 0;
  while (at < line.size()) {
    while (at < line.size() && (line[at] == ' ' || line[at] == '\t' || line[at] == '\r')) ++at;
    std::size_t end = at;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > at) out.push_back(line.substr(at, end - at));
    at = end;
  }
  return out;
}

// Non-blank lines with their 1-based line numbers.
std::vector<std::pair<int, std::string_view>> numbered_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 0;
  std::size_t at = 0;
  while (at <= text.size()) {
    auto end = text.find('\n', at);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const auto line = text.substr(at, end - at);
    if (!trim(line).empty()) out.emplace_back(number, line);
    at = end + 1;
  }
  return out;
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

long long to_integer(std::string_view word, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size())
    fail_line(line, "expected an integer, got '" + std::string(word) + "'");
  return value;
}

void require_contiguous(const Graph& g) {
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    if (g.vertices()[i] != static_cast<Vertex>(i)) throw InputError("graph vertices must be 0..n-1");
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  const auto lines = numbered_lines(text);
  if (lines.empty()) throw ParseError("line 1: missing \"n m\" header");
  const auto header = split_words(lines[0].second);
  if (header.size() != 2) fail_line(lines[0].first, "header must be \"n m\"");
  const long long n = to_integer(header[0], lines[0].first);
  const long long m = to_integer(header[1], lines[0].first);
  if (n < 0 || m < 0) fail_line(lines[0].first, "negative count in header");
  if (n > 1'000'000) fail_line(lines[0].first, "vertex count too large");
  if (static_cast<long long>(lines.size()) - 1 != m)
    fail_line(lines.back().first, "header announces " + std::to_string(m) + " edges, found " +
                                      std::to_string(lines.size() - 1));
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto words = split_words(line);
    if (words.size() != 2) fail_line(number, "edge line must be \"u v\"");
    const long long u = to_integer(words[0], number);
    const long long v = to_integer(words[1], number);
    if (u < 0 || v < 0 || u >= n || v >= n) fail_line(number, "vertex out of range");
    if (u == v) fail_line(number, "loop at vertex " + std::to_string(u));
    if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      fail_line(number, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

std::string emit_edge_list(const Graph& g) {
  require_contiguous(g);
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph6(std::string_view text) {
  text = trim(text);
  std::size_t at = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) at = header.size();
  auto next = [&]() -> int {
    if (at >= text.size()) throw ParseError("byte " + std::to_string(at) + ": unexpected end of graph6 data");
    const int c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw ParseError("byte " + std::to_string(at) + ": invalid graph6 character");
    ++at;
    return c - 63;
  };
  long long n = next();
  if (n == 63) {
    n = 0;
    int first = next();
    if (first == 63) {
      for (int i = 0; i < 6; ++i) n = n << 6 | next();
    } else {
      n = first;
      for (int i = 0; i < 2; ++i) n = n << 6 | next();
    }
  }
  if (n > 100'000) throw ParseError("byte 0: graph6 vertex count too large");
  Graph g(static_cast<int>(n));
  const long long bits = n * (n - 1) / 2;
  int word = 0, left = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (left == 0) {
        word = next();
        left = 6;
      }
      --left;
      if (word >> left & 1) g.add_edge(i, j);
    }
  if (bits % 6 != 0 && (word & ((1 << left) - 1)) != 0)
    throw ParseError("byte " + std::to_string(at - 1) + ": nonzero graph6 padding");
  if (at != text.size()) throw ParseError("byte " + std::to_string(at) + ": trailing graph6 data");
  return g;
}

std::string emit_graph6(const Graph& g) {
  require_contiguous(g);
  const long long n = static_cast<long long>(g.num_vertices());
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>((n >> s & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>((n >> s & 63) + 63));
  }
  int word = 0, filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      word = word << 1 | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(word + 63));
        word = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((word << (6 - filled)) + 63));
  return out;
}

Graph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::Graph6 ? parse_graph6(text) : parse_edge_list(text);
}

GraphFormat format_for_path(std::string_view path) {
  return path.size() >= 3 && path.substr(path.size() - 3) == ".g6" ? GraphFormat::Graph6 : GraphFormat::EdgeList;
}

std::string emit_decomposition(const RootedTreeDecomposition& d, int vertex_count) {
  std::ostringstream out;
  out << "s td " << d.size() << ' ' << d.max_bag_size() << ' ' << vertex_count << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : d.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (std::size_t i = 1; i < d.size(); ++i) out << d.parent[i] + 1 << ' ' << i + 1 << '\n';
  return out.str();
}

TdDocument parse_decomposition(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  for (auto entry : numbered_lines(text))
    if (trim(entry.second).front() != 'c') lines.push_back(entry);
  if (lines.empty()) throw ParseError("line 1: missing \"s td\" line");
  const auto head = split_words(lines[0].second);
  if (head.size() != 5 || head[0] != "s" || head[1] != "td")
    fail_line(lines[0].first, "expected \"s td <bags> <max bag> <n>\"");
  const long long count = to_integer(head[2], lines[0].first);
  const long long max_bag = to_integer(head[3], lines[0].first);
  const long long n = to_integer(head[4], lines[0].first);
  if (count < 1 || max_bag < 0 || n < 0) fail_line(lines[0].first, "invalid counts");
  if (static_cast<long long>(lines.size()) != 1 + count + (count - 1))
    fail_line(lines.back().first, "expected " + std::to_string(count) + " bag lines and " +
                                      std::to_string(count - 1) + " edge lines");

  std::vector<VertexSet> bags(count);
  std::vector<char> seen(count, 0);
  for (long long i = 1; i <= count; ++i) {
    const auto [number, line] = lines[i];
    const auto words = split_words(line);
    if (words.size() < 2 || words[0] != "b") fail_line(number, "expected \"b <id> <vertices...>\"");
    const long long id = to_integer(words[1], number);
    if (id < 1 || id > count) fail_line(number, "bag id out of range");
    if (seen[id - 1]) fail_line(number, "bag " + std::to_string(id) + " defined twice");
    seen[id - 1] = 1;
    for (std::size_t w = 2; w < words.size(); ++w) {
      const long long v = to_integer(words[w], number);
      if (v < 1 || v > n) fail_line(number, "vertex out of range");
      if (!bags[id - 1].insert(static_cast<Vertex>(v - 1)).second) fail_line(number, "repeated vertex in bag");
    }
  }
  std::size_t largest = 0;
  for (const auto& b : bags) largest = std::max(largest, b.size());
  if (static_cast<long long>(largest) != max_bag) fail_line(lines[0].first, "declared max bag size differs");

  std::vector<std::pair<int, int>> edges;
  std::vector<int> parent(count, -1);
  bool ordered = true;
  for (std::size_t i = count + 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto words = split_words(line);
    if (words.size() != 2) fail_line(number, "expected a tree edge \"<a> <b>\"");
    const long long a = to_integer(words[0], number), b = to_integer(words[1], number);
    if (a < 1 || b < 1 || a > count || b > count || a == b) fail_line(number, "tree edge endpoint out of range");
    edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    if (a < b && parent[b - 1] == -1)
      parent[b - 1] = static_cast<int>(a - 1);
    else
      ordered = false;
  }

  TdDocument doc;
  doc.vertex_count = static_cast<int>(n);
  if (ordered) {
    doc.decomposition.bags = std::move(bags);
    doc.decomposition.parent = std::move(parent);
  } else {
    try {
      doc.decomposition = RootedTreeDecomposition::from_tree(std::move(bags), edges, 0);
    } catch (const InputError& e) {
      throw ParseError(std::string("tree edges do not form a tree: ") + e.what());
    }
  }
  return doc;
}

std::string emit_minor_model(const MinorModel& m) {
  Json edges = Json::array();
  for (auto [u, v] : m.pattern.edges()) edges.push_back({u, v});
  Json branch = Json::object();
  for (std::size_t i = 0; i < m.branch.size(); ++i)
    branch[std::to_string(i)] = std::vector<Vertex>(m.branch[i].begin(), m.branch[i].end());
  Json doc = {{"pattern", {{"n", m.pattern.num_vertices()}, {"edges", edges}}}, {"branch", branch}};
  return doc.dump() + "\n";
}

MinorModel parse_minor_model(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("byte ") + std::to_string(e.byte) + ": invalid JSON");
  }
  try {
    MinorModel m;
    const int h = doc.at("pattern").at("n").get<int>();
    if (h < 0) throw ParseError("pattern size is negative");
    m.pattern = Graph(h);
    for (const auto& e : doc.at("pattern").at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("pattern edge must be a pair");
      const int u = e[0].get<int>(), v = e[1].get<int>();
      if (u < 0 || v < 0 || u >= h || v >= h || u == v) throw ParseError("pattern edge out of range");
      m.pattern.add_edge(u, v);
    }
    const auto& branch = doc.at("branch");
    if (!branch.is_object() || static_cast<int>(branch.size()) != h)
      throw ParseError("branch map must list every pattern vertex");
    for (int i = 0; i < h; ++i) {
      const auto key = std::to_string(i);
      if (!branch.contains(key)) throw ParseError("branch map misses pattern vertex " + key);
      VertexSet set;
      for (const auto& v : branch.at(key)) {
        const int x = v.get<int>();
        if (x < 0) throw ParseError("negative host vertex in branch set " + key);
        set.insert(x);
      }
      if (set.empty()) throw ParseError("empty branch set for pattern vertex " + key);
      m.branch.push_back(std::move(set));
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed minor model: ") + e.what());
  }
}

Config Config::parse(std::string_view text) {
  Config c;
  for (auto [number, raw] : numbered_lines(text)) {
    auto line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_line(number, "expected key=value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) fail_line(number, "empty key");
    c.values_[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) { return parse(read_file(path)); }

std::optional<std::string> Config::get(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  return std::nullopt;
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  int out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size())
    throw InputError("config key '" + key + "' is not an integer: " + *v);
  return out;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double out = std::stod(*v, &used);
    if (used == v->size()) return out;
  } catch (const std::exception&) {
  }
  throw InputError("config key '" + key + "' is not a number: " + *v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace twcert::io
