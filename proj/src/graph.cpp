#include "grkit/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace grkit {

VertexId Graph::add_vertex(std::string name) {
  if (name.empty()) throw GraphError("empty vertex identifier");
  if (vertex_index_.contains(name)) throw GraphError("duplicate vertex '" + name + "'");
  const VertexId id = names_.size();
  vertex_index_.emplace(name, id);
  names_.push_back(std::move(name));
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(std::string name, VertexId source, VertexId range) {
  if (source >= names_.size() || range >= names_.size())
    throw GraphError("edge '" + name + "' references an unknown vertex");
  if (name.empty()) throw GraphError("empty edge identifier");
  if (edge_index_.contains(name)) throw GraphError("duplicate edge '" + name + "'");
  const EdgeId id = edges_.size();
  edge_index_.emplace(name, id);
  edges_.push_back(Edge{std::move(name), source, range});
  out_[source].push_back(id);
  in_[range].push_back(id);
  return id;
}

EdgeId Graph::add_edge(std::string name, std::string_view source, std::string_view range) {
  const auto s = find_vertex(source);
  const auto r = find_vertex(range);
  if (!s) throw GraphError("edge '" + name + "': undeclared vertex '" + std::string(source) + "'");
  if (!r) throw GraphError("edge '" + name + "': undeclared vertex '" + std::string(range) + "'");
  return add_edge(std::move(name), *s, *r);
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  const auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw GraphError("unknown vertex '" + std::string(name) + "'");
}

std::size_t Graph::loop_count(VertexId v) const {
  return static_cast<std::size_t>(std::count_if(out_.at(v).begin(), out_.at(v).end(),
                                                [&](EdgeId e) { return edges_[e].range == v; }));
}

bool Graph::operator==(const Graph& other) const {
  if (names_ != other.names_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.name != b.name || a.source != b.source || a.range != b.range) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LengthProfile::LengthProfile(IntVector counts) : counts_(std::move(counts)) {
  for (const auto& c : counts_)
    if (sgn(c) < 0) throw std::invalid_argument("negative multiplicity in length profile");
  trim();
}

LengthProfile LengthProfile::from_lengths(std::span<const std::size_t> lengths) {
  IntVector counts;
  for (std::size_t len : lengths) {
    if (counts.size() <= len) counts.resize(len + 1, 0);
    counts[len] += 1;
  }
  return LengthProfile(std::move(counts));
}

void LengthProfile::trim() {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

Integer LengthProfile::count(std::size_t length) const {
  return length < counts_.size() ? counts_[length] : Integer(0);
}

Integer LengthProfile::total() const {
  Integer sum = 0;
  for (const auto& c : counts_) sum += c;
  return sum;
}

std::size_t LengthProfile::max_length() const { return counts_.empty() ? 0 : counts_.size() - 1; }

std::vector<std::size_t> LengthProfile::expand(std::size_t limit) const {
  if (total() > limit) throw std::length_error("length multiset too large to expand");
  std::vector<std::size_t> out;
  for (std::size_t len = 0; len < counts_.size(); ++len)
    for (Integer k = 0; k < counts_[len]; ++k) out.push_back(len);
  return out;
}

std::string LengthProfile::to_string() const {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (std::size_t len : expand()) {
    if (!first) os << ',';
    os << len;
    first = false;
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  struct EdgeDecl {
    std::size_t line;
    std::string name, src, dst;
  };
  Graph g;
  std::vector<EdgeDecl> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "vertex") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'vertex <id>'");
      try {
        g.add_vertex(tokens[1]);
      } catch (const GraphError& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (tokens[0] == "edge") {
      if (tokens.size() != 4) throw ParseError(lineno, "expected 'edge <id> <src> <dst>'");
      edges.push_back({lineno, tokens[1], tokens[2], tokens[3]});
    } else {
      throw ParseError(lineno, "unknown declaration '" + tokens[0] + "'");
    }
  }
  for (auto& e : edges) {
    try {
      g.add_edge(e.name, e.src, e.dst);
    } catch (const GraphError& err) {
      throw ParseError(e.line, err.what());
    }
  }
  return g;
}

Graph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError(0, "JSON graph needs a \"vertices\" array");
  Graph g;
  try {
    for (const auto& v : doc["vertices"]) {
      if (!v.is_string()) throw ParseError(0, "vertex identifiers must be strings");
      g.add_vertex(v.get<std::string>());
    }
    if (doc.contains("edges")) {
      if (!doc["edges"].is_array()) throw ParseError(0, "\"edges\" must be an array");
      for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
            !e[2].is_string())
          throw ParseError(0, "each edge must be [\"id\",\"src\",\"dst\"]");
        g.add_edge(e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::string>());
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const GraphError& e) {
    throw ParseError(0, e.what());
  }
  return g;
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return path.extension() == ".json" ? parse_graph_json(buf.str()) : parse_graph(buf.str());
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  for (VertexId v = 0; v < g.vertex_count(); ++v) os << "vertex " << g.vertex_name(v) << '\n';
  for (const Edge& e : g.edges())
    os << "edge " << e.name << ' ' << g.vertex_name(e.source) << ' ' << g.vertex_name(e.range) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

VertexSet sinks(const Graph& g) {
  VertexSet out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) out.push_back(v);
  return out;
}

namespace {

// Kahn's algorithm restricted to `mask`; true when the induced subgraph is acyclic.
bool induced_acyclic(const Graph& g, const std::vector<bool>& mask) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indeg(n, 0);
  for (const Edge& e : g.edges())
    if (mask[e.source] && mask[e.range]) ++indeg[e.range];
  std::vector<VertexId> queue;
  std::size_t members = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (!mask[v]) continue;
    ++members;
    if (indeg[v] == 0) queue.push_back(v);
  }
  std::size_t seen = 0;
  while (!queue.empty()) {
    const VertexId v = queue.back();
    queue.pop_back();
    ++seen;
    for (EdgeId e : g.out_edges(v)) {
      const VertexId w = g.edge(e).range;
      if (mask[w] && --indeg[w] == 0) queue.push_back(w);
    }
  }
  return seen == members;
}

std::vector<bool> reaching(const Graph& g, VertexId v) {
  std::vector<bool> mark(g.vertex_count(), false);
  std::vector<VertexId> stack{v};
  mark[v] = true;
  while (!stack.empty()) {
    const VertexId w = stack.back();
    stack.pop_back();
    for (EdgeId e : g.in_edges(w)) {
      const VertexId u = g.edge(e).source;
      if (!mark[u]) {
        mark[u] = true;
        stack.push_back(u);
      }
    }
  }
  return mark;
}

void require_acyclic_ancestry(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw GraphError("vertex index out of range");
  if (!induced_acyclic(g, reaching(g, v)))
    throw CycleError("a cycle reaches vertex '" + g.vertex_name(v) + "'; its path set is infinite");
}

}  // namespace

bool is_acyclic(const Graph& g) { return induced_acyclic(g, std::vector<bool>(g.vertex_count(), true)); }

std::vector<bool> reachable_from(const Graph& g, VertexId v) {
  std::vector<bool> mark(g.vertex_count(), false);
  std::vector<VertexId> stack{v};
  mark[v] = true;
  while (!stack.empty()) {
    const VertexId w = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(w)) {
      const VertexId u = g.edge(e).range;
      if (!mark[u]) {
        mark[u] = true;
        stack.push_back(u);
      }
    }
  }
  return mark;
}

std::vector<Path> paths_into(const Graph& g, VertexId v) {
  require_acyclic_ancestry(g, v);
  std::vector<Path> out;
  // Grow paths backwards from v; `reversed` holds the edges last-to-first.
  std::vector<EdgeId> reversed;
  std::function<void(VertexId)> grow = [&](VertexId head) {
    Path p;
    p.source = head;
    p.range = v;
    p.edges.assign(reversed.rbegin(), reversed.rend());
    out.push_back(std::move(p));
    for (EdgeId e : g.in_edges(head)) {
      reversed.push_back(e);
      grow(g.edge(e).source);
      reversed.pop_back();
    }
  };
  grow(v);
  return out;
}

LengthProfile path_length_profile(const Graph& g, VertexId v) {
  require_acyclic_ancestry(g, v);
  // layer[w] = number of paths of the current length from w to v.
  IntVector layer(g.vertex_count(), 0);
  layer[v] = 1;
  IntVector counts;
  for (;;) {
    Integer total = 0;
    for (const auto& c : layer) total += c;
    if (total == 0) break;
    counts.push_back(total);
    IntVector next(g.vertex_count(), 0);
    for (const Edge& e : g.edges())
      if (layer[e.range] != 0) next[e.source] += layer[e.range];
    layer = std::move(next);
  }
  return LengthProfile(std::move(counts));
}

std::vector<Path> simple_cycles(const Graph& g) {
  std::vector<Path> cycles;
  const std::size_t n = g.vertex_count();
  std::vector<bool> on_path(n, false);
  std::vector<EdgeId> stack;
  std::function<void(VertexId, VertexId)> extend = [&](VertexId start, VertexId at) {
    for (EdgeId e : g.out_edges(at)) {
      const VertexId w = g.edge(e).range;
      if (w == start) {
        Path p;
        p.source = p.range = start;
        p.edges = stack;
        p.edges.push_back(e);
        cycles.push_back(std::move(p));
      } else if (w > start && !on_path[w]) {
        on_path[w] = true;
        stack.push_back(e);
        extend(start, w);
        stack.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    on_path[s] = true;
    extend(s, s);
    on_path[s] = false;
  }
  return cycles;
}

bool is_hereditary(const Graph& g, std::span<const VertexId> set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (VertexId v : set) in.at(v) = true;
  for (VertexId v : set)
    for (EdgeId e : g.out_edges(v))
      if (!in[g.edge(e).range]) return false;
  return true;
}

bool is_saturated(const Graph& g, std::span<const VertexId> set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (VertexId v : set) in.at(v) = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in[v] || g.is_sink(v)) continue;
    const auto outs = g.out_edges(v);
    if (std::all_of(outs.begin(), outs.end(), [&](EdgeId e) { return in[g.edge(e).range]; }))
      return false;
  }
  return true;
}

std::vector<VertexSet> hereditary_saturated_sets(const Graph& g, std::size_t vertex_cap) {
  const std::size_t n = g.vertex_count();
  if (n > vertex_cap || n >= 63)
    throw GraphError("hereditary/saturated enumeration is capped at " + std::to_string(vertex_cap) +
                     " vertices (graph has " + std::to_string(n) + ")");
  std::vector<std::uint64_t> succ(n, 0);
  for (const Edge& e : g.edges()) succ[e.source] |= std::uint64_t{1} << e.range;

  std::vector<std::uint64_t> found;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool ok = true;
    for (VertexId v = 0; v < n && ok; ++v) {
      const bool member = (mask >> v) & 1;
      const bool closed = (succ[v] & ~mask) == 0;
      if (member && !closed) ok = false;                     // hereditary
      if (!member && succ[v] != 0 && closed) ok = false;     // saturated
    }
    if (ok) found.push_back(mask);
  }
  std::sort(found.begin(), found.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<VertexSet> out;
  for (std::uint64_t mask : found) {
    VertexSet s;
    for (VertexId v = 0; v < n; ++v)
      if ((mask >> v) & 1) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_vertex_set(const Graph& g, std::span<const VertexId> set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += g.vertex_name(set[i]);
  }
  return out + "}";
}

}  // namespace grkit
