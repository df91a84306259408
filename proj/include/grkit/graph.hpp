#pragma once

// Finite directed multigraphs: vertices and edges keep their declaration
// order, which fixes the order of every matrix and vector derived from them.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "grkit/integer.hpp"

namespace grkit {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Sorted list of vertex indices.
using VertexSet = std::vector<VertexId>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a path enumeration meets a cycle, so the path set is infinite.
class CycleError : public GraphError {
 public:
  using GraphError::GraphError;
};

struct Edge {
  std::string name;
  VertexId source;
  VertexId range;
};

class Graph {
 public:
  Graph() = default;

  VertexId add_vertex(std::string name);
  EdgeId add_edge(std::string name, VertexId source, VertexId range);
  EdgeId add_edge(std::string name, std::string_view source, std::string_view range);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  VertexId vertex(std::string_view name) const;

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(v); }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_.at(v); }

  std::size_t out_degree(VertexId v) const { return out_.at(v).size(); }
  bool is_sink(VertexId v) const { return out_.at(v).empty(); }
  std::size_t loop_count(VertexId v) const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, EdgeId> edge_index_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

struct Path {
  VertexId source = 0;
  VertexId range = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool is_trivial() const noexcept { return edges.empty(); }
};

/// Multiset of path lengths stored as a histogram: counts[l] paths of length l.
class LengthProfile {
 public:
  LengthProfile() = default;
  explicit LengthProfile(IntVector counts);
  static LengthProfile from_lengths(std::span<const std::size_t> lengths);

  const IntVector& counts() const noexcept { return counts_; }
  Integer count(std::size_t length) const;
  Integer total() const;
  std::size_t max_length() const;
  bool empty() const noexcept { return counts_.empty(); }

  /// Sorted list of lengths; throws if the multiset has more than `limit` members.
  std::vector<std::size_t> expand(std::size_t limit = 1u << 20) const;
  std::string to_string() const;

  bool operator==(const LengthProfile&) const = default;

 private:
  void trim();
  IntVector counts_;
};

// Parsing. The text format has one `vertex <id>` or `edge <id> <src> <dst>`
// declaration per line and `#` comments; the JSON format is
// {"vertices":[...],"edges":[["id","src","dst"],...]}.
Graph parse_graph(std::string_view text);
Graph parse_graph_json(std::string_view text);
Graph load_graph(const std::filesystem::path& path);
std::string format_graph(const Graph& g);

VertexSet sinks(const Graph& g);
bool is_acyclic(const Graph& g);

/// Vertices w with v >= w, i.e. reachable from v by a path (v included).
std::vector<bool> reachable_from(const Graph& g, VertexId v);

/// All paths with range v; requires that no vertex reaching v lies on a cycle.
std::vector<Path> paths_into(const Graph& g, VertexId v);

/// Histogram of the lengths of paths_into(g, v) without materializing them.
LengthProfile path_length_profile(const Graph& g, VertexId v);

/// Simple cycles, each reported once, starting at its smallest vertex.
std::vector<Path> simple_cycles(const Graph& g);

bool is_hereditary(const Graph& g, std::span<const VertexId> set);
bool is_saturated(const Graph& g, std::span<const VertexId> set);

inline constexpr std::size_t kDefaultSubsetCap = 20;

/// Every hereditary saturated subset, by filtering all 2^|E^0| subsets.
std::vector<VertexSet> hereditary_saturated_sets(const Graph& g,
                                                 std::size_t vertex_cap = kDefaultSubsetCap);

std::string format_vertex_set(const Graph& g, std::span<const VertexId> set);

}  // namespace grkit
